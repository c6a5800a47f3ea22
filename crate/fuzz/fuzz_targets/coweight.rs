#![no_main]
use dynweyl::cartan::{parse_coweight, parse_coweight_list, CartanDatum};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&t, rest)) = data.split_first() else { return };
    let ty = ["A1", "A2", "B2", "G2", "A3", "D4"][t as usize % 6];
    let datum = CartanDatum::parse(ty).unwrap();
    if let Ok(s) = std::str::from_utf8(rest) {
        if let Ok(mu) = parse_coweight(&datum, s) {
            assert_eq!(mu.len(), datum.rank);
        }
        let _ = parse_coweight_list(&datum, s);
    }
});
