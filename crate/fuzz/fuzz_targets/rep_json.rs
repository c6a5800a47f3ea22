#![no_main]
use dynweyl::replib::{rep_from_json, rep_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(rep) = rep_from_json(s) {
            let back = rep_from_json(&rep_to_json(&rep)).unwrap();
            assert_eq!(back.e, rep.e);
            assert_eq!(back.f, rep.f);
        }
    }
});
