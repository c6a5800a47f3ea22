use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use dynweyl::affine_weyl::{inversion_multiset, reduced_word_translation, word_string};
use dynweyl::cartan::{fmt_coweight, parse_coweight, parse_coweight_list, CartanDatum};
use dynweyl::casimir::{curvature_check, gauge_equivalence_check, CasimirOptions};
use dynweyl::degeneration::{check_phi_relations, evaluation_images, phi_loop_generators, LoopGenImages, PhiOptions};
use dynweyl::dynamical::{
    check_braid, check_degenerate_s, check_inversion_multisets, check_lemma16, check_main_theorem_with,
    check_qweyl_expansion, check_scalar_lemma, Mode, SampleOpts,
};
use dynweyl::replib::{builtin_rep, check_yangian_relations, derive_evaluation_rep, load_rep, WeightedRep};
use dynweyl::report::{to_json, CheckReport};
use dynweyl::scalars::rational::fmt_q;
use dynweyl::scalars::{parse_q, Q};
use dynweyl::{Error, Result};

#[derive(Parser)]
#[command(name = "dynweyl", version, about = "Exact checks for dynamical Weyl group operators mod ℏ²")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one checker and emit a JSON report; exit 0 iff every item passes.
    Verify {
        check: Check,
        #[command(flatten)]
        cfg: RunConfig,
    },
    /// Reduced words of t^μ.
    Words {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Inversion multiset of t^μ for dominant μ.
    Inversions {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Cartan matrix, symmetrizers and positive roots.
    Datum {
        #[command(flatten)]
        ty: TypeArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Lemma15,
    Braid,
    QweylExpansion,
    PhiRelations,
    Lemma16,
    #[value(name = "degenerateS")]
    DegenerateS,
    MainTheorem,
    Flatness,
    Gauge,
    ScalarLemma,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Sampled,
    Symbolic,
}

#[derive(Args)]
struct TypeArgs {
    /// Cartan type, e.g. A2, or a bare letter together with --rank.
    #[arg(long = "type")]
    ty: String,
    #[arg(long)]
    rank: Option<usize>,
}

impl TypeArgs {
    fn datum(&self) -> Result<CartanDatum> {
        match self.rank {
            Some(n) if self.ty.len() == 1 => CartanDatum::parse(&format!("{}{n}", self.ty)),
            Some(n) => {
                let d = CartanDatum::parse(&self.ty)?;
                if d.rank != n {
                    return Err(Error::Parse(format!("--type {} conflicts with --rank {n}", self.ty)));
                }
                Ok(d)
            }
            None => CartanDatum::parse(&self.ty),
        }
    }
}

#[derive(Args)]
struct RunConfig {
    #[command(flatten)]
    ty: TypeArgs,
    /// Comma-separated coweights, e.g. `a1v,2a1v,-a1v` or `thv`.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Second direction for flatness.
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    /// Comma-separated builtin representations.
    #[arg(long)]
    rep: Option<String>,
    /// Representation JSON files (repeatable).
    #[arg(long = "rep-file")]
    rep_file: Vec<PathBuf>,
    /// o(1); the sign map alternates along the Dynkin diagram.
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    sign: i64,
    /// Truncation degree T (identities mod ℏ^T).
    #[arg(long, default_value_t = 2)]
    trunc: usize,
    /// Comma-separated evaluation points.
    #[arg(long = "eval", default_value = "1", allow_hyphen_values = true)]
    eval_points: String,
    #[arg(long, value_enum, default_value = "sampled")]
    mode: ModeArg,
    #[arg(long, default_value_t = 3)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    kappa: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    b: String,
    #[arg(long = "max-length", default_value_t = 12)]
    max_length: usize,
    /// Run the deliberately broken variant of the check.
    #[arg(long)]
    mutate: bool,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Run {
    datum: CartanDatum,
    cfg: RunConfig,
    eval_points: Vec<Q>,
    opts: SampleOpts,
}

impl Run {
    fn new(cfg: RunConfig) -> Result<Self> {
        let datum = cfg.ty.datum()?;
        if cfg.samples < 3 {
            return Err(Error::Parse(format!("--samples must be at least 3, got {}", cfg.samples)));
        }
        if cfg.sign != 1 && cfg.sign != -1 {
            return Err(Error::Parse(format!("--sign must be 1 or -1, got {}", cfg.sign)));
        }
        let eval_points = cfg.eval_points.split(',').map(parse_q).collect::<Result<Vec<_>>>()?;
        let mode = match cfg.mode {
            ModeArg::Sampled => Mode::Sampled,
            ModeArg::Symbolic => Mode::Symbolic,
        };
        let opts = SampleOpts { mode, samples: cfg.samples, seed: cfg.seed };
        Ok(Run { datum, cfg, eval_points, opts })
    }

    fn mus(&self, default: &str) -> Result<Vec<Vec<Q>>> {
        parse_coweight_list(&self.datum, self.cfg.mu.as_deref().unwrap_or(default))
    }

    /// Builtins and files; a file that fails to load becomes a failing report.
    fn reps(&self, out: &mut Vec<CheckReport>) -> Result<Vec<WeightedRep>> {
        let mut reps = Vec::new();
        let default = if self.cfg.rep_file.is_empty() {
            Some(if self.datum.rank == 1 { "V1" } else { "vector" })
        } else {
            None
        };
        if let Some(names) = self.cfg.rep.as_deref().or(default) {
            for name in names.split(',') {
                reps.push(builtin_rep(&self.datum, name)?);
            }
        }
        for path in &self.cfg.rep_file {
            match load_rep(path) {
                Ok(r) if r.datum == self.datum => reps.push(r),
                Ok(r) => out.push(CheckReport::from_error(
                    format!("load {}", path.display()),
                    &Error::Parse(format!("representation is for {}, not {}", r.datum.name(), self.datum.name())),
                )),
                Err(e) => out.push(CheckReport::from_error(format!("load {}", path.display()), &e)),
            }
        }
        Ok(reps)
    }

    fn need_t2(&self) -> Result<()> {
        if self.cfg.trunc != 2 {
            return Err(Error::Unsupported(format!("this check runs mod ℏ², not mod ℏ^{}", self.cfg.trunc)));
        }
        Ok(())
    }

    fn images(&self, rep: &WeightedRep, a: &Q) -> Result<LoopGenImages<2>> {
        evaluation_images::<2>(rep, a, self.cfg.sign)
    }

    fn label(&self, rep: &WeightedRep, a: &Q, r: CheckReport) -> CheckReport {
        let mut r = r;
        r.name = format!("{} {} a={}: {}", self.datum.name(), rep.name, fmt_q(a), r.name);
        r
    }

    /// Runs `f` for every (rep, evaluation point), catching construction errors.
    fn per_rep(
        &self,
        out: &mut Vec<CheckReport>,
        what: &str,
        mut f: impl FnMut(&WeightedRep, &Q) -> Result<Vec<CheckReport>>,
    ) -> Result<()> {
        for rep in self.reps(out)? {
            for a in &self.eval_points {
                match f(&rep, a) {
                    Ok(rs) => out.extend(rs.into_iter().map(|r| self.label(&rep, a, r))),
                    Err(e) => out.push(self.label(&rep, a, CheckReport::from_error(what, &e))),
                }
            }
        }
        Ok(())
    }

    fn run(&self, check: Check) -> Result<Vec<CheckReport>> {
        let mut out = Vec::new();
        let mutate = self.cfg.mutate;
        match check {
            Check::Lemma15 => out.push(check_inversion_multisets(&self.datum, self.cfg.max_length)),
            Check::ScalarLemma => out.push(check_scalar_lemma(self.cfg.seed, self.cfg.samples)),
            Check::PhiRelations => {
                let t = self.cfg.trunc;
                if !(1..=2).contains(&t) {
                    return Err(Error::Unsupported(format!("degeneration images mod ℏ^{t}")));
                }
                let opts = PhiOptions { naive_t1: mutate };
                self.per_rep(&mut out, "phi-relations", |rep, a| {
                    let tr = derive_evaluation_rep(rep, a)?;
                    Ok(if t == 1 {
                        vec![check_yangian_relations::<1>(&tr), check_phi_relations(&phi_loop_generators::<1>(&tr, 2, opts)?)]
                    } else {
                        vec![check_yangian_relations::<2>(&tr), check_phi_relations(&phi_loop_generators::<2>(&tr, 2, opts)?)]
                    })
                })?;
            }
            Check::QweylExpansion => {
                self.need_t2()?;
                self.per_rep(&mut out, "qweyl-expansion", |rep, a| Ok(vec![check_qweyl_expansion(&self.images(rep, a)?, mutate)]))?;
            }
            Check::Braid => {
                self.need_t2()?;
                self.per_rep(&mut out, "braid", |rep, a| Ok(vec![check_braid(&self.images(rep, a)?, &self.opts)]))?;
            }
            Check::Lemma16 | Check::DegenerateS | Check::MainTheorem => {
                self.need_t2()?;
                let mus = self.mus("thv")?;
                let name = match check {
                    Check::Lemma16 => "lemma16",
                    Check::DegenerateS => "degenerateS",
                    _ => "main-theorem",
                };
                self.per_rep(&mut out, name, |rep, a| {
                    let im = self.images(rep, a)?;
                    Ok(mus
                        .iter()
                        .map(|mu| match check {
                            Check::Lemma16 => check_lemma16(&im, mu, &self.opts),
                            Check::DegenerateS => check_degenerate_s(&im, mu),
                            _ => check_main_theorem_with(&im, mu, &self.opts, mutate),
                        })
                        .collect())
                })?;
            }
            Check::Flatness => {
                let b = parse_q(&self.cfg.b)?;
                let mu = parse_coweight(&self.datum, self.cfg.mu.as_deref().unwrap_or("w1v"))?;
                let default_nu = if self.datum.rank >= 2 { "w2v" } else { "w1v" };
                let nu = parse_coweight(&self.datum, self.cfg.nu.as_deref().unwrap_or(default_nu))?;
                let opts = CasimirOptions { drop_t2: mutate };
                self.per_rep(&mut out, "flatness", |rep, a| {
                    Ok(vec![curvature_check(&derive_evaluation_rep(rep, a)?, &mu, &nu, &b, opts)])
                })?;
            }
            Check::Gauge => {
                let kappa = parse_q(&self.cfg.kappa)?;
                let mus = self.mus("w1v")?;
                self.per_rep(&mut out, "gauge", |rep, a| {
                    let tr = derive_evaluation_rep(rep, a)?;
                    Ok(mus.iter().map(|mu| gauge_equivalence_check(&tr, mu, &kappa, !mutate)).collect())
                })?;
            }
        }
        for r in &mut out {
            r.seed.get_or_insert(self.cfg.seed);
        }
        Ok(out)
    }
}

fn emit(reports: &[CheckReport], out: Option<&PathBuf>) -> Result<()> {
    let s = to_json(reports);
    match out {
        Some(p) => std::fs::write(p, s + "\n").map_err(|e| Error::Io(e.to_string())),
        None => {
            stdout_line(&s);
            Ok(())
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn stdout_line(s: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn print_json(v: serde_json::Value) {
    stdout_line(&serde_json::to_string_pretty(&v).expect("json"));
}

fn main_inner(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Verify { check, cfg } => {
            let run = Run::new(cfg)?;
            let reports = run.run(check)?;
            for r in &reports {
                eprintln!("{}", r.summary());
            }
            emit(&reports, run.cfg.out.as_ref())?;
            Ok(reports.iter().all(|r| r.pass))
        }
        Cmd::Words { ty, mu } => {
            let d = ty.datum()?;
            let mut rows = Vec::new();
            for m in parse_coweight_list(&d, &mu)? {
                let w = reduced_word_translation(&d, &m)?;
                rows.push(json!({"mu": fmt_coweight(&m), "word": word_string(&w), "length": w.len()}));
            }
            print_json(json!(rows));
            Ok(true)
        }
        Cmd::Inversions { ty, mu } => {
            let d = ty.datum()?;
            let mut rows = Vec::new();
            for m in parse_coweight_list(&d, &mu)? {
                let inv = inversion_multiset(&d, &m)?;
                let items: Vec<_> = inv.iter().map(|(r, k)| json!({"root": r, "multiplicity": k})).collect();
                rows.push(json!({"mu": fmt_coweight(&m), "inversions": items}));
            }
            print_json(json!(rows));
            Ok(true)
        }
        Cmd::Datum { ty } => {
            let d = ty.datum()?;
            print_json(json!({
                "type": d.name(),
                "cartan": d.a,
                "d": d.d,
                "theta": d.theta,
                "theta_coroot": d.theta_coroot,
                "d0": d.d0,
                "positive_roots": d.positive_roots(),
            }));
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
