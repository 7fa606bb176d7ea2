//! The `novfiber` command surface. JSON goes to `stdout`, a human summary
//! to `stderr`; exit codes are 0 (computed), 2 (some verdict inconclusive)
//! and 1 (bad input).

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::growth::{growth_estimate, luck_approx_check};
use crate::homology::{betti_over_fractions, bns_cone_sample, fibering_check, novikov_homology, primitive_rays, LaurentComplex};
use crate::io::{read_chain, read_complex, read_poly, read_tower, RingSpec};
use crate::orders::Character;
use crate::presentation::Presentation;
use crate::scalar::FieldSpec;
use crate::selftest;
use crate::skewfield::{chain_inverse, invariant_unit_certify};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "novfiber", version, about = "Novikov homology, fibering verdicts and homology growth over Laurent rings")]
pub struct Cli {
    /// Coefficient field: `Q` or `Fp:<p>`. Complex files are reduced into it;
    /// presentations are read over it (default `Q`).
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Betti numbers over the fraction field.
    Betti { complex: String },
    /// Novikov homology along one character.
    Novikov {
        complex: String,
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        psi: IntVector,
        #[arg(long, default_value_t = 1)]
        deg: usize,
        #[arg(long = "T", default_value_t = 8)]
        window: i64,
    },
    /// Novikov homology along ±ψ; accepts a complex or a presentation.
    FiberCheck {
        input: String,
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        psi: IntVector,
        #[arg(long, default_value_t = 1)]
        deg: usize,
        #[arg(long = "T", default_value_t = 8)]
        window: i64,
    },
    /// One-sided verdicts on the primitive rays of a box.
    BnsSample {
        input: String,
        #[arg(long, default_value_t = 3)]
        max_coeff: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Keep a seeded random subset of this many rays.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 1)]
        deg: usize,
        #[arg(long = "T", default_value_t = 8)]
        window: i64,
    },
    /// Unit certificate and windowed inverse over a lattice chain.
    UnitCheck {
        poly: String,
        #[arg(long)]
        chain: String,
        #[arg(long = "T", default_value_t = 10)]
        window: i64,
    },
    /// Normalized Betti numbers and envelopes along a tower.
    Growth {
        complex: String,
        #[arg(long)]
        tower: String,
        /// Also write `m,degree,b,b/m` rows to this file.
        #[arg(long)]
        csv: Option<String>,
        /// Tolerance for the limit comparison, e.g. `1/16`.
        #[arg(long)]
        tolerance: Option<String>,
    },
    /// Runs the acceptance suite.
    Selftest {
        #[arg(long, default_value_t = 20240501)]
        seed: u64,
    },
}

/// A comma-separated integer vector such as `1,-2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntVector(pub Vec<i64>);

fn parse_vector(s: &str) -> Result<IntVector, String> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| format!("`{x}` is not an integer")))
        .collect::<Result<Vec<i64>, String>>()
        .map(IntVector)
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

struct Output {
    json: serde_json::Value,
    summary: String,
    inconclusive: bool,
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let _ = writeln!(stdout, "{}", serde_json::to_string(&out.json).unwrap());
            let _ = writeln!(stderr, "{}", out.summary);
            if out.inconclusive {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OK
            }
        }
        Err(Failure(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn read_file(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{path}: {e}")))
}

fn field_override(cli: &Cli) -> Result<Option<FieldSpec>, Failure> {
    cli.field.as_deref().map(|f| f.parse::<FieldSpec>()).transpose().map_err(Failure::from)
}

/// A complex file, or a presentation when the text starts with `<`.
fn load_complex(cli: &Cli, path: &str) -> Result<(LaurentComplex, RingSpec), Failure> {
    let text = read_file(path)?;
    let field = field_override(cli)?;
    if text.trim_start().starts_with('<') {
        let p = Presentation::parse(&text).map_err(|e| Failure(format!("{path}: {e}")))?;
        let field = field.unwrap_or(FieldSpec::Rationals);
        let c = p.fox_complex(field).map_err(|e| Failure(format!("{path}: {e}")))?;
        return Ok((c, RingSpec::new(field, p.rank())));
    }
    let (c, mut ring) = read_complex(&text).map_err(|e| Failure(format!("{path}: {e}")))?;
    match field {
        Some(f) => {
            let c = crate::growth::to_field(&c, f).map_err(|e| Failure(format!("{path}: {e}")))?;
            ring.field = f.to_string();
            Ok((c, ring))
        }
        None => Ok((c, ring)),
    }
}

fn character(psi: &[i64], c: &LaurentComplex) -> Result<Character, Failure> {
    if psi.len() != c.rank() {
        return Err(Failure(format!("--psi has {} entries, the complex is over ℤ^{}", psi.len(), c.rank())));
    }
    if psi.iter().all(|&x| x == 0) {
        return Err(Failure("--psi must be nonzero".into()));
    }
    Ok(Character::new(psi.to_vec()))
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Betti { complex } => {
            let (c, _) = load_complex(cli, complex)?;
            let b = betti_over_fractions(&c);
            Ok(Output {
                summary: format!("Betti numbers over the fraction field: {b:?}"),
                json: json!({ "betti": b }),
                inconclusive: false,
            })
        }
        Command::Novikov { complex, psi, deg, window } => {
            let (c, ring) = load_complex(cli, complex)?;
            let psi = character(&psi.0, &c)?;
            let v = novikov_homology(&c, &psi, *deg, *window)?;
            let summary = v
                .statuses
                .iter()
                .enumerate()
                .map(|(i, s)| format!("H_{i}: {s}"))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output {
                inconclusive: v.has_inconclusive(),
                json: json!({ "field": ring.field, "verdict": v }),
                summary,
            })
        }
        Command::FiberCheck { input, psi, deg, window } => {
            let (c, ring) = load_complex(cli, input)?;
            let psi = character(&psi.0, &c)?;
            let rep = fibering_check(&c, &psi, *deg, *window)?;
            let summary = format!(
                "ψ = {:?}: {} (degrees ≤ {deg})",
                psi.weights,
                if rep.fibered {
                    "Novikov homology vanishes for ±ψ, kernel is FP_n"
                } else {
                    "not fibered in this range"
                }
            );
            Ok(Output {
                inconclusive: rep.has_inconclusive(),
                json: json!({ "field": ring.field, "report": rep }),
                summary,
            })
        }
        Command::BnsSample {
            input,
            max_coeff,
            seed,
            samples,
            deg,
            window,
        } => {
            let (c, ring) = load_complex(cli, input)?;
            let mut rays = primitive_rays(c.rank(), *max_coeff);
            if let Some(k) = samples {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                rays.shuffle(&mut rng);
                rays.truncate(*k);
                rays.sort();
            }
            let out = bns_cone_sample(&c, *deg, &rays, *window)?;
            let nonvanishing: Vec<&Vec<i64>> = out.iter().filter(|(_, v)| !v.all_vanish()).map(|(r, _)| r).collect();
            let inconclusive = out.values().any(|v| v.has_inconclusive());
            let verdicts: Vec<serde_json::Value> = out.iter().map(|(r, v)| json!({ "ray": r, "verdict": v })).collect();
            Ok(Output {
                summary: format!("{} rays sampled, Novikov homology nonzero on {:?}", out.len(), nonvanishing),
                json: json!({
                    "field": ring.field,
                    "seed": seed,
                    "max_coeff": max_coeff,
                    "degree_bound": deg,
                    "nonvanishing": nonvanishing,
                    "rays": verdicts,
                }),
                inconclusive,
            })
        }
        Command::UnitCheck { poly, chain, window } => {
            let (f, ring) = read_poly(&read_file(poly)?).map_err(|e| Failure(format!("{poly}: {e}")))?;
            let chain = read_chain(&read_file(chain)?).map_err(|e| Failure(format!("{chain}: {e}")))?;
            if chain.ambient() != f.rank() {
                return Err(Failure(format!("chain lives in ℤ^{}, polynomial in ℤ^{}", chain.ambient(), f.rank())));
            }
            let cert = invariant_unit_certify(&f, &chain)?;
            let (phi, inv) = chain_inverse(&f, &chain, *window)?;
            let (v, _) = f.min_face(&phi.weights).expect("nonzero");
            let bound = inv.complete_to() + v;
            let prod = f.checked_mul(&inv.to_poly())?;
            let verified = prod.filter_terms(|m, _| phi.eval(m) <= bound).is_one();
            let vars = ring.var_refs();
            let terms: BTreeMap<String, String> = inv
                .terms()
                .map(|(m, c)| {
                    (
                        crate::laurent::LaurentPoly::monomial(m.clone(), f.field().one()).display_with(&vars),
                        c.to_string(),
                    )
                })
                .collect();
            Ok(Output {
                summary: format!(
                    "{} is a unit: certificate depth {}, inverse along {:?} verified up to degree {bound}: {verified}",
                    ring.show(&f),
                    cert.depth,
                    phi.weights
                ),
                json: json!({
                    "unit": true,
                    "certificate": cert,
                    "character": phi.weights,
                    "inverse": { "complete_to": inv.complete_to(), "terms": terms },
                    "verified": verified,
                }),
                inconclusive: false,
            })
        }
        Command::Growth {
            complex,
            tower,
            csv,
            tolerance,
        } => {
            let (c, _) = load_complex(cli, complex)?;
            let field = c.field();
            let tw = read_tower(&read_file(tower)?, c.rank()).map_err(|e| Failure(format!("{tower}: {e}")))?;
            let rep = growth_estimate(&c, &tw, field)?;
            let tol = match tolerance {
                Some(t) => t.parse::<BigRational>().map_err(|_| Failure(format!("bad tolerance `{t}`")))?,
                None => crate::growth::inverse_last_index(&tw),
            };
            let luck = if field == FieldSpec::Rationals {
                Some(luck_approx_check(&c, &tw, field, &tol)?)
            } else {
                None
            };
            if let Some(path) = csv {
                let mut text = String::from("m,degree,b,b/m\n");
                for l in &rep.levels {
                    for (k, (b, r)) in l.betti.iter().zip(&l.normalized).enumerate() {
                        text.push_str(&format!("{},{k},{b},{r}\n", l.index));
                    }
                }
                fs::write(path, text).map_err(|e| Failure(format!("{path}: {e}")))?;
            }
            let last = rep.levels.last().unwrap();
            let summary = format!(
                "tower-relative estimates over {field}: last level m = {} gives normalized Betti {:?}",
                last.index,
                last.normalized.iter().map(ToString::to_string).collect::<Vec<_>>()
            );
            Ok(Output {
                json: json!({ "growth": rep, "approximation": luck }),
                summary,
                inconclusive: false,
            })
        }
        Command::Selftest { seed } => {
            let results = selftest::run_all(*seed);
            let lines: Vec<String> = results.iter().map(|r| r.line()).collect();
            let failed = results.iter().filter(|r| !r.passed).count();
            if failed > 0 {
                return Err(Failure(format!("{failed} criteria failed\n{}", lines.join("\n"))));
            }
            Ok(Output {
                json: json!({ "seed": seed, "criteria": results }),
                summary: lines.join("\n"),
                inconclusive: false,
            })
        }
    }
}
