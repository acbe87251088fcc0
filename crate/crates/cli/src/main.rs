//! Command-line front end: parse word and automorphism expressions, run the
//! exact computations, and emit deterministic text or JSON.
//!
//! Composition order: in `u*v` the LEFT factor acts first, so
//! `a(3,1)*a(3,2)` sends x3 to x1 x2 x3 x2^-1 x1^-1.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ajf_core::automorphisms::{verify_commuting, verify_mccool};
use ajf_core::johnson::{
    injectivity_matrix, johnson_degree, tau, verify_lie_morphism, verify_prop62, JohnsonDegree,
    Prop62Status,
};
use ajf_core::lielyndon::{lyndon_words, witt_rank};
use ajf_core::magnus::magnus_expand;
use ajf_core::parse::{parse_aut_expr, parse_word};
use ajf_core::ranks::{ep_coeffs, gr_rank_psn, growth_check, hi_lower_bound, summand_ranks};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct Common {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
}

#[derive(Debug, Parser)]
#[command(
    name = "ajf",
    about = "Exact computations in the Johnson filtration of Aut(F_n)",
    long_about = "Exact computations in the Johnson filtration of Aut(F_n): Witt ranks and \
Lyndon bases of free Lie algebras, Magnus expansions, Johnson homomorphism values, relation \
and injectivity verifiers for the upper-triangular McCool group, and closed-form rank tables.\n\n\
Automorphism products apply the LEFT factor first: a(3,1)*a(3,2) sends x3 to \
x1*x2*x3*x2^-1*x1^-1. Word grammar: x1..xn, ^k, * or juxtaposition, [A,B], parentheses. \
Automorphism grammar: a(i,j), A(i,j,k), rho(p3,..,pn; q3,..,qn), ^k, *, [U,V], parentheses."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Rank of the degree-s summand of the free Lie algebra on q generators
    Witt {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        s: u32,
    },
    /// List the Lyndon words of length s over 1..q in lexicographic order
    Lyndon {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        s: u32,
    },
    /// Magnus expansion of a word, truncated at a given degree
    Magnus {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        word: String,
        #[arg(long)]
        trunc: u32,
    },
    /// Johnson degree and Johnson homomorphism values of an automorphism
    Tau {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        aut: String,
        /// Search depth for the Johnson degree
        #[arg(long, default_value_t = 6)]
        cap: u32,
    },
    /// Mechanical verification suites
    Verify {
        #[command(subcommand)]
        which: VerifyCmd,
    },
    /// Closed-form rank tables and lower bounds
    Ranks {
        #[command(subcommand)]
        which: RanksCmd,
    },
    /// Euler-Poincare coefficients n*d_{s+1}(V_n) for s = 1..smax
    Ep {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        smax: u32,
    },
}

#[derive(Debug, Subcommand)]
enum VerifyCmd {
    /// Check the four McCool relation families over all index tuples
    Mccool {
        #[arg(long)]
        n: u32,
    },
    /// Check that generators of distinct factors of H(n,k) commute
    Commuting {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Check the nested-commutator action and Johnson value for one index list
    Prop62 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u32,
        /// Comma-separated indices r1,r2,... with each r < q
        #[arg(long, value_delimiter = ',', required = true)]
        rs: Vec<u32>,
    },
    /// Stack tau rows for H(n,k) in degree s and compare rank with the Witt count
    Injectivity {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        s: u32,
    },
    /// Seeded random check that tau maps group commutators to derivation brackets
    LieMorphism {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
enum RanksCmd {
    /// Graded rank of the upper-triangular McCool group in degree s
    Gr {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
    },
    /// Per-degree ranks of the (n-k+1)-fold tensor summand at depth s
    Summand {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        s: u32,
    },
    /// Lower bound for the rank in cohomological degree i at depth s
    Bound {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        i: u32,
    },
    /// Lower bounds over s = 1..smax with growth bookkeeping
    Growth {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        smax: u32,
    },
}

enum Outcome {
    Ok,
    VerificationFailed,
}

fn run(cli: &Cli) -> Result<Outcome, ajf_core::Error> {
    let fmt = cli.common.format;
    match &cli.cmd {
        Cmd::Witt { q, s } => {
            if *q < 1 || *s < 1 {
                return Err(usage("witt needs q >= 1 and s >= 1"));
            }
            let d = witt_rank(*q, *s);
            match fmt {
                Format::Text => println!("{d}"),
                Format::Json => println!(
                    "{}",
                    json!({"q": q, "s": s, "rank": d.to_string()})
                ),
            }
            Ok(Outcome::Ok)
        }
        Cmd::Lyndon { q, s } => {
            if *q < 1 || *s < 1 {
                return Err(usage("lyndon needs q >= 1 and s >= 1"));
            }
            let words = lyndon_words(*q, *s);
            match fmt {
                Format::Text => {
                    for w in &words {
                        let parts: Vec<String> =
                            w.letters().iter().map(|l| l.to_string()).collect();
                        println!("{}", parts.join(","));
                    }
                }
                Format::Json => {
                    let list: Vec<_> = words.iter().map(|w| w.letters().to_vec()).collect();
                    println!("{}", json!({"q": q, "s": s, "words": list}));
                }
            }
            Ok(Outcome::Ok)
        }
        Cmd::Magnus { n, word, trunc } => {
            if *trunc < 1 {
                return Err(usage("magnus needs trunc >= 1"));
            }
            let w = parse_word(word, *n)?;
            let series = magnus_expand(&w, *trunc);
            match fmt {
                Format::Text => println!("{series}"),
                Format::Json => {
                    let terms: Vec<_> = series
                        .terms()
                        .map(|(m, c)| {
                            json!({"monomial": m.letters(), "coeff": c.to_string()})
                        })
                        .collect();
                    println!(
                        "{}",
                        json!({"n": n, "trunc": trunc, "word": w.to_string(), "terms": terms})
                    );
                }
            }
            Ok(Outcome::Ok)
        }
        Cmd::Tau { n, aut, cap } => {
            if *cap < 1 {
                return Err(usage("tau needs cap >= 1"));
            }
            let f = parse_aut_expr(aut, *n)?.compile(*n)?;
            let degree = johnson_degree(&f, *cap)?;
            let s = match degree {
                JohnsonDegree::Exactly(s) => s,
                JohnsonDegree::AtLeast(cap) => cap,
            };
            let value = tau(&f, s)?;
            match fmt {
                Format::Text => {
                    println!("johnson degree: {degree}");
                    println!("tau_{s}:");
                    println!("{value}");
                }
                Format::Json => {
                    let mut obj = value.to_json();
                    let map = obj.as_object_mut().expect("object");
                    map.insert("exact".into(), json!(degree.exact().is_some()));
                    map.insert("johnson_degree".into(), json!(degree.to_string()));
                    println!("{obj}");
                }
            }
            Ok(Outcome::Ok)
        }
        Cmd::Verify { which } => run_verify(which, fmt),
        Cmd::Ranks { which } => run_ranks(which, fmt),
        Cmd::Ep { n, smax } => {
            if *n < 1 || *smax < 1 {
                return Err(usage("ep needs n >= 1 and smax >= 1"));
            }
            let coeffs = ep_coeffs(*n, *smax);
            match fmt {
                Format::Text => {
                    for (idx, c) in coeffs.coeffs.iter().enumerate() {
                        println!("s={}: {}", idx + 1, c);
                    }
                }
                Format::Json => println!("{}", coeffs.to_json()),
            }
            Ok(Outcome::Ok)
        }
    }
}

fn run_verify(cmd: &VerifyCmd, fmt: Format) -> Result<Outcome, ajf_core::Error> {
    match cmd {
        VerifyCmd::Mccool { n } => {
            let report = verify_mccool(*n)?;
            match fmt {
                Format::Text => {
                    if report.ok() {
                        println!(
                            "OK: {} relation families, 0 failures",
                            report.families.len()
                        );
                    } else {
                        for f in &report.families {
                            for failure in &f.failures {
                                println!("FAIL {}: {}", f.name, failure);
                            }
                        }
                        println!(
                            "FAILED: {} of {} checks",
                            report.total_failures(),
                            report.total_checked()
                        );
                    }
                }
                Format::Json => {
                    let families: Vec<_> = report
                        .families
                        .iter()
                        .map(|f| {
                            json!({"name": f.name, "checked": f.checked, "failures": f.failures})
                        })
                        .collect();
                    println!(
                        "{}",
                        json!({"n": report.rank, "families": families, "ok": report.ok()})
                    );
                }
            }
            Ok(if report.ok() {
                Outcome::Ok
            } else {
                Outcome::VerificationFailed
            })
        }
        VerifyCmd::Commuting { n, k } => {
            let report = verify_commuting(*n, *k)?;
            match fmt {
                Format::Text => {
                    if report.ok() {
                        println!(
                            "OK: H({},{}) cross-factor pairs commute ({} pairs)",
                            report.n, report.k, report.pairs
                        );
                    } else {
                        for f in &report.failures {
                            println!("FAIL: {f}");
                        }
                    }
                }
                Format::Json => println!(
                    "{}",
                    json!({
                        "n": report.n, "k": report.k, "pairs": report.pairs,
                        "failures": report.failures, "ok": report.ok(),
                    })
                ),
            }
            Ok(if report.ok() {
                Outcome::Ok
            } else {
                Outcome::VerificationFailed
            })
        }
        VerifyCmd::Prop62 { n, q, rs } => {
            let report = verify_prop62(*n, *q, rs)?;
            let (status, detail) = match &report.status {
                Prop62Status::Verified { degree } => ("verified", format!("degree {degree}")),
                Prop62Status::DegenerateVacuous => {
                    ("degenerate", "vacuously true".to_string())
                }
                Prop62Status::Failed { reason } => ("failed", reason.clone()),
            };
            match fmt {
                Format::Text => {
                    if report.passed() {
                        println!("OK: {status} ({detail})");
                    } else {
                        println!("FAIL: {detail}");
                    }
                }
                Format::Json => println!(
                    "{}",
                    json!({
                        "n": n, "q": q, "rs": rs,
                        "status": status, "detail": detail, "ok": report.passed(),
                    })
                ),
            }
            Ok(if report.passed() {
                Outcome::Ok
            } else {
                Outcome::VerificationFailed
            })
        }
        VerifyCmd::Injectivity { n, k, s } => {
            let report = injectivity_matrix(*n, *k, *s)?;
            match fmt {
                Format::Text => println!(
                    "rows {} cols {} rank {} expected {} -- {}",
                    report.rows,
                    report.cols,
                    report.rank,
                    report.expected,
                    if report.ok() { "OK" } else { "FAIL" }
                ),
                Format::Json => println!("{}", report.to_json()),
            }
            Ok(if report.ok() {
                Outcome::Ok
            } else {
                Outcome::VerificationFailed
            })
        }
        VerifyCmd::LieMorphism { n, samples, seed } => {
            let report = verify_lie_morphism(*n, *samples, *seed)?;
            match fmt {
                Format::Text => {
                    if report.ok() {
                        println!(
                            "OK: {} samples, 0 failures (seed {})",
                            report.samples.len(),
                            report.seed
                        );
                    } else {
                        for s in report.samples.iter().filter(|s| !s.ok) {
                            println!(
                                "FAIL: u={} (degree {}), v={} (degree {})",
                                s.u, s.degree_u, s.v, s.degree_v
                            );
                        }
                    }
                }
                Format::Json => println!(
                    "{}",
                    json!({
                        "n": report.n, "seed": report.seed,
                        "samples": report.samples.len(),
                        "failures": report.failures(), "ok": report.ok(),
                    })
                ),
            }
            Ok(if report.ok() {
                Outcome::Ok
            } else {
                Outcome::VerificationFailed
            })
        }
    }
}

fn run_ranks(cmd: &RanksCmd, fmt: Format) -> Result<Outcome, ajf_core::Error> {
    match cmd {
        RanksCmd::Gr { n, s } => {
            if *n < 2 || *s < 1 {
                return Err(usage("ranks gr needs n >= 2 and s >= 1"));
            }
            let r = gr_rank_psn(*n, *s);
            match fmt {
                Format::Text => println!("{r}"),
                Format::Json => {
                    println!("{}", json!({"n": n, "s": s, "rank": r.to_string()}))
                }
            }
            Ok(Outcome::Ok)
        }
        RanksCmd::Summand { n, k, s } => {
            let table = summand_ranks(*n, *k, *s)?;
            match fmt {
                Format::Text => {
                    for (i, r) in table.ranks.iter().enumerate() {
                        println!("degree {i}: {r}");
                    }
                    println!("total: {}", table.total());
                }
                Format::Json => println!("{}", table.to_json()),
            }
            Ok(Outcome::Ok)
        }
        RanksCmd::Bound { n, s, i } => {
            let bound = hi_lower_bound(*n, *s, *i)?;
            match fmt {
                Format::Text => {
                    let source = match bound.source {
                        ajf_core::ranks::BoundSource::Specialization => {
                            "specialization".to_string()
                        }
                        ajf_core::ranks::BoundSource::Summand { k } => {
                            format!("summand k={k}")
                        }
                    };
                    println!("{} (attained by {source})", bound.value);
                }
                Format::Json => println!("{}", bound.to_json()),
            }
            Ok(Outcome::Ok)
        }
        RanksCmd::Growth { n, i, smax } => {
            let report = growth_check(*n, *i, 1, *smax)?;
            match fmt {
                Format::Text => {
                    for (s, v) in &report.values {
                        println!("s={s}: {v}");
                    }
                    match report.strict_from {
                        Some(s0) => println!(
                            "strictly increasing from s={s0}{}",
                            if report.dips.is_empty() {
                                String::new()
                            } else {
                                format!(" (dips at s={:?})", report.dips)
                            }
                        ),
                        None => println!("no strictly increasing tail"),
                    }
                }
                Format::Json => println!("{}", report.to_json()),
            }
            Ok(if report.passes {
                Outcome::Ok
            } else {
                Outcome::VerificationFailed
            })
        }
    }
}

fn usage(msg: &str) -> ajf_core::Error {
    ajf_core::Error::IndexViolation(msg.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
