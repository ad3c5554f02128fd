use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use orbitfold::cohomology::betti_numbers;
use orbitfold::enumerate::{enumerate, EnumerationBounds};
use orbitfold::textio::json::{BettiTable, SeriesJson};
use orbitfold::textio::{emit_json, ToJson};
use orbitfold::{
    canonical_form, cap_off, classify_2d, equivalent, equivariant_poincare, euler_number,
    is_formal, parse, serialize, validate, verify_capping, OrbitInvariants,
};

/// Orbit invariants of 3-manifolds with circle actions.
///
/// INPUT is an invariant string such as "{b=0;(o,g=0,f=1,s=0,t=0)}",
/// "@path" to read one datum per line from a file, or "-" for standard input.
#[derive(Parser)]
#[command(name = "orbitfold", version)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the classification conditions.
    Validate { input: String },
    /// Print the canonical form.
    Canon { input: String },
    /// Decide equivariant diffeomorphism of two data.
    Equiv { a: String, b: String },
    /// Cap off the boundary.
    Cap { input: String },
    /// Equivariant Betti numbers: one degree, or 0..=N with --upto.
    Betti {
        input: String,
        degree: Option<usize>,
        #[arg(long)]
        upto: Option<usize>,
    },
    /// Equivariant Poincaré series and its expansion.
    Poincare {
        input: String,
        #[arg(long, default_value_t = 10)]
        upto: usize,
    },
    /// Equivariant formality with free generators.
    Formal { input: String },
    /// Orbifold Euler number of a fixed-point-free action.
    Euler { input: String },
    /// Stream every valid datum within the bounds, one per line.
    Enumerate {
        /// Comma-separated key=value list: max_g, max_f, max_s, max_t, max_r,
        /// max_m, max_cycles, max_cycle_len, b_min, b_max.
        #[arg(long, default_value = "")]
        bounds: String,
        /// Only emit data with boundary (t > 0 or a nonempty graph).
        #[arg(long)]
        with_boundary: bool,
    },
    /// Name the surface with b boundary circles, f fixed points and s
    /// special-exceptional orbits.
    Classify2d { b: u32, f: u32, s: u32 },
}

const FAIL: u8 = 1;
const USAGE: u8 = 2;

/// Raw input texts named by one INPUT argument.
fn sources(arg: &str) -> Result<Vec<String>, String> {
    let lines = |text: String| {
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(String::from)
            .collect::<Vec<_>>()
    };
    if arg == "-" {
        let mut out = Vec::new();
        for line in io::stdin().lock().lines() {
            out.push(line.map_err(|e| format!("reading stdin: {e}"))?);
        }
        Ok(lines(out.join("\n")))
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map(lines)
            .map_err(|e| format!("reading {path}: {e}"))
    } else {
        Ok(vec![arg.to_string()])
    }
}

fn parse_or_report(text: &str) -> Option<OrbitInvariants> {
    match parse(text) {
        Ok(inv) => Some(inv),
        Err(e) => {
            eprintln!("{}", e.render(text));
            None
        }
    }
}

/// Parses and validates, reporting problems on stderr.
fn load_valid(text: &str) -> Option<OrbitInvariants> {
    let inv = parse_or_report(text)?;
    let report = validate(&inv);
    if report.ok {
        Some(inv)
    } else {
        eprintln!("{}: {}", text, report);
        None
    }
}

fn one_source(arg: &str) -> Result<String, u8> {
    match sources(arg) {
        Ok(mut v) if v.len() == 1 => Ok(v.remove(0)),
        Ok(v) => {
            eprintln!("expected exactly one datum in {arg}, found {}", v.len());
            Err(USAGE)
        }
        Err(e) => {
            eprintln!("{e}");
            Err(USAGE)
        }
    }
}

/// Runs `f` on each datum named by `arg`; the exit code is the worst seen.
fn for_each(arg: &str, mut f: impl FnMut(&str) -> u8) -> u8 {
    match sources(arg) {
        Ok(texts) => texts.iter().map(|t| f(t)).max().unwrap_or(0),
        Err(e) => {
            eprintln!("{e}");
            USAGE
        }
    }
}

fn run(cli: Cli) -> u8 {
    let json = cli.json;
    let mut out = io::stdout().lock();
    let mut emit = |line: String| {
        // a closed pipe is not an error worth reporting
        let _ = writeln!(out, "{line}");
    };
    match cli.cmd {
        Cmd::Validate { input } => for_each(&input, |text| {
            let Some(inv) = parse_or_report(text) else {
                return FAIL;
            };
            let report = validate(&inv);
            if json {
                emit(emit_json(&report));
            } else if report.ok {
                emit("ok".to_string());
            } else {
                for v in &report.violations {
                    emit(v.to_string());
                }
            }
            if report.ok {
                0
            } else {
                FAIL
            }
        }),
        Cmd::Canon { input } => for_each(&input, |text| {
            let Some(inv) = parse_or_report(text) else {
                return FAIL;
            };
            match canonical_form(&inv) {
                Ok(form) if json => {
                    emit(emit_json(&form));
                    0
                }
                Ok(form) => {
                    emit(serialize(&form.to_invariants()));
                    0
                }
                Err(e) => {
                    eprintln!("{e}");
                    FAIL
                }
            }
        }),
        Cmd::Equiv { a, b } => {
            let (ta, tb) = match (one_source(&a), one_source(&b)) {
                (Ok(x), Ok(y)) => (x, y),
                (Err(c), _) | (_, Err(c)) => return c,
            };
            let (Some(x), Some(y)) = (parse_or_report(&ta), parse_or_report(&tb)) else {
                return FAIL;
            };
            match equivalent(&x, &y) {
                Ok(eq) => {
                    if json {
                        emit(json!({ "equivalent": eq }).to_string());
                    } else {
                        emit(if eq { "equivalent" } else { "not equivalent" }.to_string());
                    }
                    0
                }
                Err(e) => {
                    eprintln!("{e}");
                    FAIL
                }
            }
        }
        Cmd::Cap { input } => for_each(&input, |text| {
            let Some(inv) = parse_or_report(text) else {
                return FAIL;
            };
            match cap_off(&inv) {
                Ok(rep) => {
                    if json {
                        let mut v = rep.to_json();
                        v["verified"] = json!(verify_capping(&rep));
                        emit(v.to_string());
                    } else {
                        emit(serialize(&rep.output));
                        emit(format!("  chi: {} -> {}", rep.chi_before, rep.chi_after));
                        for p in &rep.rp_pairings {
                            emit(format!(
                                "  RP pair in cycle {} at positions {} and {}",
                                p.cycle, p.positions.0, p.positions.1
                            ));
                        }
                        for n in &rep.notes {
                            emit(format!("  note: {n}"));
                        }
                    }
                    0
                }
                Err(e) => {
                    eprintln!("{text}: {e}");
                    FAIL
                }
            }
        }),
        Cmd::Betti {
            input,
            degree,
            upto,
        } => {
            let (lo, hi) = match (degree, upto) {
                (Some(_), Some(_)) => {
                    eprintln!("give either a degree or --upto, not both");
                    return USAGE;
                }
                (Some(d), None) => (d, d),
                (None, Some(n)) => (0, n),
                (None, None) => (0, 10),
            };
            for_each(&input, |text| {
                let Some(inv) = load_valid(text) else {
                    return FAIL;
                };
                let all = betti_numbers(&inv, hi);
                let slice = &all[lo..];
                if json {
                    let mut v = BettiTable(slice).to_json();
                    v["from_degree"] = json!(lo);
                    emit(v.to_string());
                } else {
                    let words: Vec<String> = slice.iter().map(u64::to_string).collect();
                    emit(words.join(" "));
                }
                0
            })
        }
        Cmd::Poincare { input, upto } => for_each(&input, |text| {
            let Some(inv) = load_valid(text) else {
                return FAIL;
            };
            let series = equivariant_poincare(&inv);
            if json {
                emit(emit_json(&SeriesJson {
                    series: &series,
                    upto,
                }));
            } else {
                emit(series.to_string());
                emit(series.expansion_string(upto));
            }
            0
        }),
        Cmd::Formal { input } => for_each(&input, |text| {
            let Some(inv) = load_valid(text) else {
                return FAIL;
            };
            match is_formal(&inv) {
                Ok(r) => {
                    if json {
                        emit(emit_json(&r));
                    } else {
                        emit(format!(
                            "{}: {}",
                            if r.formal { "formal" } else { "not formal" },
                            r.reason
                        ));
                        for g in &r.generators {
                            emit(format!("  deg {}: {}", g.degree, g.name));
                        }
                    }
                    0
                }
                Err(e) => {
                    eprintln!("{e}");
                    FAIL
                }
            }
        }),
        Cmd::Euler { input } => for_each(&input, |text| {
            let Some(inv) = load_valid(text) else {
                return FAIL;
            };
            match euler_number(&inv) {
                Ok(e) => {
                    emit(if json { emit_json(&e) } else { e.to_string() });
                    0
                }
                Err(e) => {
                    eprintln!("{e}");
                    FAIL
                }
            }
        }),
        Cmd::Enumerate {
            bounds,
            with_boundary,
        } => {
            let bounds: EnumerationBounds = match bounds.parse() {
                Ok(b) => b,
                Err(e) => {
                    eprintln!("--bounds: {e}");
                    return USAGE;
                }
            };
            enumerate(&bounds, |inv| {
                if with_boundary && inv.is_closed() {
                    return;
                }
                let text = serialize(&inv);
                emit(if json {
                    json!({ "datum": text }).to_string()
                } else {
                    text
                });
            });
            0
        }
        Cmd::Classify2d { b, f, s } => {
            let name = classify_2d(b, f, s).map(|x| x.name());
            if json {
                emit(json!({ "surface": name }).to_string());
            } else {
                emit(name.unwrap_or("no such manifold").to_string());
            }
            0
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    ExitCode::from(run(cli))
}
