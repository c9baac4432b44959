//! Command-line front end: analyze parameter sets, simulate orbits,
//! sweep the parameter `c`, and verify the embedded table of published
//! example values.
//!
//! Exit codes: 0 success, 1 usage error, 2 numeric-failure signals
//! (including verification failures).

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ratmap::dynamics::{self, DEFAULT_MAX_ITER, DEFAULT_TOL_CONV};
use ratmap::{report, verify, Error, Fate, Params};

#[derive(Parser)]
#[command(
    name = "ratmap",
    version,
    about = "Analysis of the rational map (a x^3 + b x^2 + c x + d) / x^3 on x > 0"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Thresholds, equilibria, 2-cycles, and the convergence regime for
    /// one parameter set.
    Analyze {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Iterate the map from an initial condition and report the fate.
    Orbit {
        #[command(flatten)]
        params: ParamArgs,
        /// Initial condition (must be positive).
        #[arg(long, allow_negative_numbers = true)]
        x0: f64,
        /// Iteration budget; defaults to RATMAP_MAX_ITER or 1e6.
        #[arg(long)]
        max_iter: Option<usize>,
        /// Convergence tolerance on successive-iterate gaps.
        #[arg(long, default_value_t = DEFAULT_TOL_CONV)]
        tol: f64,
        /// Write the orbit trace (CSV: n,x_n) to this path.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep c over a range and tabulate equilibrium/cycle counts.
    Sweep {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        d: f64,
        #[arg(long = "c-from", allow_negative_numbers = true)]
        c_from: f64,
        #[arg(long = "c-to", allow_negative_numbers = true)]
        c_to: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the embedded golden suite of published example values.
    Verify {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, allow_negative_numbers = true)]
    b: f64,
    #[arg(long, allow_negative_numbers = true)]
    c: f64,
    #[arg(long, allow_negative_numbers = true)]
    d: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are not errors.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::InvalidParams(_) | Error::Domain(_) => 1,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Analyze {
            params,
            format,
            out,
        } => {
            if format == Format::Csv {
                return Err(Error::Domain(
                    "csv is not a valid format for analyze (lists are variable-length); use json or text"
                        .into(),
                ));
            }
            let r = report::analyze(params.a, params.b, params.c, params.d)?;
            let rendered = match format {
                Format::Json => serde_json::to_string_pretty(&r).expect("report serializes"),
                _ => report::render_text(&r),
            };
            emit(out, &rendered)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Orbit {
            params,
            x0,
            max_iter,
            tol,
            trace,
            format,
            out,
        } => {
            if format == Format::Csv {
                return Err(Error::Domain(
                    "csv is not a valid format for orbit; use --trace for the iterate table"
                        .into(),
                ));
            }
            let p = Params::new(params.a, params.b, params.c, params.d)?;
            let budget = max_iter.or_else(env_max_iter).unwrap_or(DEFAULT_MAX_ITER);
            let result = if trace.is_some() {
                dynamics::iterate_orbit_traced(&p, x0, budget, tol, budget + 1)?
            } else {
                dynamics::iterate_orbit(&p, x0, budget, tol)?
            };
            if let (Some(path), Some(points)) = (&trace, &result.trace) {
                let mut csv = String::from("n,x_n\n");
                for (n, x) in points.iter().enumerate() {
                    csv.push_str(&format!("{n},{x}\n"));
                }
                std::fs::write(path, csv).map_err(io_error)?;
            }
            let rendered = match format {
                Format::Json => {
                    let mut value = serde_json::to_value(&result).expect("orbit serializes");
                    value["trace"] = serde_json::Value::Null; // trace goes to its file
                    serde_json::to_string_pretty(&value).expect("orbit serializes")
                }
                _ => render_orbit_text(&result),
            };
            emit(out, &rendered)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            a,
            b,
            d,
            c_from,
            c_to,
            steps,
            format,
            out,
        } => {
            let rows = report::sweep(a, b, d, c_from, c_to, steps)?;
            let rendered = match format {
                Format::Csv => report::sweep_csv(&rows),
                Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize"),
                Format::Text => report::sweep_csv(&rows).replace(',', "\t"),
            };
            emit(out, &rendered)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { format } => {
            let outcomes = verify::run_all()?;
            let passed = outcomes.iter().filter(|o| o.pass).count();
            match format {
                Format::Json => {
                    let value = serde_json::json!({
                        "passed": passed,
                        "total": outcomes.len(),
                        "results": outcomes,
                    });
                    println!("{}", serde_json::to_string_pretty(&value).expect("serializes"));
                }
                _ => {
                    println!(
                        "{:<9} {:<6} {:<28} {:<8} detail",
                        "case", "status", "cycles (computed)", "regime"
                    );
                    for o in &outcomes {
                        let cycles = o
                            .computed_cycles
                            .iter()
                            .map(|(p, q)| format!("({p:.4}, {q:.4})"))
                            .collect::<Vec<_>>()
                            .join(" ");
                        let detail = if o.pass {
                            String::new()
                        } else {
                            o.failures.join("; ")
                        };
                        println!(
                            "{:<9} {:<6} {:<28} {:<8} {}",
                            o.name,
                            if o.pass { "pass" } else { "FAIL" },
                            cycles,
                            o.computed_regime,
                            detail
                        );
                    }
                    println!("{passed}/{} passed", outcomes.len());
                }
            }
            if passed == outcomes.len() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(2))
            }
        }
    }
}

fn env_max_iter() -> Option<usize> {
    std::env::var("RATMAP_MAX_ITER").ok()?.parse().ok()
}

fn render_orbit_text(r: &ratmap::OrbitResult) -> String {
    let fate = match r.fate {
        Fate::FixedPoint(v) => format!("FixedPoint({})", report::fmt_sig6(v)),
        Fate::TwoCycle(p, q) => format!(
            "TwoCycle({}, {})",
            report::fmt_sig6(p),
            report::fmt_sig6(q)
        ),
        Fate::NonpositiveIterate(n) => format!("NonpositiveIterate(step {n})"),
        Fate::Undecided => "Undecided".into(),
    };
    let mut s = format!(
        "fate: {fate}\niterations: {}\nfinal points: {}, {}\n",
        r.iterations,
        report::fmt_sig6(r.final_points.0),
        report::fmt_sig6(r.final_points.1),
    );
    if let Some(note) = &r.note {
        s.push_str(&format!("note: {note}\n"));
    }
    s
}

fn emit(out: Option<PathBuf>, content: &str) -> Result<(), Error> {
    let content = if content.ends_with('\n') {
        content.to_string()
    } else {
        format!("{content}\n")
    };
    match out {
        Some(path) => std::fs::write(path, content).map_err(io_error),
        None => std::io::stdout()
            .write_all(content.as_bytes())
            .map_err(io_error),
    }
}

fn io_error(e: std::io::Error) -> Error {
    Error::Domain(format!("i/o error: {e}"))
}
