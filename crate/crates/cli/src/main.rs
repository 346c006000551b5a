//! `derham`: batch front end to the derham-core library.
//!
//! Every subcommand prints one JSON report (or its one-line summary with
//! `--text`). Exit codes: 0 success, 1 a mathematical check failed, 2 the
//! input could not be read or violated a precondition.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use derham::cohomology::{
    compare_lambda_psi, h0_report, simplicial_cohomology, truncated_pw_derham, BettiReport,
};
use derham::exact::form::{LaurentForm, PolyForm};
use derham::exact::rational::format_q;
use derham::io::{self, AlgebraJson, ChainJson, FormJson, PolyhedronJson};
use derham::kahler::{graded_exactness_solve, torus_witness, truncated_exactness_solve, ExactnessOutcome, FinPresAlgebra};
use derham::pairing::{pair_form_chain, xi_evaluate};
use derham::polyhedron::Polyhedron;

mod selftest;

#[derive(Parser, Debug)]
#[command(name = "derham", version, about = "Exact de Rham computations on polyhedra and presented algebras")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized suites; recorded in every report.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print only the one-line summary.
    #[arg(long, global = true)]
    text: bool,
    /// Keep wall-clock timings in reports (they are zeroed by default so that
    /// reports are reproducible byte for byte).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Simplicial,
    Derham,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Model {
    Torus,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a polyhedron is a geometric simplicial complex.
    Validate { path: PathBuf },
    /// Betti numbers, simplicial or of the truncated piecewise de Rham complex.
    Betti {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "derham")]
        mode: Mode,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(1..))]
        max_degree: i64,
    },
    /// Integrate a polynomial form over an affine chain.
    Pair {
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        chain: PathBuf,
    },
    /// Integrate a form of a presented algebra over a chain in its real points.
    Xi {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        chain: PathBuf,
    },
    /// Show that the standard top form on the algebraic torus is not exact.
    Witness {
        #[arg(long, value_enum, default_value = "torus")]
        model: Model,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=6))]
        n: u32,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(i64).range(1..))]
        max_degree: i64,
    },
    /// Compare dim H⁰ with the number of connected components.
    H0 { path: PathBuf },
    /// Check that a star has the cohomology of a point at every bound.
    Poincare {
        #[arg(long)]
        star: PathBuf,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(1..))]
        max_degree: i64,
    },
    /// Integration after the Whitney map, degree by degree.
    Compare { path: PathBuf },
    /// Run a quick randomized consistency suite.
    Selftest {
        #[arg(long, default_value_t = 50)]
        cases: usize,
    },
}

/// Why a command did not produce a successful report.
enum Failure {
    Input(String),
    Check(Report),
}

impl From<derham::Error> for Failure {
    fn from(e: derham::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

pub struct Report {
    summary: String,
    body: Value,
}

impl Report {
    fn new(summary: impl Into<String>, body: Value) -> Self {
        Report {
            summary: summary.into(),
            body,
        }
    }
}

fn value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialise")
}

fn read<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = io::read_file(path)?;
    io::from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn polyhedron(path: &Path) -> Result<Polyhedron, Failure> {
    Ok(io::polyhedron_from_json(&read::<PolyhedronJson>(path)?)?)
}

fn betti_value(mut r: BettiReport, timing: bool) -> Value {
    if !timing {
        r.elapsed_ms = 0;
    }
    value(&r)
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Validate { path } => {
            let k = polyhedron(path)?;
            let r = k.validate();
            let body = json!({
                "report": value(&r),
                "polyhedron": value(&io::polyhedron_to_json(&k)),
            });
            if r.valid {
                Ok(Report::new("valid", body))
            } else {
                let why = match (r.bad_pairs.first(), r.degenerate.first()) {
                    (Some((a, b)), _) => format!("simplices {a:?} and {b:?} do not meet in a common face"),
                    (None, Some(s)) => format!("simplex {s:?} is degenerate"),
                    _ => "invalid".into(),
                };
                Err(Failure::Input(format!("{}: {why}", path.display())))
            }
        }
        Command::Betti {
            path,
            mode,
            max_degree,
        } => {
            let k = Arc::new(polyhedron(path)?);
            let simplicial = simplicial_cohomology(&k);
            match mode {
                Mode::Simplicial => Ok(Report::new(
                    format!("betti {:?}", simplicial.betti),
                    json!({"mode": "simplicial", "report": betti_value(simplicial, cli.timing)}),
                )),
                Mode::Derham => {
                    let r = truncated_pw_derham(&k, *max_degree);
                    let agrees = r.betti == simplicial.betti;
                    let summary = format!(
                        "betti {:?} at bound {max_degree}, stabilized {}, simplicial {:?}",
                        r.betti,
                        r.stabilized == Some(true),
                        simplicial.betti
                    );
                    let report = Report::new(
                        summary,
                        json!({
                            "mode": "derham",
                            "betti": r.betti.clone(),
                            "stabilized": r.stabilized,
                            "simplicial_betti": simplicial.betti.clone(),
                            "agrees": agrees,
                            "report": betti_value(r, cli.timing),
                        }),
                    );
                    if agrees {
                        Ok(report)
                    } else {
                        Err(Failure::Check(report))
                    }
                }
            }
        }
        Command::Pair { form, chain } => {
            let w: PolyForm = io::form_from_json(&read::<FormJson>(form)?)?;
            let c = io::chain_from_json(&read::<ChainJson>(chain)?)?;
            let v = format_q(&pair_form_chain(&w, &c)?);
            Ok(Report::new(format!("integral {v}"), json!({ "value": v })))
        }
        Command::Xi {
            algebra,
            form,
            chain,
        } => {
            let alg = io::algebra_from_json(&read::<AlgebraJson>(algebra)?)?;
            let w: LaurentForm = io::form_from_json(&read::<FormJson>(form)?)?;
            let c = io::chain_from_json(&read::<ChainJson>(chain)?)?;
            let v = format_q(&xi_evaluate(&alg, &w, &c)?);
            Ok(Report::new(format!("integral {v}"), json!({ "value": v })))
        }
        Command::Witness { model, n, max_degree } => {
            let Model::Torus = model;
            witness(*n as usize, *max_degree)
        }
        Command::H0 { path } => {
            let k = Arc::new(polyhedron(path)?);
            let r = h0_report(&k);
            let report = Report::new(
                format!("dim H0 = {}, components = {}", r.dim_h0, r.components),
                json!({ "report": value(&r) }),
            );
            if r.equal && r.locally_constant {
                Ok(report)
            } else {
                Err(Failure::Check(report))
            }
        }
        Command::Poincare { star, max_degree } => {
            let s = io::star_from_json(&read::<PolyhedronJson>(star)?)?;
            let mut per_bound = Vec::new();
            let mut ok = true;
            for d in 1..=*max_degree {
                let r = truncated_pw_derham(s.base(), d);
                ok &= r.betti.first() == Some(&1) && r.betti.iter().skip(1).all(|&b| b == 0);
                per_bound.push(betti_value(r, cli.timing));
            }
            let report = Report::new(
                if ok {
                    format!("point cohomology at every bound up to {max_degree}")
                } else {
                    "nonzero higher cohomology on a star".to_string()
                },
                json!({ "center": s.center(), "ok": ok, "reports": per_bound }),
            );
            if ok {
                Ok(report)
            } else {
                Err(Failure::Check(report))
            }
        }
        Command::Compare { path } => {
            let k = Arc::new(polyhedron(path)?);
            let r = compare_lambda_psi(&k)?;
            let report = Report::new(
                if r.ok { "identity in every degree" } else { "comparison failed" },
                json!({ "report": value(&r) }),
            );
            if r.ok {
                Ok(report)
            } else {
                Err(Failure::Check(report))
            }
        }
        Command::Selftest { cases } => {
            let r = selftest::run(cli.seed, *cases);
            let ok = r.failures == 0;
            let report = Report::new(
                format!("{} checks, {} failures", r.checks, r.failures),
                value(&r),
            );
            if ok {
                Ok(report)
            } else {
                Err(Failure::Check(report))
            }
        }
    }
}

fn outcome_value(o: &ExactnessOutcome) -> Value {
    match o {
        ExactnessOutcome::Exact(eta) => json!({"exact": true, "primitive": value(&io::form_to_json(eta))}),
        ExactnessOutcome::Infeasible { conclusive } => json!({"exact": false, "conclusive": conclusive}),
    }
}

fn witness(n: usize, max_degree: i64) -> Result<Report, Failure> {
    let alg = FinPresAlgebra::laurent(n);
    let omega = torus_witness(n);
    let mut bounds = Vec::new();
    let mut all_infeasible = true;
    for d in 1..=max_degree {
        let o = truncated_exactness_solve(&alg, &omega, d)?;
        all_infeasible &= o.is_infeasible();
        bounds.push(json!({"bound": d, "outcome": outcome_value(&o)}));
    }
    let graded = graded_exactness_solve(&alg, &omega)?;
    let nonzero = matches!(graded, ExactnessOutcome::Infeasible { conclusive: true });
    let body = json!({
        "model": "torus",
        "n": n,
        "form": value(&io::form_to_json(&omega)),
        "bounds": bounds,
        "graded": outcome_value(&graded),
    });
    if all_infeasible && nonzero {
        Ok(Report::new("infeasible at all blocks; class nonzero", body))
    } else {
        Err(Failure::Check(Report::new("a primitive was found", body)))
    }
}

fn emit(cli: &Cli, report: &Report, command: &str, elapsed_ms: u128) -> Result<(), String> {
    let text = if cli.text {
        format!("{}\n", report.summary)
    } else {
        let mut body = json!({
            "command": command,
            "seed": cli.seed,
            "summary": report.summary,
        });
        if let (Value::Object(dst), Value::Object(src)) = (&mut body, &report.body) {
            for (k, v) in src {
                dst.insert(k.clone(), v.clone());
            }
        }
        if cli.timing {
            body["elapsed_ms"] = json!(elapsed_ms as u64);
        }
        format!("{}\n", io::to_json(&body))
    };
    match &cli.out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Betti { .. } => "betti",
        Command::Pair { .. } => "pair",
        Command::Xi { .. } => "xi",
        Command::Witness { .. } => "witness",
        Command::H0 { .. } => "h0",
        Command::Poincare { .. } => "poincare",
        Command::Compare { .. } => "compare",
        Command::Selftest { .. } => "selftest",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli);
    let elapsed = start.elapsed().as_millis();
    let name = command_name(&cli.command);
    let (report, code) = match result {
        Ok(r) => (r, 0),
        Err(Failure::Check(r)) => (r, 1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Err(msg) = emit(&cli, &report, name, elapsed) {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    if code == 1 {
        eprintln!("check failed: {}", report.summary);
    }
    ExitCode::from(code)
}
