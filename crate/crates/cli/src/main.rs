//! `grapes`: JSON in, JSON out.
//!
//! Exit codes: 0 success (or every check passed), 1 a check failed,
//! 2 malformed input, 3 only inconclusive verdicts remain.

use std::fs;
use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use grapes_core::grape::{
    classify_strong, verify_dual_invariance, CertificateTree, VariantWitness,
};
use grapes_core::graph::{Digraph, DigraphJson, Graph, GraphJson};
use grapes_core::homology::{check_alexander_duality, reduced_homology};
use grapes_core::homotopy::{collapse_search, SearchMode, ShvVerdict, DEFAULT_BUDGET};
use grapes_core::verify::gen::{random_complex, random_digraph, random_forest};
use grapes_core::verify::suite::{run_suite, Level, SuiteOptions, DEFAULT_SEED};
use grapes_core::verify::{
    verify_forest_theorem, verify_pfpm_theorem, Summary, VerificationReport,
};
use grapes_core::{
    check_grape, verify_certificate, Complex, ComplexJson, GrapeOptions, GrapeVariant,
    GrapeVerdict, Status,
};

#[derive(Parser)]
#[command(name = "grapes", version, about = "Grapes, Alexander duals, collapses and homology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Alexander dual on the same ground set
    Dual { complex: String },
    /// Link of an element
    Link { complex: String, elem: String },
    /// Deletion of an element
    Del { complex: String, elem: String },
    /// Reduced integral homology
    Homology { complex: String },
    /// Search for a collapse to the void complex
    Collapse {
        complex: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        exhaustive: bool,
    },
    #[command(subcommand)]
    Grape(GrapeCommand),
    /// Complex built from a graph
    FromGraph {
        graph: String,
        #[arg(long = "complex", value_enum)]
        kind: GraphComplex,
        #[arg(long)]
        dual: bool,
    },
    /// Complex built from a digraph with terminals
    FromDigraph {
        digraph: String,
        #[arg(long = "complex", value_enum)]
        kind: DigraphComplex,
    },
    #[command(subcommand)]
    Verify(VerifyCommand),
    #[command(subcommand)]
    Gen(GenCommand),
    /// Run the acceptance matrix
    Suite {
        #[arg(long, value_enum, default_value_t = SuiteLevel::Smoke)]
        level: SuiteLevel,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Only these criteria (repeatable)
        #[arg(long = "criterion")]
        criteria: Vec<u32>,
    },
}

#[derive(Subcommand)]
enum GrapeCommand {
    /// Decide grape membership and emit a certificate
    Check {
        complex: String,
        #[arg(long)]
        variant: GrapeVariant,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Simple-homotopy class of a strong combinatorial grape
    Classify { complex: String },
    /// Replay a certificate without searching
    VerifyCert {
        complex: String,
        cert: String,
        /// Defaults to the variant named by the first witness
        #[arg(long)]
        variant: Option<GrapeVariant>,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Classifications of the forest complexes and their duals
    Forest { graph: String },
    /// Path-free and path-missing classifications
    Pfpm { digraph: String },
    /// Dual of a grape is a grape of the same variant
    Duality {
        complex: String,
        #[arg(long)]
        variant: GrapeVariant,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Combinatorial Alexander duality in (co)homology
    Cad { complex: String },
}

#[derive(Subcommand)]
enum GenCommand {
    Forest {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Complex {
        #[arg(long)]
        ground: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Digraph {
        #[arg(long)]
        v: usize,
        #[arg(long)]
        arcs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long)]
    exhaustive_gamma: bool,
}

impl SearchArgs {
    fn options(&self) -> GrapeOptions {
        GrapeOptions {
            budget: self.budget,
            exhaustive_gamma: self.exhaustive_gamma,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphComplex {
    Ind,
    Dom,
    Ec,
    Ed,
}

#[derive(Clone, Copy, ValueEnum)]
enum DigraphComplex {
    Pf,
    Pm,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteLevel {
    Smoke,
    Full,
}

/// Input problems map to exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<(Value, u8), InputError>;

fn read(path: &str) -> Result<String, InputError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))
    }
}

fn load_complex(path: &str) -> Result<Complex, InputError> {
    let json: ComplexJson = serde_json::from_str(&read(path)?)?;
    Ok(Complex::from_json(&json)?)
}

fn load_graph(path: &str) -> Result<Graph, InputError> {
    let json: GraphJson = serde_json::from_str(&read(path)?)?;
    Ok(Graph::from_json(&json)?)
}

fn load_digraph(path: &str) -> Result<Digraph, InputError> {
    let json: DigraphJson = serde_json::from_str(&read(path)?)?;
    Ok(Digraph::from_json(&json)?)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable output")
}

fn ok(v: Value) -> Outcome {
    Ok((v, 0))
}

fn summary(reports: Vec<VerificationReport>) -> Outcome {
    let s = Summary::from_reports(reports);
    let code = s.exit_code() as u8;
    Ok((to_value(&s), code))
}

fn verdict_json(v: &GrapeVariant, verdict: &GrapeVerdict) -> (Value, u8) {
    let mut out = json!({ "variant": v, "verdict": verdict.label() });
    match verdict {
        GrapeVerdict::Yes(cert) => out["certificate"] = to_value(cert),
        GrapeVerdict::Unknown(reason) => out["reason"] = reason.clone().into(),
        GrapeVerdict::No => {}
    }
    let code = if matches!(verdict, GrapeVerdict::Unknown(_)) { 3 } else { 0 };
    (out, code)
}

fn first_witness_variant(cert: &CertificateTree) -> Option<GrapeVariant> {
    match cert {
        CertificateTree::Base { .. } => None,
        CertificateTree::Split { witness, .. } => Some(match witness {
            VariantWitness::Strong { .. } => GrapeVariant::StrongCombinatorial,
            VariantWitness::Combinatorial { .. } => GrapeVariant::Combinatorial,
            VariantWitness::Weak { .. } => GrapeVariant::WeakCombinatorial,
            VariantWitness::StrongWeak { .. } => GrapeVariant::StrongWeakCombinatorial,
        }),
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Dual { complex } => ok(to_value(&load_complex(&complex)?.alexander_dual())),
        Command::Link { complex, elem } => ok(to_value(&load_complex(&complex)?.link(&elem)?)),
        Command::Del { complex, elem } => ok(to_value(&load_complex(&complex)?.deletion(&elem)?)),
        Command::Homology { complex } => ok(to_value(&reduced_homology(&load_complex(&complex)?))),
        Command::Collapse {
            complex,
            budget,
            exhaustive,
        } => {
            let c = load_complex(&complex)?;
            let mode = if exhaustive {
                SearchMode::Exhaustive
            } else {
                SearchMode::Greedy
            };
            let r = collapse_search(&c, budget, mode);
            let mut out = json!({ "budget_spent": r.budget_spent });
            let code = match &r.verdict {
                ShvVerdict::Yes(seq) => {
                    out["verdict"] = "yes".into();
                    out["sequence"] = to_value(&seq.to_json(&c));
                    0
                }
                ShvVerdict::No => {
                    out["verdict"] = "no".into();
                    0
                }
                ShvVerdict::Unknown => {
                    out["verdict"] = "unknown".into();
                    3
                }
            };
            Ok((out, code))
        }
        Command::Grape(g) => run_grape(g),
        Command::FromGraph { graph, kind, dual } => {
            let g = load_graph(&graph)?;
            let c = match kind {
                GraphComplex::Ind => g.independence_complex()?,
                GraphComplex::Dom => g.dominance_complex()?,
                GraphComplex::Ec => g.edge_cover_complex()?,
                GraphComplex::Ed => g.edge_dominance_complex()?,
            };
            ok(to_value(&if dual { c.alexander_dual() } else { c }))
        }
        Command::FromDigraph { digraph, kind } => {
            let d = load_digraph(&digraph)?;
            let c = match kind {
                DigraphComplex::Pf => d.path_free_complex()?,
                DigraphComplex::Pm => d.path_missing_complex()?,
            };
            ok(to_value(&c))
        }
        Command::Verify(v) => run_verify(v),
        Command::Gen(g) => ok(match g {
            GenCommand::Forest { n, seed } => to_value(&random_forest(n, seed).to_json()),
            GenCommand::Complex {
                ground,
                density,
                seed,
            } => {
                if !(0.0..=1.0).contains(&density) {
                    return Err(InputError("density must lie in [0, 1]".into()));
                }
                to_value(&random_complex(ground, density, seed))
            }
            GenCommand::Digraph { v, arcs, seed } => {
                if v == 0 {
                    return Err(InputError("a digraph needs at least one vertex".into()));
                }
                to_value(&random_digraph(v, arcs, seed).to_json())
            }
        }),
        Command::Suite {
            level,
            seed,
            criteria,
        } => {
            let opts = SuiteOptions {
                level: match level {
                    SuiteLevel::Smoke => Level::Smoke,
                    SuiteLevel::Full => Level::Full,
                },
                seed,
                only: criteria,
            };
            let run = run_suite(&opts);
            for o in &run.outcomes {
                eprintln!(
                    "criterion {}: {} ({:.1}s)",
                    o.id,
                    o.report.status,
                    o.elapsed.as_secs_f64()
                );
            }
            let code = run.summary.exit_code() as u8;
            Ok((to_value(&run.summary), code))
        }
    }
}

fn run_grape(cmd: GrapeCommand) -> Outcome {
    match cmd {
        GrapeCommand::Check {
            complex,
            variant,
            search,
        } => {
            let c = load_complex(&complex)?;
            Ok(verdict_json(&variant, &check_grape(&c, variant, search.options())))
        }
        GrapeCommand::Classify { complex } => {
            let c = load_complex(&complex)?;
            let v = GrapeVariant::StrongCombinatorial;
            match check_grape(&c, v, GrapeOptions::default()) {
                GrapeVerdict::Yes(cert) => {
                    let class = classify_strong(&c, &cert)?;
                    ok(json!({ "verdict": "yes", "class": class, "certificate": cert }))
                }
                other => Ok((verdict_json(&v, &other).0, 1)),
            }
        }
        GrapeCommand::VerifyCert {
            complex,
            cert,
            variant,
        } => {
            let c = load_complex(&complex)?;
            let tree: CertificateTree = serde_json::from_str(&read(&cert)?)?;
            let variant = variant
                .or_else(|| first_witness_variant(&tree))
                .unwrap_or(GrapeVariant::StrongCombinatorial);
            match verify_certificate(&c, variant, &tree) {
                Ok(()) => ok(json!({ "variant": variant, "valid": true })),
                Err(e) => Ok((
                    json!({ "variant": variant, "valid": false, "error": e.to_string() }),
                    1,
                )),
            }
        }
    }
}

fn run_verify(cmd: VerifyCommand) -> Outcome {
    match cmd {
        VerifyCommand::Forest { graph } => summary(verify_forest_theorem(&load_graph(&graph)?)?),
        VerifyCommand::Pfpm { digraph } => summary(verify_pfpm_theorem(&load_digraph(&digraph)?)?),
        VerifyCommand::Duality {
            complex,
            variant,
            search,
        } => {
            let c = load_complex(&complex)?;
            let r = verify_dual_invariance(&c, variant, search.options())?;
            summary(vec![VerificationReport::new(
                format!("dual invariance ({variant})"),
                to_value(&c),
                "yes",
                to_value(&r),
                r.status,
            )])
        }
        VerifyCommand::Cad { complex } => {
            let c = load_complex(&complex)?;
            let r = check_alexander_duality(&c);
            let status = if r.pass { Status::Pass } else { Status::Fail };
            let observed = json!({
                "homology": reduced_homology(&c),
                "dual_homology": reduced_homology(&c.alexander_dual()),
                "first_violation": r.first_violation,
            });
            summary(vec![VerificationReport::new(
                "combinatorial alexander duality",
                to_value(&c),
                "H̃_i(Γ) ≅ H̃^{|X|-i-3}(Γ*)",
                observed,
                status,
            )])
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok((value, code)) => {
            let text = serde_json::to_string(&value).expect("serializable output");
            // a closed pipe downstream is not our failure
            let _ = writeln!(std::io::stdout(), "{text}");
            ExitCode::from(code)
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
