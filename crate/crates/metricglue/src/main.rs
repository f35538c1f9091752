//! The `metricglue` binary.
//!
//! Exit codes: 0 on success (all checks passed), 1 when a requested check
//! fails (invalid space, failed expectation, failed suite), 2 on input
//! errors (unreadable or malformed files, bad parameters). Reports go to
//! stdout, diagnostics to stderr.

use std::error::Error;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use metricglue::format::{
    load_glue_diagram, load_metric_space, load_space_diagram, map_doc, read_json, DistJson,
    GraphDoc, HomDoc, MorphismDoc, PairsDoc, PartitionDoc, SpaceDoc,
};
use metricglue::gen::DEFAULT_SEED;
use metricglue::render;
use metricglue::scenario::{run_scenario, ScenarioParams};
use metricglue::suite::{adjunction_case, all_suites, run_suite, SuiteReport, SUITE_NAMES};
use metricglue_core::diagram::colimit_expansivity_report;
use metricglue_core::gluing::{multiple_pushout, quotient};
use metricglue_core::graph::{classify, graph_diameter};
use metricglue_core::hom::{hom_coreflection, internal_hom, DEFAULT_BUDGET};
use metricglue_core::pathconvex::{
    convex_completion, eps_path_metric, midpoint_defect, missing_segment_pairs,
};
use metricglue_core::space::tensor;
use metricglue_core::{MetricSpace, SemiMetricSpace, DEFAULT_TOL};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "metricglue",
    version,
    about = "Finite metric spaces with possibly infinite distances: \
             gluing, quotients, colimits, path metrics, and the hom/tensor adjunction"
)]
struct Cli {
    /// Comparison tolerance (overrides the METRICGLUE_TOL environment
    /// variable; default 1e-9).
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for the randomized suites.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Search budget for contraction enumeration.
    #[arg(long, global = true)]
    budget: Option<u64>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a space file against the metric axioms.
    Validate {
        space: PathBuf,
        /// Permit distinct points at distance zero.
        #[arg(long)]
        semi: bool,
    },
    /// Quotient a space by a partition of its points.
    Quotient { space: PathBuf, partition: PathBuf },
    /// Glue arm spaces along a shared hub space.
    Pushout { diagram: PathBuf },
    /// Colimit of a diagram of spaces over an oriented graph.
    Colimit { diagram: PathBuf },
    /// Classify the underlying graph of a diagram file.
    Classify { graph: PathBuf },
    /// The space of contractions between two spaces.
    Hom {
        domain: PathBuf,
        codomain: PathBuf,
        /// Follow with the chain path metric at this bound.
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Tensor product (sum metric) of two spaces.
    Tensor { left: PathBuf, right: PathBuf },
    /// Verify the currying correspondence on concrete spaces.
    CurryCheck {
        domain: PathBuf,
        codomain: PathBuf,
        /// The space tensored onto the domain.
        #[arg(long, value_name = "SPACE")]
        with: PathBuf,
    },
    /// Chain path metric of a space at a bound.
    Pathmetric {
        space: PathBuf,
        #[arg(long)]
        eps: f64,
    },
    /// Midpoint-defect report for a space.
    Defect { space: PathBuf },
    /// Glue segments across defective pairs to restore midpoints.
    Convexify {
        space: PathBuf,
        /// Pair-set file; defaults to every pair missing a segment.
        #[arg(long)]
        pairs: Option<PathBuf>,
        /// Grid step of the glued segments.
        #[arg(long, default_value_t = 0.1)]
        step: f64,
    },
    /// Run a bundled self-checking scenario.
    Scenario {
        name: String,
        /// splice: number of junctions.
        #[arg(long)]
        levels: Option<usize>,
        /// nstr: comma-separated interval excesses.
        #[arg(long, value_delimiter = ',')]
        eps: Option<Vec<f64>>,
        /// nstr: segment grid step.
        #[arg(long)]
        step: Option<f64>,
        /// hyperbola-orbit: columns beyond the first.
        #[arg(long)]
        columns: Option<usize>,
    },
    /// Run a property suite by name, or "all".
    Proptest { suite: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn resolve_tol(flag: Option<f64>) -> Result<f64, String> {
    let v = match flag {
        Some(v) => v,
        None => match std::env::var("METRICGLUE_TOL") {
            Ok(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|_| format!("METRICGLUE_TOL is not a number: '{s}'"))?,
            Err(std::env::VarError::NotPresent) => return Ok(DEFAULT_TOL),
            Err(e) => return Err(format!("METRICGLUE_TOL: {e}")),
        },
    };
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(format!(
            "tolerance must be a finite non-negative number, got {v}"
        ))
    }
}

fn emit_json<T: Serialize>(v: &T) -> Result<(), Box<dyn Error>> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn Error>> {
    // Exit 1 marks a failed check, as opposed to an input error (exit 2).
    let fail = ExitCode::from(1);
    let tol = resolve_tol(cli.tol)?;
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    let json = cli.format == Format::Json;

    match cli.cmd {
        Cmd::Validate { space, semi } => {
            let doc: SpaceDoc = read_json(&space)?;
            let (points, dist) = doc.to_parts()?;
            let n = points.len();
            let outcome = if semi {
                SemiMetricSpace::new(points, dist, tol).map(drop)
            } else {
                MetricSpace::new(points, dist, tol).map(drop)
            };
            let kind = if semi { "semi-metric" } else { "metric" };
            match outcome {
                Ok(()) => {
                    if json {
                        emit_json(&json!({
                            "valid": true,
                            "points": n,
                            "violations": [],
                        }))?;
                    } else {
                        println!("valid {kind} space: {n} point(s)");
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(v) => {
                    if json {
                        let msgs: Vec<String> =
                            v.violations.iter().map(|x| x.to_string()).collect();
                        emit_json(&json!({
                            "valid": false,
                            "points": n,
                            "violations": msgs,
                            "truncated": v.truncated,
                        }))?;
                    } else {
                        println!("invalid {kind} space: {v}");
                    }
                    Ok(fail)
                }
            }
        }
        Cmd::Quotient { space, partition } => {
            let x = load_metric_space(&space, tol)?;
            let pdoc: PartitionDoc = read_json(&partition)?;
            let rel = pdoc.to_relation(x.as_semi())?;
            let q = quotient(x.as_semi(), &rel, tol)?;
            if json {
                emit_json(&json!({
                    "space": SpaceDoc::from_semi(q.space.as_semi()),
                    "map": map_doc(&q.map),
                }))?;
            } else {
                print!("{}", render::space_text(q.space.as_semi()));
                print!("{}", render::map_text(&q.map));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Pushout { diagram } => {
            let d = load_glue_diagram(&diagram, tol)?;
            let push = multiple_pushout(&d, tol)?;
            if json {
                emit_json(&json!({
                    "space": SpaceDoc::from_semi(push.space.as_semi()),
                    "arm_maps": push
                        .arm_maps
                        .iter()
                        .map(MorphismDoc::from_map)
                        .collect::<Vec<_>>(),
                    "hub_map": MorphismDoc::from_map(&push.hub_map),
                }))?;
            } else {
                print!("{}", render::space_text(push.space.as_semi()));
                for (i, m) in push.arm_maps.iter().enumerate() {
                    println!("arm {i}:");
                    print!("{}", render::map_text(m));
                }
                println!("hub:");
                print!("{}", render::map_text(&push.hub_map));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Colimit { diagram } => {
            let d = load_space_diagram(&diagram, tol)?;
            let (col, rep) = colimit_expansivity_report(&d, tol)?;
            if json {
                emit_json(&json!({
                    "space": SpaceDoc::from_semi(col.space.as_semi()),
                    "vertex_maps": col
                        .vertex_maps
                        .iter()
                        .map(MorphismDoc::from_map)
                        .collect::<Vec<_>>(),
                    "expansivity": {
                        "vertex_constants": rep
                            .vertex_constants
                            .iter()
                            .map(|&c| DistJson::from(c))
                            .collect::<Vec<_>>(),
                        "graph_diameter": rep.diameter,
                        "min_edge_expansivity": DistJson::from(rep.min_edge_expansivity),
                    },
                }))?;
            } else {
                print!("{}", render::space_text(col.space.as_semi()));
                for (i, m) in col.vertex_maps.iter().enumerate() {
                    println!("vertex {i}:");
                    print!("{}", render::map_text(m));
                }
                let constants: Vec<String> = rep
                    .vertex_constants
                    .iter()
                    .map(|&c| render::dist_str(c))
                    .collect();
                println!("vertex expansivity: {}", constants.join(", "));
                println!(
                    "graph diameter: {}",
                    rep.diameter
                        .map_or("infinite".to_string(), |d| d.to_string())
                );
                println!(
                    "min edge expansivity: {}",
                    render::dist_str(rep.min_edge_expansivity)
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Classify { graph } => {
            let gd: GraphDoc = read_json(&graph)?;
            let g = gd.to_graph()?;
            let class = classify(&g);
            let diameter = graph_diameter(&g);
            if json {
                emit_json(&json!({
                    "connected": class.connected,
                    "forest": class.forest,
                    "tree": class.tree,
                    "diameter": diameter,
                }))?;
            } else {
                println!("connected: {}", class.connected);
                println!("forest: {}", class.forest);
                println!("tree: {}", class.tree);
                println!(
                    "diameter: {}",
                    diameter.map_or("infinite".to_string(), |d| d.to_string())
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Hom {
            domain,
            codomain,
            eps,
        } => {
            let x = load_metric_space(&domain, tol)?;
            let y = load_metric_space(&codomain, tol)?;
            match eps {
                Some(e) => {
                    let space = hom_coreflection(&x, &y, e, tol, budget)?;
                    if json {
                        emit_json(&SpaceDoc::from_semi(space.as_semi()))?;
                    } else {
                        print!("{}", render::space_text(space.as_semi()));
                    }
                }
                None => {
                    let hom = internal_hom(&x, &y, tol, budget)?;
                    if json {
                        emit_json(&HomDoc::from_hom(&hom))?;
                    } else {
                        print!("{}", render::space_text(hom.base().as_semi()));
                        for (label, m) in hom.base().points().iter().zip(hom.maps()) {
                            let assign: Vec<String> = m
                                .source()
                                .points()
                                .iter()
                                .enumerate()
                                .map(|(i, p)| {
                                    format!(
                                        "{} -> {}",
                                        p.as_str(),
                                        m.target().point(m.apply_index(i)).as_str()
                                    )
                                })
                                .collect();
                            println!("{}: {}", label.as_str(), assign.join(", "));
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Tensor { left, right } => {
            let x = load_metric_space(&left, tol)?;
            let y = load_metric_space(&right, tol)?;
            let t = tensor(&x, &y)?;
            if json {
                emit_json(&SpaceDoc::from_semi(t.as_semi()))?;
            } else {
                print!("{}", render::space_text(t.as_semi()));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::CurryCheck {
            domain,
            codomain,
            with,
        } => {
            let x = load_metric_space(&domain, tol)?;
            let y = load_metric_space(&codomain, tol)?;
            let z = load_metric_space(&with, tol)?;
            let out = adjunction_case(&z, &x, &y, tol, budget)?;
            if json {
                emit_json(&json!({
                    "passed": out.passed(),
                    "from_tensor": out.from_tensor,
                    "to_hom": out.to_hom,
                    "checks": out.checks,
                    "failures": out.failures,
                }))?;
            } else {
                println!(
                    "{}: {} map(s) out of the tensor, {} into the hom, {} check(s)",
                    if out.passed() { "PASS" } else { "FAIL" },
                    out.from_tensor,
                    out.to_hom,
                    out.checks
                );
                for f in &out.failures {
                    println!("  {f}");
                }
            }
            Ok(if out.passed() {
                ExitCode::SUCCESS
            } else {
                fail
            })
        }
        Cmd::Pathmetric { space, eps } => {
            let x = load_metric_space(&space, tol)?;
            let p = eps_path_metric(&x, eps, tol)?;
            if json {
                emit_json(&SpaceDoc::from_semi(p.as_semi()))?;
            } else {
                print!("{}", render::space_text(p.as_semi()));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Defect { space } => {
            let x = load_metric_space(&space, tol)?;
            let report = midpoint_defect(&x);
            let missing = missing_segment_pairs(&x, tol);
            if json {
                let pairs: Vec<serde_json::Value> = report
                    .pairs
                    .iter()
                    .map(|p| {
                        json!({
                            "a": p.a.as_str(),
                            "b": p.b.as_str(),
                            "dist": DistJson::from(p.dist),
                            "defect": p.defect,
                        })
                    })
                    .collect();
                emit_json(&json!({
                    "pairs": pairs,
                    "max_defect": report.max_defect,
                    "missing": PairsDoc::from_pair_set(&missing),
                }))?;
            } else {
                for p in &report.pairs {
                    println!(
                        "({}, {}) at {}: defect {}",
                        p.a.as_str(),
                        p.b.as_str(),
                        render::dist_str(p.dist),
                        p.defect
                    );
                }
                println!("max defect: {}", report.max_defect);
                println!(
                    "{} pair(s) missing a segment at this tolerance",
                    missing.len()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Convexify { space, pairs, step } => {
            let x = load_metric_space(&space, tol)?;
            let set = match pairs {
                Some(p) => read_json::<PairsDoc>(&p)?.to_pair_set(&x)?,
                None => missing_segment_pairs(&x, tol),
            };
            let done = convex_completion(&x, &set, step, tol)?;
            let after = midpoint_defect(&done.space);
            if json {
                emit_json(&json!({
                    "space": SpaceDoc::from_semi(done.space.as_semi()),
                    "embedding": MorphismDoc::from_map(&done.embedding),
                    "max_defect_after": after.max_defect,
                }))?;
            } else {
                print!("{}", render::space_text(done.space.as_semi()));
                print!("{}", render::map_text(&done.embedding));
                println!("max defect after completion: {}", after.max_defect);
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Scenario {
            name,
            levels,
            eps,
            step,
            columns,
        } => {
            let mut params = ScenarioParams::default();
            if let Some(l) = levels {
                params.levels = l;
            }
            if let Some(e) = eps {
                params.eps = e;
            }
            if let Some(s) = step {
                params.step = s;
            }
            if let Some(c) = columns {
                params.columns = c;
            }
            let report = run_scenario(&name, &params, tol)?;
            if json {
                emit_json(&report)?;
            } else {
                print!("{}", render::scenario_text(&report));
            }
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                fail
            })
        }
        Cmd::Proptest { suite } => {
            let reports = if suite == "all" {
                all_suites(seed)
            } else {
                match run_suite(&suite, seed) {
                    Some(r) => vec![r],
                    None => {
                        return Err(format!(
                            "unknown suite '{suite}'; available: {}, all",
                            SUITE_NAMES.join(", ")
                        )
                        .into())
                    }
                }
            };
            let all_passed = reports.iter().all(SuiteReport::passed);
            if json {
                emit_json(&json!({ "suites": reports }))?;
            } else {
                for r in &reports {
                    print!("{}", render::suite_text(r));
                }
            }
            Ok(if all_passed { ExitCode::SUCCESS } else { fail })
        }
    }
}
