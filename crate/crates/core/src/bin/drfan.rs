//! Command-line front end. Every command reads a graph document.
//!
//! Leg weights are the weighting's values on legs. For the twisted
//! canonical bundle `omega^k(-sum a_i x_i)` the weight of leg `x_i` is
//! `-a_i`.
//!
//! Exit codes: 0 on success, 1 when the input or a check is invalid, 2 when
//! a file cannot be read or parsed.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use drfan::cones::{cone_of_weighting, dual_cone_generators};
use drfan::fan::{build_fan, cone_catalog, slice_fan, verify_fan};
use drfan::graph::{contract, Graph};
use drfan::io::{emit_fan_json, emit_graph_json, parse_graph_json, IoError};
use drfan::oracle::oracle_cone_catalog;
use drfan::svg::render_slice_svg;
use drfan::weighting::{base_weighting, enumeration_bound, restrict_weighting, Weighting};
use num_traits::ToPrimitive;

#[derive(Parser)]
#[command(
    name = "drfan",
    version,
    about = "Fans of weighting cones of leg-weighted graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the graph invariants.
    Validate { graph: PathBuf },
    /// Print the genus of the graph.
    Genus { graph: PathBuf },
    /// Print the flows of the base weighting.
    BaseWeighting { graph: PathBuf },
    /// Build and verify the fan, printing it as JSON.
    Fan {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the rays of the fan.
    Rays { graph: PathBuf },
    /// Dual cone generators of a weighting given by its flows.
    Dual {
        graph: PathBuf,
        /// Comma-separated `edge=flow` pairs, one per edge.
        #[arg(long)]
        flows: String,
    },
    /// Contract edges, print the contracted graph, and compare cones.
    Contract {
        graph: PathBuf,
        /// Comma-separated edge ids.
        #[arg(long)]
        edges: String,
    },
    /// Write the slice of the fan as SVG (two or three edges).
    Slice {
        graph: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
    /// Compare the cone catalog with the brute-force reference.
    OracleCheck {
        graph: PathBuf,
        /// Defaults to twice the enumeration bound.
        #[arg(long)]
        box_radius: Option<i64>,
    },
}

enum Failure {
    Invalid(String),
    Parse(String),
}

type Outcome = Result<(), Failure>;

fn invalid(e: impl ToString) -> Failure {
    Failure::Invalid(e.to_string())
}

fn load(path: &Path) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    parse_graph_json(&text).map_err(|e| match e {
        IoError::Parse { .. } => Failure::Parse(e.to_string()),
        IoError::Validation(_) => Failure::Invalid(e.to_string()),
    })
}

fn write_out(path: &Path, text: &str) -> Outcome {
    std::fs::write(path, text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn edge_id(g: &Graph, label: &str) -> Result<usize, Failure> {
    g.edge_by_label(label.trim())
        .ok_or_else(|| Failure::Parse(format!("unknown edge {label:?}")))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { graph } => {
            let g = load(&graph)?;
            println!("ok");
            for v in g.unstable_vertices() {
                println!("note: vertex {} is unstable", g.labels().vertices[v]);
            }
        }
        Command::Genus { graph } => println!("{}", load(&graph)?.genus()),
        Command::BaseWeighting { graph } => {
            let g = load(&graph)?;
            let w = base_weighting(&g);
            for (label, f) in g.labels().edges.iter().zip(w.flows(&g)) {
                println!("{label}={f}");
            }
        }
        Command::Fan { graph, out } => {
            let g = load(&graph)?;
            let f = build_fan(&g).map_err(invalid)?;
            let report = verify_fan(&f);
            if let Some(v) = report.first_violation() {
                return Err(invalid(format!("fan check failed: {v}")));
            }
            let text = emit_fan_json(&f);
            match out {
                Some(path) => write_out(&path, &text)?,
                None => print!("{text}"),
            }
        }
        Command::Rays { graph } => {
            let g = load(&graph)?;
            let f = build_fan(&g).map_err(invalid)?;
            println!("# {}", g.labels().edges.join(" "));
            for r in f.rays() {
                let entries: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                println!("{}", entries.join(" "));
            }
        }
        Command::Dual { graph, flows } => {
            let g = load(&graph)?;
            let mut values = vec![None; g.num_edges()];
            for pair in flows.split(',').filter(|s| !s.trim().is_empty()) {
                let (label, value) = pair
                    .split_once('=')
                    .ok_or_else(|| Failure::Parse(format!("expected edge=flow, got {pair:?}")))?;
                let value: i64 = value
                    .trim()
                    .parse()
                    .map_err(|_| Failure::Parse(format!("bad flow {value:?}")))?;
                values[edge_id(&g, label)?] = Some(value);
            }
            let flows: Vec<i64> = values
                .iter()
                .enumerate()
                .map(|(e, v)| {
                    v.ok_or_else(|| {
                        Failure::Parse(format!("no flow for edge {}", g.labels().edges[e]))
                    })
                })
                .collect::<Result<_, _>>()?;
            let w = Weighting::from_flows(&g, &flows).map_err(invalid)?;
            let gens = dual_cone_generators(&g, &w);
            println!("# {}", g.labels().edges.join(" "));
            for v in &gens.vectors {
                let entries: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                println!("{}", entries.join(" "));
            }
            let agrees = gens.cone(g.num_edges()) == cone_of_weighting(&g, &w).polar_dual();
            println!("spans the dual cone: {agrees}");
            if !agrees {
                return Err(invalid("generators do not span the dual cone"));
            }
        }
        Command::Contract { graph, edges } => {
            let g = load(&graph)?;
            let set: BTreeSet<usize> = edges
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|l| edge_id(&g, l))
                .collect::<Result<_, _>>()?;
            let c = contract(&g, &set).map_err(invalid)?;
            print!("{}", emit_graph_json(&c.contracted));
            let w = base_weighting(&g);
            let res = restrict_weighting(&w, &c);
            let padded =
                cone_of_weighting(&c.contracted, &res).embed(g.num_edges(), &c.surviving_edges());
            let inside = padded.is_subset_of(&cone_of_weighting(&g, &w));
            eprintln!("restricted base weighting cone lies in the original cone: {inside}");
            if !inside {
                return Err(invalid("contraction compatibility failed"));
            }
        }
        Command::Slice { graph, svg } => {
            let g = load(&graph)?;
            let f = build_fan(&g).map_err(invalid)?;
            let slice = slice_fan(&f).map_err(invalid)?;
            write_out(&svg, &render_slice_svg(&slice).map_err(invalid)?)?;
        }
        Command::OracleCheck { graph, box_radius } => {
            let g = load(&graph)?;
            let bound = enumeration_bound(&g, &base_weighting(&g));
            let radius = match box_radius {
                Some(r) => r,
                None => (bound * 2u32)
                    .to_i64()
                    .ok_or_else(|| invalid("enumeration bound too large"))?,
            };
            let oracle = oracle_cone_catalog(&g, radius).map_err(invalid)?;
            let catalog = cone_catalog(&g).map_err(invalid)?;
            let ours: BTreeSet<_> = catalog.keys().map(|k| k.rays.clone()).collect();
            println!(
                "catalog: {} cones, reference: {} cones",
                ours.len(),
                oracle.len()
            );
            if ours != oracle {
                return Err(invalid("catalogs differ"));
            }
            println!("agree");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
