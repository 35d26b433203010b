use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use halin_core::alon_tarsi::count_eulerian;
use halin_core::graph::random_plane_tree;
use halin_core::io::{self, GraphInput};
use halin_core::matrix::{permanent_exact, permanent_mod};
use halin_core::{
    build_halin, certify, is_proper, solve, verify_certificate, Error, HalinKind, IntMatrix,
    Orientation, VertexId,
};

mod fuzz;

#[derive(Parser)]
#[command(name = "halin", about = "Certify and solve list total weightings of Halin graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random Halin graph.
    Gen {
        #[arg(long)]
        leaves: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "generalized")]
        kind: HalinKind,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build a permanent certificate for a Halin graph.
    Certify {
        graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a certificate against a graph.
    Verify { graph: PathBuf, certificate: PathBuf },
    /// Find a proper total weighting from lists, guided by a certificate.
    Solve {
        graph: PathBuf,
        lists: PathBuf,
        /// Certificate to use; built on the fly when omitted.
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Permanent of a matrix dump.
    Permanent {
        matrix: PathBuf,
        /// Prime modulus; exact arithmetic when omitted.
        #[arg(long)]
        modulus: Option<u64>,
    },
    /// Even and odd Eulerian sub-digraph counts of an orientation.
    AlonTarsi {
        graph: PathBuf,
        /// JSON list of [tail, head] arcs; edges point low to high when omitted.
        #[arg(long)]
        orientation: Option<PathBuf>,
    },
    /// Run generate, certify, verify and solve over many seeds.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        count: u64,
        /// Leaf-count range, `lo..hi` inclusive.
        #[arg(long, default_value = "3..8")]
        leaves: fuzz::LeafRange,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "generalized")]
        kind: HalinKind,
        #[arg(long, default_value_t = 10)]
        window: i64,
        /// Where a minimized failing instance is written.
        #[arg(long, default_value = "fuzz-reproducer.json")]
        reproducer: PathBuf,
    },
}

/// Exit codes: 0 ok, 1 verification or fuzz failure, 2 bad input, 3 scale guard.
enum Failure {
    Check(String),
    Input(String),
    Scale(String),
}

impl Failure {
    fn core(context: &Path, e: Error) -> Failure {
        match e {
            Error::ScaleGuard(_) | Error::TooLarge(_) => Failure::Scale(e.to_string()),
            _ => Failure::Input(format!("{}: {e}", context.display())),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Outcome {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_halin(path: &Path) -> Result<halin_core::HalinGraph, Failure> {
    match io::graph_from_json(&read(path)?).map_err(|e| Failure::core(path, e))? {
        GraphInput::Halin(h) => Ok(h),
        GraphInput::Plain(_) => Err(Failure::Input(format!(
            "{}: graph has no tree, a Halin graph is required",
            path.display()
        ))),
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Gen { leaves, seed, kind, output } => {
            let tree = random_plane_tree(leaves, kind == HalinKind::Generalized, seed)
                .map_err(|e| Failure::Input(e.to_string()))?;
            let h = build_halin(tree, kind).map_err(|e| Failure::Input(e.to_string()))?;
            emit(&io::halin_to_json(&h), output.as_deref())
        }
        Command::Certify { graph, output } => {
            let h = load_halin(&graph)?;
            let c = certify(&h).map_err(|e| Failure::core(&graph, e))?;
            let summary = format!("provenance: {}\npermanent: {}", c.provenance, c.permanent);
            emit(&io::certificate_to_json(&c), output.as_deref())?;
            if output.is_some() {
                println!("{summary}");
            } else {
                eprintln!("{summary}");
            }
            Ok(())
        }
        Command::Verify { graph, certificate } => {
            let g = io::graph_from_json(&read(&graph)?).map_err(|e| Failure::core(&graph, e))?;
            let c = io::certificate_from_json(&read(&certificate)?)
                .map_err(|e| Failure::core(&certificate, e))?;
            let report = verify_certificate(g.graph(), &c);
            match report.failure {
                None => {
                    println!("ok: permanent {}", c.permanent);
                    Ok(())
                }
                Some(f) => Err(Failure::Check(format!("{}: {}", f.as_str(), report.detail))),
            }
        }
        Command::Solve { graph, lists, certificate, output } => {
            let h = load_halin(&graph)?;
            let l = io::lists_from_json(&read(&lists)?).map_err(|e| Failure::core(&lists, e))?;
            let c = match certificate {
                Some(p) => io::certificate_from_json(&read(&p)?).map_err(|e| Failure::core(&p, e))?,
                None => certify(&h).map_err(|e| Failure::core(&graph, e))?,
            };
            let w = solve(h.graph(), &c, &l).map_err(|e| match e {
                Error::ScaleGuard(_) => Failure::Scale(e.to_string()),
                Error::InvalidCertificate(_) => Failure::Check(e.to_string()),
                _ => Failure::Input(e.to_string()),
            })?;
            if !is_proper(h.graph(), &w).map_err(|e| Failure::Check(e.to_string()))?.is_proper() {
                return Err(Failure::Check("solver returned an improper weighting".into()));
            }
            emit(&io::weighting_to_json(&w), output.as_deref())
        }
        Command::Permanent { matrix, modulus } => {
            let m: IntMatrix = read(&matrix)?.parse().map_err(|e| Failure::core(&matrix, e))?;
            match modulus {
                Some(p) => println!("{}", permanent_mod(&m, p).map_err(|e| Failure::core(&matrix, e))?),
                None => println!("{}", permanent_exact(&m).map_err(|e| Failure::core(&matrix, e))?),
            }
            Ok(())
        }
        Command::AlonTarsi { graph, orientation } => {
            let g = io::graph_from_json(&read(&graph)?).map_err(|e| Failure::core(&graph, e))?;
            let g = g.graph();
            let d = match orientation {
                Some(p) => {
                    let arcs: Vec<(VertexId, VertexId)> = serde_json::from_str(&read(&p)?)
                        .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
                    Orientation::from_arcs(g, &arcs).map_err(|e| Failure::core(&p, e))?
                }
                None => Orientation::canonical(g),
            };
            let c = count_eulerian(&d);
            println!("EE {}\nEO {}\ndifference {}", c.even_count, c.odd_count, c.difference());
            Ok(())
        }
        Command::Fuzz { count, leaves, seed, kind, window, reproducer } => {
            let config = fuzz::Config { count, leaves, seed, kind, window };
            match fuzz::run(&config) {
                None => {
                    println!("{count} instances passed");
                    Ok(())
                }
                Some(found) => {
                    let small = fuzz::minimize(&config, found);
                    emit(&small.to_json(), Some(&reproducer))?;
                    Err(Failure::Check(format!(
                        "{} (reproducer written to {})",
                        small.summary(),
                        reproducer.display()
                    )))
                }
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(m)) => {
            eprintln!("failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("input error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Scale(m)) => {
            eprintln!("{m}");
            ExitCode::from(3)
        }
    }
}
