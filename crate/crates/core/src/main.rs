use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use efc::butterfly::Butterfly;
use efc::certificate::{self, Certificate, GraphDescriptor};
use efc::constructions::bounds::known_bounds;
use efc::constructions::{bf2_nonexistence, construct_edge_forcing_with, ConstructionError};
use efc::constructions::{SearchParams, DEFAULT_SEED};
use efc::dot;
use efc::io::{self, load_graph};
use efc::reduction::build_gbar;
use efc::solver::{min_edge_forcing, min_zero_forcing, SearchMode, SolverOptions};

#[derive(Parser)]
#[command(
    name = "efc",
    version,
    about = "Zero forcing and edge forcing on graphs and butterfly networks"
)]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a generated graph as JSON (or DOT).
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Closure of a black set; exits 1 if some vertex stays white.
    Closure {
        #[arg(long)]
        graph: String,
        /// Comma-separated indices, or `[w,i]` labels for butterflies.
        #[arg(long)]
        black: String,
    },
    /// Membership check for a zero forcing or edge-forcing set.
    Check {
        kind: SetKind,
        #[arg(long)]
        graph: String,
        /// JSON file with the vertex or edge set.
        #[arg(long)]
        set: PathBuf,
    },
    /// Exact zero forcing or edge-forcing number.
    Solve {
        kind: NumberKind,
        #[arg(long)]
        graph: String,
        /// Worker threads for the edge-forcing search.
        #[arg(long, env = "EFC_THREADS", default_value_t = 1)]
        parallel: usize,
        /// Refuse graphs with more vertices than this.
        #[arg(long, default_value_t = SolverOptions::default().max_vertices)]
        max_n: usize,
        /// Refuse after this many candidates.
        #[arg(long, default_value_t = SolverOptions::default().max_candidates)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Mode::Pruned)]
        mode: Mode,
    },
    /// Edge-forcing set of BF(r) with its certificate.
    Construct {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Print the witness as DOT instead of the certificate.
        #[arg(long)]
        dot: bool,
    },
    /// Known bounds for the edge-forcing number of BF(r).
    Bounds {
        #[arg(long)]
        r: usize,
    },
    /// Emit the lifted graph; with --verify, check the number equivalence.
    Reduce {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        verify: bool,
    },
    /// Re-verify a certificate.
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
}

#[derive(Subcommand)]
enum Family {
    Butterfly {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SetKind {
    Zfs,
    Efs,
}

#[derive(Clone, Copy, ValueEnum)]
enum NumberKind {
    Zf,
    Ef,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Pruned,
    Exhaustive,
}

type Failure = Box<dyn std::error::Error>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((text, success)) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) if success => ExitCode::SUCCESS,
                Ok(()) => ExitCode::from(1),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(c: &Certificate) -> (String, bool) {
    (certificate::emit_certificate(c), c.holds)
}

fn run(command: Command) -> Result<(String, bool), Failure> {
    Ok(match command {
        Command::Generate {
            family: Family::Butterfly { r, dot },
        } => {
            let bf = Butterfly::new(r)?;
            let text = if dot {
                dot::butterfly_to_dot(&bf, &[])
            } else {
                io::graph_to_json(bf.graph())
            };
            (text, true)
        }
        Command::Closure { graph, black } => {
            let l = load_graph(&graph)?;
            let set = io::parse_vertex_list(&black, l.graph.vertex_count(), l.butterfly.as_ref())?;
            emit(&certificate::closure_certificate(l.descriptor, &l.graph, &set))
        }
        Command::Check { kind, graph, set } => {
            let l = load_graph(&graph)?;
            let text = io::read_file(&set)?;
            let cert = match kind {
                SetKind::Zfs => {
                    let vs = io::parse_vertex_set(&text)?;
                    if let Some(&v) = vs.iter().find(|&&v| v >= l.graph.vertex_count()) {
                        return Err(io::ParseError::VertexOutOfRange {
                            vertex: v,
                            n: l.graph.vertex_count(),
                        }
                        .into());
                    }
                    certificate::zfs_check_certificate(l.descriptor, &l.graph, &vs)
                }
                SetKind::Efs => {
                    let es = io::parse_edge_set(&text)?;
                    certificate::efs_check_certificate(l.descriptor, &l.graph, &es)
                }
            };
            emit(&cert)
        }
        Command::Solve {
            kind,
            graph,
            parallel,
            max_n,
            budget,
            mode,
        } => {
            let l = load_graph(&graph)?;
            let opts = SolverOptions {
                max_vertices: max_n,
                max_candidates: budget,
                threads: parallel.max(1),
                mode: match mode {
                    Mode::Pruned => SearchMode::ObstructionPruned,
                    Mode::Exhaustive => SearchMode::Exhaustive,
                },
            };
            match kind {
                NumberKind::Zf => {
                    let z = min_zero_forcing(&l.graph, &opts)?;
                    emit(&certificate::zf_number_certificate(l.descriptor, &l.graph, &z))
                }
                NumberKind::Ef => {
                    let v = min_edge_forcing(&l.graph, &opts)?;
                    let cert = certificate::edge_forcing_certificate(l.descriptor, &l.graph, &v, opts.threads);
                    (certificate::emit_certificate(&cert), v.value().is_some())
                }
            }
        }
        Command::Construct { r, seed, dot } => {
            let params = SearchParams {
                seed,
                ..SearchParams::default()
            };
            match construct_edge_forcing_with(r, &params) {
                Ok(c) => {
                    if dot {
                        let bf = Butterfly::new(r)?;
                        (dot::butterfly_to_dot(&bf, c.matching.edges()), true)
                    } else {
                        emit(&certificate::construction_certificate(&c))
                    }
                }
                Err(ConstructionError::Nonexistent) => {
                    let cert =
                        certificate::nonexistence_certificate(GraphDescriptor::Butterfly { r }, bf2_nonexistence()?);
                    (certificate::emit_certificate(&cert), false)
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Bounds { r } => emit(&certificate::bounds_certificate(known_bounds(r)?)),
        Command::Reduce { graph, verify } => {
            let l = load_graph(&graph)?;
            if verify {
                let opts = SolverOptions::default();
                emit(&certificate::reduction_certificate(l.descriptor, &l.graph, &opts)?)
            } else {
                (io::graph_to_json(&build_gbar(&l.graph).lifted), true)
            }
        }
        Command::Verify { cert } => {
            let v = certificate::verify_certificate(&io::read_file(&cert)?)?;
            for d in &v.diffs {
                eprintln!("mismatch: {d}");
            }
            (if v.ok() { "verified\n" } else { "FAILED\n" }.to_string(), v.ok())
        }
    })
}
