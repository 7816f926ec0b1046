use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mgspec::{execute, Command, ExperimentKind, Options};

/// Spectral engine for Laplacians on metric graphs with
/// projection/coupling vertex conditions.
#[derive(Parser)]
#[command(name = "mgspec", version, about)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Mesh width bound (default 1e-3, auto-coarsened at the DOF cap)
    #[arg(long = "h-max")]
    h_max: Option<f64>,
    /// Number of eigenvalues (default 5)
    #[arg(short, long)]
    k: Option<usize>,
    /// Truncation length for infinite edges (default 20·u_min)
    #[arg(long = "trunc")]
    t_trunc: Option<f64>,
    /// Output format
    #[arg(long, default_value = "text", value_parser = ["text", "csv"])]
    format: String,
    /// Dump assembled matrices in coordinate format into this directory
    #[arg(long = "dump-matrices")]
    dump_matrices: Option<PathBuf>,
    /// Write the report to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Check graph and condition invariants and report defects
    Validate {
        graph_file: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Compute the lowest eigenvalues of the graph Laplacian
    Spectrum {
        graph_file: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Certify the semiboundedness lower bound against the spectrum
    CertifyLowerBound {
        graph_file: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Verify the boundary Green's identity on random cubics
    CheckGreensIdentity {
        graph_file: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Print the projection/coupling form of every condition in the file
    Convert {
        graph_file: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Built-in parameter-sweep experiments
    Experiment {
        #[command(subcommand)]
        which: ExperimentCommand,
    },
}

#[derive(Subcommand)]
enum ExperimentCommand {
    /// Delta-coupled star against the decoupled Dirichlet limit
    DeltaCollapse {
        /// Coupling strength at the center
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        /// Star sizes, comma separated
        #[arg(long, default_value = "2,4,8,16,32", value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long = "leaf-length", default_value_t = 1.0)]
        leaf_length: f64,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Delta-prime-coupled star against the center-Neumann limit
    DeltaPrimeCollapse {
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value = "2,4,8,16,32", value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long = "leaf-length", default_value_t = 1.0)]
        leaf_length: f64,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Spectral invisibility of a free degree-2 vertex
    KirchhoffTransparency {
        /// The two segment lengths, comma separated
        #[arg(long, default_value = "1.0,1.0", value_delimiter = ',')]
        lengths: Vec<f64>,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Operator norms of the geometric bordered coupling truncations
    BoundedL {
        #[arg(long = "n-max", default_value_t = 64)]
        n_max: usize,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

fn to_options(opts: &CommonOpts) -> Options {
    Options {
        h_max: opts.h_max,
        k: opts.k,
        t_trunc: opts.t_trunc,
        csv: opts.format == "csv",
        dump_dir: opts.dump_matrices.clone(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, opts) = match cli.command {
        CliCommand::Validate { graph_file, opts } => (Command::Validate { file: graph_file }, opts),
        CliCommand::Spectrum { graph_file, opts } => (Command::Spectrum { file: graph_file }, opts),
        CliCommand::CertifyLowerBound { graph_file, opts } => {
            (Command::CertifyLowerBound { file: graph_file }, opts)
        }
        CliCommand::CheckGreensIdentity { graph_file, opts } => {
            (Command::CheckGreensIdentity { file: graph_file }, opts)
        }
        CliCommand::Convert { graph_file, opts } => (Command::Convert { file: graph_file }, opts),
        CliCommand::Experiment { which } => match which {
            ExperimentCommand::DeltaCollapse {
                alpha,
                sizes,
                leaf_length,
                opts,
            } => (
                Command::Experiment {
                    kind: ExperimentKind::DeltaCollapse {
                        alpha,
                        sizes,
                        leaf_length,
                    },
                },
                opts,
            ),
            ExperimentCommand::DeltaPrimeCollapse {
                alpha,
                sizes,
                leaf_length,
                opts,
            } => (
                Command::Experiment {
                    kind: ExperimentKind::DeltaPrimeCollapse {
                        alpha,
                        sizes,
                        leaf_length,
                    },
                },
                opts,
            ),
            ExperimentCommand::KirchhoffTransparency { lengths, opts } => {
                if lengths.len() != 2 {
                    eprintln!("error[UsageError]: --lengths needs exactly two values");
                    return ExitCode::from(2);
                }
                (
                    Command::Experiment {
                        kind: ExperimentKind::KirchhoffTransparency {
                            a: lengths[0],
                            b: lengths[1],
                        },
                    },
                    opts,
                )
            }
            ExperimentCommand::BoundedL { n_max, opts } => (
                Command::Experiment {
                    kind: ExperimentKind::BoundedL { n_max },
                },
                opts,
            ),
        },
    };

    let out_path = opts.out.clone();
    match execute(&command, &to_options(&opts)) {
        Ok(outcome) => {
            if let Some(path) = out_path {
                if let Err(e) = std::fs::write(&path, &outcome.report) {
                    eprintln!("error[IoError]: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", outcome.report);
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.category());
            ExitCode::from(2)
        }
    }
}
