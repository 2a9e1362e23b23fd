use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use opsdisc::commands::{self, GraphSpec, DEMOS};
use opsdisc::io::{state_set_to_json, ReportDocument};
use opsdisc::{Error, Result};

#[derive(Parser)]
#[command(
    name = "opsdisc",
    version,
    about = "Local distinguishability of orthogonal product states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Orthogonality tolerance; overrides the input document.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Orthogonality graph, relation vector, pattern and local ranks.
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Search for a discrimination protocol or an indistinguishability certificate.
    Synthesize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Per-party orthogonality-preserving solution spaces and verdicts.
    Certify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Re-run a serialized protocol on a state set.
    Simulate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        protocol: PathBuf,
    },
    /// Realize a graph as a state set.
    Generate {
        /// Edge list such as `1:1-4,1-5;2:2-3`, 1-based.
        #[arg(long, conflicts_with = "vector", required_unless_present = "vector")]
        graph: Option<String>,
        /// Per-party edge counts of a random graph, e.g. `9,1`.
        #[arg(long, value_delimiter = ',')]
        vector: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        states: usize,
        /// Number of parties for `--graph`.
        #[arg(long, default_value_t = 2)]
        parties: usize,
        /// Local dimensions, default 5 per party.
        #[arg(long, value_delimiter = ',')]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Reproduce a named construction.
    Demo {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(DEMOS))]
        name: String,
    },
}

fn render(doc: &ReportDocument, format: Format) -> String {
    match format {
        Format::Json => doc.to_json(),
        Format::Text => doc.to_text(),
    }
}

fn run(cli: &Cli) -> Result<String> {
    let tol = cli.tol;
    let doc = match &cli.command {
        Command::Classify { input } => commands::cmd_classify(input, tol)?,
        Command::Synthesize { input, depth } => commands::cmd_synthesize(input, *depth, tol)?,
        Command::Certify { input } => commands::cmd_certify(input, tol)?,
        Command::Simulate { input, protocol } => commands::cmd_simulate(input, protocol, tol)?,
        Command::Demo { name } => commands::cmd_demo(name)?,
        Command::Generate {
            graph,
            vector,
            states,
            parties,
            dims,
            seed,
        } => {
            let spec = match graph {
                Some(g) => GraphSpec::Edges {
                    states: *states,
                    parties: *parties,
                    spec: g.clone(),
                },
                None => GraphSpec::Counts {
                    states: *states,
                    counts: vector.clone(),
                },
            };
            let dims = (!dims.is_empty()).then_some(dims.as_slice());
            let set = commands::cmd_generate(&spec, *seed, dims, tol)?;
            return Ok(match cli.format {
                Format::Json => state_set_to_json(&set),
                Format::Text => {
                    let mut doc = commands::classify_set(&set)?;
                    doc.command = "generate".into();
                    doc.seed = Some(*seed);
                    doc.to_text()
                }
            });
        }
    };
    Ok(render(&doc, cli.format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| match &cli.output {
        Some(path) => {
            std::fs::write(path, out).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{out}");
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e) as u8)
        }
    }
}
