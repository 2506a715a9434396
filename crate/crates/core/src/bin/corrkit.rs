use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use corrkit::cli::{self, RunOptions, RunReport, EXIT_INPUT};
use corrkit::{Error, Tolerance};

#[derive(Parser)]
#[command(name = "corrkit", version, about = "Verify twisted tensor products of finite-dimensional correspondences")]
struct Args {
    /// Residual tolerance for every check.
    #[arg(long, global = true, env = "CORRKIT_TOLERANCE", default_value_t = 1e-9)]
    tolerance: f64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized tasks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Run independent tasks on worker threads.
    #[arg(long, global = true)]
    parallel: bool,
    /// Record per-task wall-clock time (makes reports non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tasks of a spec file.
    Run { spec: PathBuf },
    /// Write one graph of a spec file as DOT.
    ExportDot {
        spec: PathBuf,
        graph: String,
        out_dot: PathBuf,
        /// Attach the labels of this labeling to the edges.
        #[arg(long)]
        labeling: Option<String>,
    },
    /// Run a built-in fixture bundle: skw, clifford or crossed-z2.
    Demo { name: String },
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Input { pointer: String::new(), message: format!("cannot read {}: {e}", path.display()) })
}

fn write_output(args: &Args, text: &str) -> Result<(), Error> {
    match &args.out {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Error::Input { pointer: String::new(), message: format!("cannot write {}: {e}", p.display()) }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(args: &Args, report: &RunReport) -> String {
    match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.to_json()).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => report.to_text(),
    }
}

fn input_failure(e: &Error) -> ExitCode {
    match e {
        Error::Input { pointer, message } if !pointer.is_empty() => eprintln!("error at {pointer}: {message}"),
        Error::Input { message, .. } => eprintln!("error: {message}"),
        other => eprintln!("error: {other}"),
    }
    ExitCode::from(EXIT_INPUT as u8)
}

fn main() -> ExitCode {
    let args = Args::parse();
    if !(args.tolerance.is_finite() && args.tolerance > 0.0) {
        return input_failure(&Error::Input { pointer: String::new(), message: "tolerance must be positive".into() });
    }
    let opts = RunOptions { tolerance: Tolerance(args.tolerance), seed: args.seed, parallel: args.parallel, timing: args.timing };
    let report = match &args.command {
        Command::Run { spec } => read(spec).and_then(|text| cli::run(&text, opts)),
        Command::Demo { name } => cli::demo(name, opts),
        Command::ExportDot { spec, graph, out_dot, labeling } => {
            let result = read(spec).and_then(|text| cli::export_dot(&text, graph, labeling.as_deref())).and_then(|dot| {
                std::fs::write(out_dot, dot).map_err(|e| Error::Input {
                    pointer: String::new(),
                    message: format!("cannot write {}: {e}", out_dot.display()),
                })
            });
            return match result {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => input_failure(&e),
            };
        }
    };
    match report {
        Ok(r) => {
            if let Err(e) = write_output(&args, &render(&args, &r)) {
                return input_failure(&e);
            }
            for t in r.tasks.iter().filter(|t| t.is_input_error()) {
                if let Err(e) = &t.outcome {
                    eprintln!("task {}: {e}", t.index);
                }
            }
            ExitCode::from(r.exit_code() as u8)
        }
        Err(e) => input_failure(&e),
    }
}
