use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use racg::cli::{run, Command};
use racg::ends::DisjointMode;
use racg::polytope::{build_polytope_p, PolytopeSpec};

#[derive(Parser)]
#[command(name = "racg", version, about = "Exact checks for a right-angled hyperbolic 5-polytope")]
struct Args {
    /// Polytope JSON file; defaults to the built-in 48-facet polytope.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write the JSON report to FILE, or to stdout when no file (or `-`) is given.
    #[arg(long, global = true, value_name = "FILE", num_args = 0..=1, default_missing_value = "-")]
    json: Option<PathBuf>,
    /// Worker threads for parallel searches.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the built-in polytope as JSON.
    GenP,
    /// Gram matrix and its off-diagonal values.
    Gram,
    CheckRightAngled,
    /// Compare mutual positions with the cube-diagram prediction.
    #[command(name = "verify-cube-diagram", alias = "verify-lemma32")]
    VerifyCubeDiagram,
    /// Ridge counts per facet.
    Ridges {
        #[arg(long)]
        facet: Option<String>,
    },
    Vertices,
    FiniteVolume,
    Symmetries,
    /// Check that symmetries preserve the facet classes.
    #[command(name = "verify-classes", alias = "verify-lemma33")]
    VerifyClasses,
    /// Maximal pairwise-disjoint facet sets up to symmetry.
    Ends {
        #[arg(long, default_value_t = DisjointMode::Strict)]
        mode: DisjointMode,
    },
    /// Local determination audit; without --remove, audits every maximal set.
    Audit {
        /// Comma-separated facet labels.
        #[arg(long, value_delimiter = ',')]
        remove: Option<Vec<String>>,
        #[arg(long, default_value_t = DisjointMode::Strict)]
        mode: DisjointMode,
    },
    Footprints,
    VerifyAll,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::GenP => Command::GenP,
            Cmd::Gram => Command::Gram,
            Cmd::CheckRightAngled => Command::CheckRightAngled,
            Cmd::VerifyCubeDiagram => Command::CubeCorrespondence,
            Cmd::Ridges { facet } => Command::Ridges { facet },
            Cmd::Vertices => Command::Vertices,
            Cmd::FiniteVolume => Command::FiniteVolume,
            Cmd::Symmetries => Command::Symmetries,
            Cmd::VerifyClasses => Command::ClassPreservation,
            Cmd::Ends { mode } => Command::Ends { mode },
            Cmd::Audit { remove, mode } => Command::Audit { remove, mode },
            Cmd::Footprints => Command::Footprints,
            Cmd::VerifyAll => Command::VerifyAll,
        }
    }
}

// A closed pipe (e.g. `| head`) is not an error worth a panic.
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(n) = args.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let p = match &args.input {
        Some(path) => match PolytopeSpec::load(path) {
            Ok(p) => p,
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => build_polytope_p(),
    };
    let gen_p = matches!(args.cmd, Cmd::GenP);
    let cmd = Command::from(args.cmd);
    match run(&cmd, &p) {
        Ok(report) => {
            match &args.json {
                Some(path) if path.as_os_str() != "-" => {
                    if let Err(e) = std::fs::write(path, report.to_json() + "\n") {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                    emit(&report.render());
                }
                Some(_) => emit(&(report.to_json() + "\n")),
                None if gen_p => emit(&(p.to_json_string() + "\n")),
                None => emit(&report.render()),
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
