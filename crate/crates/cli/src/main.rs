use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pathmodel_cli::model::{load_model, Guards};
use pathmodel_cli::suites::{parse_suites, run_suites, ALL_SUITES};

#[derive(Parser)]
#[command(name = "pathmodel", version, about = "Check path-type semantics over finite groupoid models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites against a model file.
    Check {
        #[arg(long)]
        model: PathBuf,
        /// Comma-separated subset of laws,a1,a2,normal,connection,j,kan (or "all").
        #[arg(long)]
        suites: Option<String>,
        #[arg(long, env = "PATHMODEL_MAX_OBJECTS")]
        max_objects: Option<usize>,
        #[arg(long, env = "PATHMODEL_MAX_MORPHISMS")]
        max_morphisms: Option<usize>,
        #[arg(long, env = "PATHMODEL_MAX_BOX_DIM")]
        max_box_dim: Option<usize>,
        /// Where to write the JSON report; stdout when absent.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        markdown: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let Command::Check {
        model,
        suites,
        max_objects,
        max_morphisms,
        max_box_dim,
        report,
        markdown,
    } = Cli::parse().command;
    let overrides = Guards {
        max_objects,
        max_morphisms,
        max_box_dim,
    };
    let m = match load_model(&model, &overrides) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let list = suites
        .or_else(|| m.file.suites.as_ref().map(|s| s.join(",")))
        .unwrap_or_else(|| ALL_SUITES.join(","));
    let selected = match parse_suites(&list) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let r = run_suites(&m, &selected);
    let json = r.to_json();
    let written = match &report {
        Some(p) => std::fs::write(p, &json),
        None => {
            print!("{json}");
            Ok(())
        }
    }
    .and_then(|_| markdown.map_or(Ok(()), |p| std::fs::write(p, r.to_markdown())));
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    for s in &r.suites {
        eprintln!("{:<10} {:?}", s.name, s.status);
    }
    ExitCode::from(r.exit_code() as u8)
}
