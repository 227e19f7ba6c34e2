use std::path::PathBuf;
use std::process::ExitCode;

use ambiskew::catalog;
use ambiskew::dsl::parse_spec;
use ambiskew::report::{reports_json, run_checks, Report, RunOptions};
use ambiskew::Bounds;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

/// Writes to stdout, exiting quietly when the reader has gone away.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0);
        }
    }};
}

macro_rules! out_raw {
    ($($t:tt)*) => {{
        use std::io::Write;
        if write!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0);
        }
    }};
}

/// Simplicity checks for ambiskew polynomial rings and generalized Weyl algebras.
#[derive(Parser)]
#[command(name = "ambiskew", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the check directives of a `.ask` file.
    Check {
        file: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// List, print or run the built-in examples.
    Catalog {
        /// Show or run only this entry.
        name: Option<String>,
        /// Run the checks instead of printing sources.
        #[arg(long)]
        run: bool,
        /// List entry names and descriptions.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        opts: RunArgs,
    },
    /// Evaluate an expression in a ring of a `.ask` file and print its normal form.
    Eval {
        file: PathBuf,
        #[arg(long)]
        expr: String,
        /// Ring or algebra to evaluate in (default: the last one declared).
        #[arg(long)]
        ring: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    m_max: Option<u64>,
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long)]
    period_max: Option<u64>,
    /// Include wall-clock times (makes output nondeterministic).
    #[arg(long)]
    timing: bool,
}

impl RunArgs {
    fn bounds(&self) -> Bounds {
        let mut b = Bounds::from_env();
        if let Some(m) = self.m_max {
            b.m_max = m;
        }
        if let Some(n) = self.n_max {
            b.n_max = n;
        }
        if let Some(p) = self.period_max {
            b.period_max = p;
        }
        b
    }

    fn options(&self) -> RunOptions {
        RunOptions { timing: self.timing }
    }
}

fn exit_for(reports: &[Report]) -> ExitCode {
    if reports.iter().all(Report::is_definite) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn print_text(reports: &[Report]) {
    for r in reports {
        out_raw!("{}", r.to_text());
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn read(file: &PathBuf) -> Result<String, ExitCode> {
    std::fs::read_to_string(file).map_err(|e| {
        eprintln!("{}: {e}", file.display());
        ExitCode::from(2)
    })
}

fn check(file: &PathBuf, args: &RunArgs) -> ExitCode {
    let text = match read(file) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let doc = match parse_spec(&text) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("{}:{e}", file.display());
            return ExitCode::from(2);
        }
    };
    let reports = run_checks(&doc, &args.bounds(), args.options());
    match args.format {
        Format::Json => out!("{}", pretty(&reports_json(&reports))),
        Format::Text => print_text(&reports),
    }
    exit_for(&reports)
}

fn catalog_cmd(name: Option<&str>, run: bool, list: bool, args: &RunArgs) -> ExitCode {
    let entries: Vec<&catalog::Entry> = match name {
        Some(n) => match catalog::get(n) {
            Some(e) => vec![e],
            None => {
                eprintln!("no catalog entry named '{n}'");
                return ExitCode::from(2);
            }
        },
        None => catalog::list().iter().collect(),
    };
    if list || (!run && name.is_none()) {
        for e in &entries {
            out!("{:<26} {}", e.name, e.description);
        }
        return ExitCode::SUCCESS;
    }
    if !run {
        out_raw!("{}", entries[0].source);
        return ExitCode::SUCCESS;
    }
    let bounds = args.bounds();
    let mut all = Vec::new();
    let mut out = Vec::new();
    for e in entries {
        let reports = match e.run(&bounds, args.options()) {
            Ok(r) => r,
            Err(err) => {
                eprintln!("{}:{err}", e.name);
                return ExitCode::from(2);
            }
        };
        match args.format {
            Format::Json => out.push(json!({"name": e.name, "reports": reports_json(&reports)["reports"]})),
            Format::Text => {
                out!("== {}", e.name);
                print_text(&reports);
            }
        }
        all.extend(reports);
    }
    if let Format::Json = args.format {
        out!("{}", pretty(&json!({"schema": ambiskew::report::SCHEMA, "entries": out})));
    }
    exit_for(&all)
}

fn eval(file: &PathBuf, expr: &str, ring: Option<&str>) -> ExitCode {
    let text = match read(file) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let result = parse_spec(&text).and_then(|doc| doc.eval_in(ring, expr));
    match result {
        Ok(s) => {
            out!("{s}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Check { file, run } => check(file, run),
        Command::Catalog { name, run, list, opts } => catalog_cmd(name.as_deref(), *run, *list, opts),
        Command::Eval { file, expr, ring } => eval(file, expr, ring.as_deref()),
    }
}
