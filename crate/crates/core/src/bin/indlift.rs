use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use indlift::instances::InstanceRegistry;
use indlift::suite::{builtin_suite, list_registry, replay_fixture, run_suite, Format, SuiteConfig};

#[derive(Parser)]
#[command(name = "indlift", version, about = "Check independence relations and their lifts along functors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a shipped suite, or a suite config file.
    Run {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        scope_size: Option<usize>,
        #[arg(long)]
        completion_size: Option<usize>,
        #[arg(long)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a stored fixture.
    Replay { path: PathBuf },
    /// List categories, functors, relations and suites.
    List {
        #[arg(long, default_value = "text")]
        format: Format,
        /// Entries to leave out.
        #[arg(long, value_delimiter = ',')]
        disable: Vec<String>,
    },
}

fn load(suite: &str) -> indlift::Result<SuiteConfig> {
    let path = Path::new(suite);
    if path.extension().is_some_and(|e| e == "json") || path.exists() {
        SuiteConfig::from_json(&std::fs::read_to_string(path)?)
    } else {
        builtin_suite(suite)
    }
}

fn run(suite: &str, size: Option<usize>, completion: Option<usize>, format: Option<Format>, out: Option<PathBuf>) -> indlift::Result<i32> {
    let mut config = load(suite)?;
    if let Some(n) = size {
        config.scope.max_size = n;
    }
    if let Some(n) = completion {
        config.scope.completion_size = n;
    }
    let format = format.unwrap_or(config.format);
    let report = run_suite(&config)?;
    let text = match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match out.or(config.out) {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run { suite, scope_size, completion_size, format, out } => run(&suite, scope_size, completion_size, format, out),
        Command::Replay { path } => replay_fixture(&path).map(|v| {
            println!("{} {} {} reproduced", v.relation, v.axiom, v.status.tag());
            0
        }),
        Command::List { format, disable } => {
            print!("{}", list_registry(&InstanceRegistry::full(), &disable, format));
            Ok(0)
        }
    };
    match code {
        Ok(c) => ExitCode::from(c as u8),
        Err(e) => {
            eprintln!("indlift: {e}");
            ExitCode::from(if matches!(e, indlift::Error::Replay(_)) { 1 } else { 2 })
        }
    }
}
