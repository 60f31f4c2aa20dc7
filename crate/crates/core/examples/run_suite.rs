//! Runs a shipped suite, or a suite config given as a JSON file, and prints the
//! text report.

use indlift::suite::{builtin_suite, run_suite, SuiteConfig};

fn main() -> indlift::Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "bil-lift".into());
    let config = match std::fs::read_to_string(&arg) {
        Ok(text) => SuiteConfig::from_json(&text)?,
        Err(_) => builtin_suite(&arg)?,
    };
    let report = run_suite(&config)?;
    print!("{}", report.to_text());
    std::process::exit(report.exit_code());
}
