use std::io::{self, Write};
use std::process;

use clap::Parser;
use faber_cli::{run, Cli, RunConfig, EXIT_USAGE};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            process::exit(code);
        }
    };
    let config = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("verify: {e}");
            process::exit(EXIT_USAGE);
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let summary = match run(&config, &mut out) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("verify: output error: {e}");
            process::exit(EXIT_USAGE);
        }
    };
    let _ = out.flush();
    process::exit(summary.exit_code());
}
