//! Drive the command-line layer in-process and print its JSON report.

use algebroid::cli::{execute, to_json, Cli};
use clap::Parser;

fn main() {
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/sqrt.json");
    let cli = Cli::parse_from(["algebroid", "--json-indent", "2", "integrate", fixture, "--path", "segment"]);
    let report = execute(&cli);
    println!("{}", to_json(&report.results, cli.json_indent));
    if let Some(err) = report.error {
        eprintln!("{}: {}", err.kind, err.message);
        std::process::exit(err.exit_code);
    }
}
