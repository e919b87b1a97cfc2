use clap::Parser;

use soliton_forge::cli::{execute, Cli, RunConfig};

fn main() {
    let cli = Cli::parse();
    std::process::exit(execute(&RunConfig::from(cli)));
}
