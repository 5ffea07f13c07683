use clap::Parser;
use jordan_cli::{run, Cli};

fn main() {
    std::process::exit(run(&Cli::parse()));
}
