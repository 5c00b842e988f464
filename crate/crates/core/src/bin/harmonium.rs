use clap::Parser;
use harmonium::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
