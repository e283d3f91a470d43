use std::io::Write;

use clap::Parser;
use knotfilt::cli::{execute, Cli};

fn main() {
    let cli = Cli::parse();
    let out = execute(&cli);
    if out.error {
        eprint!("{}", out.text);
    } else {
        let _ = std::io::stdout().write_all(out.text.as_bytes());
    }
    std::process::exit(out.code);
}
