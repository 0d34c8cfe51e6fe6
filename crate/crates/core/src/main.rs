use std::io::{self, BufRead};

use clap::Parser;
use scenario_games::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let stdin = io::stdin();
    let mut input: Box<dyn BufRead> = Box::new(stdin.lock());
    let code = run(&cli, &mut input, &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
