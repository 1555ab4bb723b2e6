use clap::Parser;
use semiloop::cli::{run, RunConfig, Status};

fn main() {
    let config = RunConfig::parse();
    match run(&config) {
        Ok(outcome) => {
            if config.out.is_none() {
                print!("{}", outcome.report);
            }
            std::process::exit(outcome.status as i32);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(Status::Invalid as i32);
        }
    }
}
