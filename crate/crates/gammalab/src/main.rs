use std::process::ExitCode;

fn main() -> ExitCode {
    gammalab::cli::run()
}
