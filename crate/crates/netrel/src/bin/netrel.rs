use std::process::ExitCode;

fn main() -> ExitCode {
    netrel::cli::run(std::env::args_os())
}
