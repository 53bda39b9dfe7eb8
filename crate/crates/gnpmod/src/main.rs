use std::process::ExitCode;

fn main() -> ExitCode {
    gnpmod::cli::main_with_args(std::env::args_os())
}
