use std::process::ExitCode;

fn main() -> ExitCode {
    apxsum::cli::main_with_args(std::env::args_os())
}
