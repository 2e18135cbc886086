use std::process::ExitCode;

fn main() -> ExitCode {
    densest_cli::main_with(std::env::args_os())
}
