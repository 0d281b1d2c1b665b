use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(causalot_cli::run(std::env::args_os()))
}
