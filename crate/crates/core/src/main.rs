use std::process::ExitCode;

fn main() -> ExitCode {
    let result = cyclebound::cli::run(std::env::args_os());
    print!("{}", result.report);
    ExitCode::from(result.exit_code)
}
