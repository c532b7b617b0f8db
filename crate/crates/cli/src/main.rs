use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = dcfl_lab_cli::run_cli(std::env::args_os());
    let text = &outcome.report;
    if outcome.exit_code == 2 {
        eprint!("{text}");
    } else {
        // a closed pipe is not worth a panic
        let _ = std::io::stdout().write_all(text.as_bytes());
    }
    ExitCode::from(outcome.exit_code)
}
