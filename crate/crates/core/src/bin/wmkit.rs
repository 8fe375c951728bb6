use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = wmkit::cli::run(std::env::args_os());
    print!("{}", outcome.report_text);
    let _ = std::io::stdout().flush();
    if !outcome.error_text.is_empty() {
        eprintln!("{}", outcome.error_text);
    }
    ExitCode::from(outcome.exit_code as u8)
}
