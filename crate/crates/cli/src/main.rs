use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = motivic_cli::run_args(std::env::args_os());
    // Output is assembled before anything is written, so a failed run
    // never leaves a partial table behind the error.
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
