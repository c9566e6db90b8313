use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = darboux::run(std::env::args_os());
    // Ignore broken pipes: the exit status still reports the outcome.
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(u8::try_from(out.code).unwrap_or(2))
}
