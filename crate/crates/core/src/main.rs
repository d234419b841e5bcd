use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let d = polybern::cli::cmd_dispatch(std::env::args().skip(1));
    let _ = std::io::stdout().write_all(d.stdout.as_bytes());
    let _ = std::io::stderr().write_all(d.stderr.as_bytes());
    ExitCode::from(d.status as u8)
}
