use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let (code, out) = hecke_core::workbench::run_command(std::env::args_os());
    let _ = if code == 2 {
        writeln!(std::io::stderr(), "{out}")
    } else {
        writeln!(std::io::stdout(), "{out}")
    };
    ExitCode::from(code as u8)
}
