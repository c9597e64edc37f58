use std::process::ExitCode;

use hamming_iso::cli;

fn main() -> ExitCode {
    let report = match cli::run(std::env::args_os()) {
        Ok(report) => report,
        Err(help) => help.exit(),
    };
    match &report.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &report.json) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(cli::EXIT_ERROR as u8);
            }
        }
        None => print!("{}", report.json),
    }
    ExitCode::from(report.code as u8)
}
