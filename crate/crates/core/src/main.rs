use std::process::ExitCode;

use clap::Parser;
use sbp_core::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = std::io::BufWriter::new(std::io::stdout());
    let code = match run(&cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("sbp: {e}");
            2
        }
    };
    if let Err(e) = std::io::Write::flush(&mut out) {
        eprintln!("sbp: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code as u8)
}
