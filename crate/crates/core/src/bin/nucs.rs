use std::io::{self, Write};
use std::process::ExitCode;

use nucs::cli::{run, EXIT_USAGE};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();

    if let Ok(text) = std::env::var("NUCS_THREADS") {
        match text.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                if let Err(e) = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                {
                    eprintln!("error: NUCS_THREADS: {e}");
                    return ExitCode::from(1);
                }
            }
            _ => {
                eprintln!("error: NUCS_THREADS must be a positive integer, got '{text}'");
                return ExitCode::from(EXIT_USAGE as u8);
            }
        }
    }

    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = run(std::env::args_os(), &mut out, &mut io::stderr());
    if out.flush().is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}
