use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Ok(v) = std::env::var("SKEWBRACE_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .expect("global pool is set once");
            }
            _ => {
                eprintln!("error: SKEWBRACE_THREADS must be a positive integer, got `{v}`");
                return ExitCode::from(2);
            }
        }
    }
    let out = skewbrace_cli::run(std::env::args_os());
    // a closed pipe is not an error worth reporting
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
