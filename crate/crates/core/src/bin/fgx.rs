use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Some(n) = std::env::var("FGX_WORKERS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let (code, text) = fgx::cli::main_with_args(std::env::args_os());
    // clap usage errors are plain text; everything else is a JSON report
    let _ = if code == 2 && !text.trim_start().starts_with('{') {
        writeln!(std::io::stderr(), "{text}")
    } else {
        writeln!(std::io::stdout(), "{text}")
    };
    ExitCode::from(code as u8)
}
