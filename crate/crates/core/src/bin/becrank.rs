use std::io::Write;

fn main() {
    if let Err(e) = becrank::cli::init_threads_from_env() {
        eprintln!("error: {e}");
        std::process::exit(2);
    }
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = becrank::cli::run(std::env::args_os(), &mut out);
    let _ = out.flush();
    std::process::exit(code);
}
