use std::io::Write;

fn main() {
    let outcome = hecke_core::cli::run(std::env::args_os());
    let mut out = std::io::stdout().lock();
    // a closed pipe is not worth a panic
    let _ = out.write_all(outcome.stdout.as_bytes());
    let _ = out.flush();
    std::process::exit(outcome.code);
}
