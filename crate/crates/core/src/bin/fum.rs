use std::io::Write;

fn main() {
    let (code, out) = fum_core::cli::run(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(&out);
    let _ = stdout.flush();
    std::process::exit(code);
}
