use std::io::Write;

fn main() {
    let out = listopt::cli::parse_and_dispatch(std::env::args_os());
    let _ = std::io::stdout().write_all(&out.stdout);
    let _ = std::io::stderr().write_all(&out.stderr);
    std::process::exit(out.code);
}
