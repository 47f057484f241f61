use std::io::Write;

fn main() {
    let (code, out) = stokes_gauss::io_cli::run(std::env::args_os(), &mut std::io::stdin().lock());
    if code == stokes_gauss::io_cli::EXIT_USAGE && !out.trim_start().starts_with('{') {
        eprint!("{}", out);
    } else {
        let _ = std::io::stdout().write_all(out.as_bytes());
    }
    std::process::exit(code);
}
