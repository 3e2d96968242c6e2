use std::io::Write;

fn main() {
    let mut out = String::new();
    let code = ivybound::cli::run(std::env::args_os(), &mut out);
    print!("{out}");
    std::io::stdout().flush().ok();
    std::process::exit(code);
}
