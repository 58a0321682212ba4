fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let stdout = std::io::stdout();
    let code = solar::cli::run(&args, &mut stdout.lock(), &mut std::io::stderr());
    std::process::exit(code);
}
