fn main() {
    let args: Vec<String> = std::env::args().collect();
    let code = qcoh_cli::run(&args);
    std::process::exit(code);
}
