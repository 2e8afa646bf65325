fn main() {
    let args: Vec<String> = std::env::args().collect();
    let (out, code) = dilatation::cli::main_with_output(&args);
    print!("{out}");
    std::process::exit(code);
}
