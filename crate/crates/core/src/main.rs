fn main() {
    std::process::exit(permdensity::cli::main());
}
