fn main() {
    std::process::exit(frsim::cli::main());
}
