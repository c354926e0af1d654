fn main() {
    std::process::exit(pivotlab::cli::main());
}
