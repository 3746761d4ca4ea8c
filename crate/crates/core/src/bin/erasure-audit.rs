fn main() {
    std::process::exit(erasure_audit::cli::main());
}
