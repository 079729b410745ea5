fn main() {
    std::process::exit(entcount::cli::main());
}
