fn main() {
    std::process::exit(permsplit::cli::main());
}
