fn main() {
    std::process::exit(twistsha::cli::main());
}
