fn main() {
    std::process::exit(flatjava::cli::main());
}
