fn main() {
    std::process::exit(sigmagb::cli::main_entry());
}
