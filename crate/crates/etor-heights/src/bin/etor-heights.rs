fn main() {
    std::process::exit(etor_heights::cli::run());
}
