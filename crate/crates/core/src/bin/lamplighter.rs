fn main() {
    std::process::exit(lamplighter::cli::run());
}
