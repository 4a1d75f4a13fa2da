fn main() {
    std::process::exit(maxcomm::cli::run());
}
