fn main() {
    std::process::exit(spinentropy::cli::run());
}
