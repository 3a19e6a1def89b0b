fn main() {
    std::process::exit(fraccat::cli::run());
}
