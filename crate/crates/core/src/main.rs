fn main() {
    std::process::exit(permideal::cli::run());
}
