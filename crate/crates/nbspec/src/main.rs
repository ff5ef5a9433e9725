fn main() {
    std::process::exit(nbspec::cli::run());
}
