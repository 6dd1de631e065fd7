fn main() {
    std::process::exit(cyclic_steering::cli::run());
}
