fn main() {
    std::process::exit(sigma_stab::cli::run());
}
