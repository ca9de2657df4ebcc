fn main() {
    std::process::exit(cap_core::cli::run_from_env());
}
