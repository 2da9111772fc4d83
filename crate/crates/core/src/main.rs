fn main() {
    std::process::exit(lexcycle::cli::run_from_env());
}
