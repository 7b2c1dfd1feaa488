fn main() {
    std::process::exit(toric_core::cli::main_from_env());
}
