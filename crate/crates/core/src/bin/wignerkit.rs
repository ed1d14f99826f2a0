fn main() {
    std::process::exit(wignerkit::cli::main_with_env());
}
