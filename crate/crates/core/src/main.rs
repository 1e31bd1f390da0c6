fn main() {
    std::process::exit(qcong::cli::main_from_env());
}
