fn main() {
    std::process::exit(superband::cli::main_with_args(std::env::args_os()));
}
