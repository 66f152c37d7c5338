fn main() {
    std::process::exit(sympdec_cli::main_with_args(std::env::args_os()));
}
