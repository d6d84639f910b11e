fn main() {
    std::process::exit(oz_cli::main_with_args(std::env::args_os()));
}
