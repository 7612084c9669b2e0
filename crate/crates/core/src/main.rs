fn main() {
    std::process::exit(newtonpoly::cli::main_with_args(std::env::args_os()));
}
