fn main() {
    std::process::exit(csx::cli::main_with_args(std::env::args_os()));
}
