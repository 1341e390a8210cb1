fn main() {
    std::process::exit(dante_flow::cli::main_with_args(std::env::args_os()));
}
