fn main() {
    std::process::exit(uniform_tail::app::cli::main_with_args(std::env::args_os()));
}
