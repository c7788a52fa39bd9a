fn main() {
    std::process::exit(bipolariton::cli::main_with_args(std::env::args_os()));
}
