fn main() {
    std::process::exit(nashcert::cli::main_with_args(std::env::args_os()));
}
