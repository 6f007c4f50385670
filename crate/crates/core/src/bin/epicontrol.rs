fn main() {
    std::process::exit(epicontrol::cli::main_with_args(std::env::args_os()));
}
