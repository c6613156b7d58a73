fn main() {
    std::process::exit(ffwm::cli::main_with_args(std::env::args_os()));
}
