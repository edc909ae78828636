fn main() {
    std::process::exit(frontal_kernel::cli::main_with_args(std::env::args_os()));
}
