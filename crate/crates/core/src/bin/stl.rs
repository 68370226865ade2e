fn main() {
    std::process::exit(stl_core::cli::run(std::env::args_os()));
}
