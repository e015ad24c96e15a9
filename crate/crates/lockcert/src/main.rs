fn main() {
    std::process::exit(lockcert::cli::run(std::env::args_os()));
}
