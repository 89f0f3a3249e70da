fn main() {
    std::process::exit(critlab::cli::run(std::env::args_os()));
}
