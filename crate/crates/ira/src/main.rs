fn main() {
    std::process::exit(ira::cli::run(std::env::args_os()));
}
