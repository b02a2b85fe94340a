fn main() {
    std::process::exit(belltropy::cli::run(std::env::args_os()));
}
