fn main() {
    std::process::exit(boxpart::cli::run(std::env::args_os()));
}
