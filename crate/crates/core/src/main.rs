fn main() {
    std::process::exit(sortnet::cli::run_from(std::env::args_os()));
}
