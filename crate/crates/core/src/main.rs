fn main() {
    std::process::exit(padecast::cli::run(std::env::args_os()));
}
