fn main() {
    std::process::exit(wavaug::cli::run(std::env::args_os()));
}
