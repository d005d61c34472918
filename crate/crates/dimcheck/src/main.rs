fn main() {
    std::process::exit(dimcheck::cli::run(std::env::args_os()));
}
