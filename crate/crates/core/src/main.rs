fn main() {
    std::process::exit(wellpol::cli::run(std::env::args_os()));
}
