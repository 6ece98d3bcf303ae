fn main() {
    std::process::exit(sepnet::cli::run(std::env::args_os()));
}
