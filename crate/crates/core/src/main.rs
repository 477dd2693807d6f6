fn main() {
    std::process::exit(alcove::cli::run_cli(std::env::args_os()));
}
