fn main() {
    std::process::exit(gasket::cli::run_from(std::env::args_os()));
}
