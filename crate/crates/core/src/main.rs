fn main() {
    std::process::exit(sigma_artin::cli::run(std::env::args_os()));
}
