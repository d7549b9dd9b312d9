fn main() {
    std::process::exit(eqcert::cli::run(std::env::args_os()));
}
