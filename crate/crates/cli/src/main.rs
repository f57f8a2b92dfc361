fn main() {
    std::process::exit(radiobook_cli::run(std::env::args_os()));
}
