fn main() {
    std::process::exit(yb_cli::run(std::env::args_os()));
}
