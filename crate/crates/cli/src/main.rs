fn main() {
    std::process::exit(tl_cli::run(std::env::args_os()));
}
