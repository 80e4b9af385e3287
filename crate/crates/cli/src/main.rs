fn main() {
    std::process::exit(tracecodes_cli::run(std::env::args_os()));
}
