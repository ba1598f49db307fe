fn main() {
    std::process::exit(qdeform_cli::run(std::env::args_os()));
}
