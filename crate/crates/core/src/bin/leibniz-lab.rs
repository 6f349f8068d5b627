fn main() {
    std::process::exit(leibniz_lab::cli::run(std::env::args_os()));
}
