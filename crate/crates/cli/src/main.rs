fn main() {
    std::process::exit(heavenly::run(std::env::args_os()));
}
