fn main() {
    std::process::exit(hprig::cli::run(std::env::args_os()));
}
