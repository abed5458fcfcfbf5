fn main() {
    std::process::exit(reliagame::cli::run(std::env::args_os()));
}
