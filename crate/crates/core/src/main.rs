fn main() {
    std::process::exit(angular_swkb::cli::run(std::env::args_os()));
}
