fn main() {
    std::process::exit(gkm_cli::run(std::env::args_os()));
}
