fn main() {
    std::process::exit(foldobs::cli::run(std::env::args_os()));
}
