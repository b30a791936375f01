fn main() {
    std::process::exit(gapspec::cli::run(std::env::args_os()));
}
