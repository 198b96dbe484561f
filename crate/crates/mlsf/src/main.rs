fn main() {
    std::process::exit(mlsf::cli::run(std::env::args_os()));
}
