fn main() {
    std::process::exit(gf2k_roots::cli::run(std::env::args_os()));
}
