fn main() {
    std::process::exit(harmonic_gaps::cli::run(std::env::args_os()));
}
