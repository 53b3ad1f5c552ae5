//! The command-line front end driven programmatically.

fn main() {
    let args = std::env::args_os().skip(1);
    let mut argv: Vec<std::ffi::OsString> = vec!["hgap".into()];
    argv.extend(args);
    if argv.len() == 1 {
        argv.extend(["verify", "--suite", "identity", "--out", "target/hgap-example"].map(Into::into));
    }
    std::process::exit(harmonic_gaps::cli::run(argv));
}
