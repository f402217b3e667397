fn main() {
    if let Err(e) = braidkit::cli::run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
