fn main() { std::process::exit(kcomb::cli::run(std::env::args())); }
