fn main() { std::process::exit(hdperc::cli::run()) }
