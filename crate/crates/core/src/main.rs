fn main() { std::process::exit(eshelby2d::cli::run(std::env::args_os())); }
