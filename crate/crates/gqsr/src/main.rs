fn main() {
    std::process::exit(gqsr::cli::main_with(std::env::args_os()));
}
