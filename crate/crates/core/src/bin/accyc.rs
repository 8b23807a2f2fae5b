fn main() {
    std::process::exit(ac_cyclic::cli::run(std::env::args_os()));
}
