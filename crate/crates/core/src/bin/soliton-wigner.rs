fn main() {
    std::process::exit(soliton_wigner::cli::main_with_args(std::env::args_os()));
}
