fn main() {
    std::process::exit(automation_equilibrium::cli::cli_main(std::env::args_os()));
}
