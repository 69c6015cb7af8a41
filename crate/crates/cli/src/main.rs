fn main() {
    std::process::exit(duel_cli::run_cli(std::env::args_os()));
}
