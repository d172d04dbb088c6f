fn main() {
    std::process::exit(dqscore::cli::run(std::env::args_os()));
}
