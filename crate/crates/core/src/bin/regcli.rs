fn main() {
    std::process::exit(landmark_interp::cli::run(std::env::args_os()));
}
