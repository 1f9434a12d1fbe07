fn main() {
    std::process::exit(e2spec::cli::run());
}
