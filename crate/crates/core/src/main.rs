fn main() -> std::process::ExitCode {
    altapprox::cli::run()
}
