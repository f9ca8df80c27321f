fn main() -> std::process::ExitCode {
    rlk::cli::main()
}
