fn main() -> std::process::ExitCode {
    smallworld::cli::main()
}
