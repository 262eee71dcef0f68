use clap::Parser;

fn main() -> std::process::ExitCode {
    cycloforge_cli::run(cycloforge_cli::Cli::parse())
}
