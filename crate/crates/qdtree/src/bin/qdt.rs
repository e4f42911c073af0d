use std::process::ExitCode;

fn main() -> ExitCode {
    qdtree::cli::run()
}
