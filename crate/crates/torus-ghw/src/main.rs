use std::process::ExitCode;

fn main() -> ExitCode {
    torus_ghw::cli::run()
}
