use std::process::ExitCode;

fn main() -> ExitCode {
    aopt_subdata::cli::main_exit()
}
