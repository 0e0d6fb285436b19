use std::io::{self, IsTerminal};

fn main() {
    let color = std::env::var_os("NO_COLOR").is_none() && io::stdout().is_terminal();
    let code = bipturan::cli::run_with(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock(), color);
    std::process::exit(code);
}
