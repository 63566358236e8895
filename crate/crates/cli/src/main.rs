use std::process::exit;

fn main() {
    exit(dit_cli::run(std::env::args_os()));
}
