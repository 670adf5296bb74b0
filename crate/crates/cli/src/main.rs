use clap::Parser;

use oic_cli::args::Cli;

fn main() {
    let cli = Cli::parse();
    if let Err(e) = oic_cli::run(&cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
