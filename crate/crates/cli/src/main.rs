use clap::Parser;

fn main() {
    let cli = coverkit_cli::Cli::parse();
    std::process::exit(coverkit_cli::run(&cli));
}
