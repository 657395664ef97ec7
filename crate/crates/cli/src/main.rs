use clap::Parser;

fn main() {
    let cli = nori_cli::Cli::parse();
    std::process::exit(nori_cli::run(&cli));
}
