use clap::Parser;

fn main() {
    let cli = dlrwave::cli::Cli::parse();
    std::process::exit(dlrwave::cli::run(&cli));
}
