use clap::Parser;

fn main() {
    let cli = seqlc::cli::Cli::parse();
    std::process::exit(seqlc::cli::run(cli));
}
