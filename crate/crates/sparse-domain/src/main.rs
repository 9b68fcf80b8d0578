use clap::Parser;

fn main() {
    let cli = sparse_domain::cli::Cli::parse();
    std::process::exit(sparse_domain::cli::run(cli));
}
