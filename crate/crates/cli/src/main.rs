use clap::Parser;

fn main() {
    let cli = rfr_cli::args::Cli::parse_from(rfr_cli::args::normalize_args(std::env::args()));
    let stdin = std::io::stdin();
    let code = rfr_cli::run(
        &cli,
        &mut stdin.lock(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
