use clap::Parser;

fn main() {
    let cli = bwtex_service::cli::Cli::parse();
    if let Err(e) = bwtex_service::cli::run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
