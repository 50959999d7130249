use clap::Parser;

fn main() {
    let cli = frobcat::Cli::parse();
    std::process::exit(frobcat::main_with(&cli));
}
