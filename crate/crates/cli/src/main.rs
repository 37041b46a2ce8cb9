use clap::{CommandFactory, Parser};
use eislat_cli::{run, Cli, EXIT_ERROR};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                std::process::exit(0);
            }
            // the synopsis, whatever the error kind
            let usage = Cli::command().render_usage().to_string();
            if !e.to_string().contains(&usage) {
                eprintln!("\n{usage}");
            }
            std::process::exit(EXIT_ERROR);
        }
    };
    std::process::exit(run(&cli));
}
