use clap::Parser;
use kreinkit::error::EXIT_IO;

fn main() {
    let cli = match kreinkit::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Help and version requests are not errors.
            std::process::exit(if e.use_stderr() { EXIT_IO } else { 0 });
        }
    };
    std::process::exit(kreinkit::run(cli));
}
