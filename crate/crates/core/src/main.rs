use clap::Parser;
use hyperdecomp::cli::{run, Cli, ExitStatus};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { ExitStatus::Usage.code() } else { 0 };
            std::process::exit(code);
        }
    };
    let status = run(cli, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(status.code());
}
