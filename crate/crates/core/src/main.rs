use std::io::Write;
use std::process::ExitCode;

use bwtlcp::cli::{run, Cli};
use bwtlcp::probe::CountingAllocator;
use clap::Parser;

#[global_allocator]
static GLOBAL: CountingAllocator = CountingAllocator;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = run(cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bwtlcp: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
