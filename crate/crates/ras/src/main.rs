use std::io;
use std::panic;
use std::process::ExitCode;

use ras::cli::{run, EXIT_INTERNAL};

fn main() -> ExitCode {
    let status = panic::catch_unwind(|| {
        let (mut out, mut err) = (io::stdout().lock(), io::stderr().lock());
        run(std::env::args_os(), &mut out, &mut err)
    })
    .unwrap_or(EXIT_INTERNAL);
    ExitCode::from(status as u8)
}
