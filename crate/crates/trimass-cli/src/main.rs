use std::process::ExitCode;

fn main() -> ExitCode {
    // die quietly when the read end of a pipe goes away (`trimass ... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    ExitCode::from(trimass_cli::run(std::env::args()) as u8)
}
