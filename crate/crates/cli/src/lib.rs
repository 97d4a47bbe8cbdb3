//! Command-line front end: evaluate objects, run verification suites and
//! write machine-readable reports.

pub mod complex;
pub mod error;
pub mod eval;
pub mod report;
pub mod settings;
pub mod suites;

pub use error::{CliError, CliResult};
pub use report::{Format, VerificationReport};
pub use settings::Settings;

/// Size the rayon pool from `THREADS` if set. Results do not depend on it.
pub fn configure_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Domain(format!("THREADS={v:?} is not a positive integer")))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Domain(format!("thread pool: {e}")))?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}
