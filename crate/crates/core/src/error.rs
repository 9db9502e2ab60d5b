use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} = {value} is out of range [{min}, {max}]")]
    Range {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    #[error("invalid argument: {0}")]
    Argument(String),

    /// A job would need more memory than the configured budget allows.
    #[error(
        "resource budget exceeded for {job}: requires {} but only {} is available",
        fmt_bytes(*.required),
        fmt_bytes(*.available)
    )]
    Resource {
        job: String,
        required: u128,
        available: u128,
    },

    #[error("data error at {location}: {message}")]
    Data { location: String, message: String },

    /// An internal verification failed. This always points at a bug, never at bad input.
    #[error("invariant violated in {check}: {detail}")]
    InvariantViolation { check: String, detail: String },

    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn data(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Data {
            location: location.into(),
            message: message.into(),
        }
    }

    pub(crate) fn invariant(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::InvariantViolation {
            check: check.into(),
            detail: detail.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub(crate) fn fmt_bytes(bytes: u128) -> String {
    const UNITS: [&str; 5] = ["B", "KiB", "MiB", "GiB", "TiB"];
    let mut value = bytes as f64;
    let mut unit = 0;
    while value >= 1024.0 && unit + 1 < UNITS.len() {
        value /= 1024.0;
        unit += 1;
    }
    if unit == 0 {
        format!("{bytes} B")
    } else {
        format!("{value:.2} {} ({bytes} bytes)", UNITS[unit])
    }
}
