use thiserror::Error;

/// Errors surfaced by the library. The CLI maps these onto exit codes:
/// config errors -> 2, data errors -> 3, numeric failures -> 4.
#[derive(Error, Debug)]
pub enum Error {
    #[error("domain violation in {what}: offending value {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("invalid argument for {what}: {detail}")]
    InvalidArgument { what: &'static str, detail: String },

    #[error("parse failure at line {line}: {detail}")]
    Parse { line: usize, detail: String },

    #[error("monotonicity violation at line {line}: {value} does not exceed {previous}")]
    Monotonicity {
        line: usize,
        value: f64,
        previous: f64,
    },

    #[error("empty zero file: {path}")]
    EmptyZeroFile { path: String },

    #[error("zero data does not cover [T, 2T] for T = {requested_t}; maximum usable T is {max_t}")]
    Coverage { requested_t: f64, max_t: f64 },

    #[error("empty window at T = {t}")]
    EmptyWindow { t: f64 },

    #[error("resource budget exceeded in {what}: needs {needed}, cap {cap}")]
    Budget {
        what: &'static str,
        needed: u64,
        cap: u64,
    },

    #[error("triple-sum band population {needed} exceeds budget {cap}; shrink the kernel support to about {suggested_support:.2}")]
    TripleBand {
        needed: u64,
        cap: u64,
        suggested_support: f64,
    },

    #[error("quadrature failed to converge in {what}: error estimate {estimate} above cap {cap} near {location}")]
    Quadrature {
        what: &'static str,
        estimate: f64,
        cap: f64,
        location: f64,
    },

    #[error("kernel decay too slow for banding: decay exponent {exponent}")]
    KernelDecay { exponent: f64 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Exit-code class used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidArgument { .. } | Error::Domain { .. } | Error::KernelDecay { .. } => 2,
            Error::Parse { .. }
            | Error::Monotonicity { .. }
            | Error::EmptyZeroFile { .. }
            | Error::Coverage { .. }
            | Error::EmptyWindow { .. }
            | Error::Io(_) => 3,
            Error::Budget { .. } | Error::TripleBand { .. } | Error::Quadrature { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
