//! Exact computation with hyperbolic (all-roots-real) univariate polynomials:
//! sign patterns, moduli orders, constructive realization, and rigidity
//! verification.
//!
//! Everything is exact rational arithmetic. The subject matter is the signs
//! of coefficients and the relative order of root moduli, so there is no
//! floating point anywhere in the library.
//!
//! Module map:
//! - [`polycore`]: polynomials over Q, parsing/rendering, sign patterns;
//! - [`isolator`]: Sturm-based root isolation, hyperbolicity, moduli orders;
//! - [`realizer`]: building polynomials that realize a given sign pattern or
//!   moduli order, and witness pairs for non-rigid orders;
//! - [`rigidity`]: classification of moduli orders and the verification
//!   harnesses behind `hprig verify`;
//! - [`cli`]: the `hprig` command-line front end.

pub mod cli;
pub mod isolator;
pub mod polycore;
pub mod realizer;
pub mod rigidity;

pub use isolator::{IsoBox, Letter, ModuliOrder, ModuliOrderAE, Separator};
pub use polycore::{Poly, Rat, Sign, SignPattern};
pub use realizer::{RootList, Side, WitnessPair};
pub use rigidity::{Report, Theorem2Case, Verdict, VerdictStatus};

/// Library-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("empty input")]
    EmptyInput,
    #[error("zero leading coefficient")]
    ZeroLeadingCoefficient,
    #[error("zero constant term")]
    ZeroConstantTerm,
    #[error("zero coefficient in strict sign-pattern context")]
    ZeroCoefficient,
    #[error("negative leading coefficient (normalize explicitly first)")]
    NegativeLeadingCoefficient,
    #[error("pattern contains zeros where a strict sign pattern is required")]
    SpazInput,
    #[error("interval endpoint is a root")]
    EndpointIsRoot,
    #[error("polynomial is not hyperbolic")]
    NotHyperbolic,
    #[error("polynomial has a root at zero")]
    RootAtZero,
    #[error("zero modulus")]
    ZeroModulus,
    #[error("invalid isolating box")]
    InvalidBox,
    #[error("moduli order is neither alternating nor single-letter")]
    NotAlternating,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("validation failed after retries; this would contradict a proved statement: {0}")]
    Falsified(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
