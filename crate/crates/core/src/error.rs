use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. Variant names are the error names
/// surfaced by the command-line tool.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    InvalidDegree,
    #[error("GF({p}^{m}) is larger than the supported 2^24 elements")]
    FieldTooLarge { p: u32, m: usize },
    #[error("modulus has degree {found}, expected {expected}")]
    ModulusDegree { expected: usize, found: usize },
    #[error("modulus is reducible over GF({p})")]
    RejectedModulus { p: u32 },
    #[error("no default polynomial for GF({p}^{m})")]
    NoDefaultPolynomial { p: u32, m: usize },
    #[error("GF({p}^{m}) has no element of order {n}")]
    OrderUnavailable { n: usize, p: u32, m: usize },
    #[error("residue of x has order {found}, expected {expected}")]
    RootOrderMismatch { expected: usize, found: u64 },
    #[error("subfield degree {d} does not divide extension degree {m}")]
    InvalidSubfield { d: usize, m: usize },
    #[error("gcd({n}, {q}) is not 1")]
    NotCoprime { n: usize, q: u64 },
    #[error("length {n} exceeds the supported maximum {max}")]
    LengthTooLarge { n: usize, max: usize },
    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,
    #[error("minimal polynomial coefficient outside the base field")]
    CoefficientLeak,
    #[error("set is not a union of cyclotomic cosets")]
    NotCosetClosed,
    #[error("defining set covers all of Z_n; the code is zero")]
    ImproperCode,
    #[error("shifted divisor (k = {k}) does not have a base-field inverse transform")]
    NotRational { k: usize },
    #[error("polynomial is not an irreducible factor of x^n - 1 over the chosen field")]
    NotIrreducible,
    #[error("search budget of {budget} candidates exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("spectra were taken with different roots of unity")]
    RootMismatch,
    #[error("alphabet size {0} is not supported (codes are over prime fields)")]
    UnsupportedAlphabet(u64),
    #[error("unknown table `{0}`")]
    UnknownTable(String),
    #[error("{0}")]
    InvalidInput(String),
}

impl Error {
    /// The variant name, used as a stable error code.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotPrime { .. } => "NotPrime",
            Error::InvalidDegree => "InvalidDegree",
            Error::FieldTooLarge { .. } => "FieldTooLarge",
            Error::ModulusDegree { .. } => "ModulusDegree",
            Error::RejectedModulus { .. } => "RejectedModulus",
            Error::NoDefaultPolynomial { .. } => "NoDefaultPolynomial",
            Error::OrderUnavailable { .. } => "OrderUnavailable",
            Error::RootOrderMismatch { .. } => "RootOrderMismatch",
            Error::InvalidSubfield { .. } => "InvalidSubfield",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::LengthTooLarge { .. } => "LengthTooLarge",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::CoefficientLeak => "CoefficientLeak",
            Error::NotCosetClosed => "NotCosetClosed",
            Error::ImproperCode => "ImproperCode",
            Error::NotRational { .. } => "NotRational",
            Error::NotIrreducible => "NotIrreducible",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::RootMismatch => "RootMismatch",
            Error::UnsupportedAlphabet { .. } => "UnsupportedAlphabet",
            Error::UnknownTable { .. } => "UnknownTable",
            Error::InvalidInput { .. } => "InvalidInput",
        }
    }
}
