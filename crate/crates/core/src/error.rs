use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is not irreducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("polynomial is zero modulo {0}")]
    ZeroPolynomial(u64),
    #[error("element is zero")]
    ZeroElement,
    #[error("{n} does not divide the multiplicative group order {order}")]
    NotDivisor { n: u64, order: String },
    #[error("prime {q} divides the index of Z[theta] in order {order}")]
    UnsupportedPrime { order: String, q: u64 },
    #[error("valuation unsupported at {key}: prime is not unique above its rational prime")]
    UnsupportedValuation { key: String },
    #[error("unknown order label {0:?}")]
    UnknownOrder(String),
    #[error("bad prime key {0:?}")]
    BadPrimeKey(String),
    #[error("bad reduction at {0}")]
    BadReduction(String),
    #[error("characteristic 2 point counting is not supported for genus 2 curves")]
    CharacteristicTwo,
    #[error("singular reduction at {0}")]
    SingularReduction(String),
    #[error("Euler factor parity failure at {0}: point counts are inconsistent")]
    EulerParity(String),
    #[error("Euler factor (a1={a1}, a2={a2}, N={n}) is not RM-split over Z[sqrt 2]")]
    NotRmSplit { a1: i64, a2: i64, n: u64 },
    #[error("curve is singular")]
    SingularCurve,
    #[error("sextic is singular")]
    SingularSextic,
    #[error("I10 is zero")]
    ZeroI10,
    #[error("prime {l} divides {n}")]
    CharacteristicDividesNorm { l: u64, n: u64 },
    #[error("missing eigenvalue at {0}")]
    MissingEigenvalue(String),
    #[error("missing key {0} under the Galois permutation")]
    MissingPermutedKey(String),
    #[error("unsupported residual prime {p}: it may divide the index of Z[x]/(h) and no explicit residue map is given")]
    UnsupportedResidualPrime { p: u64 },
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("Weil bound violated at {key}: |{value}| > 2*sqrt({norm})")]
    WeilBound { key: String, value: String, norm: u64 },
    #[error("auxiliary prime {0} is not admissible for the family")]
    InadmissiblePrime(u64),
    #[error("reduction rule disagrees with the discriminant at pair ({a}, {b}) mod {q}")]
    ReductionRuleMismatch { q: u64, a: u64, b: u64 },
    #[error("auxiliary prime {q} lies under the level of packet {packet}")]
    LevelPrime { q: u64, packet: String },
    #[error("{0} needs external data that has not been supplied")]
    ExternalData(String),
    #[error("cannot factor {0}: larger than 128 bits")]
    FactorTooLarge(String),
    #[error("empty auxiliary prime list")]
    EmptyPrimeList,
    #[error("invalid sieve constraint: {0}")]
    InvalidConstraint(String),
    #[error("field of size {0} is too large to enumerate")]
    FieldTooLarge(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
