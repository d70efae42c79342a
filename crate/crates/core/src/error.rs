use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator vanishes at the primitive {0}-th roots of unity")]
    DenominatorVanishes(u64),
    #[error("division by zero evaluating at root exponent {0}")]
    DivisionByZero(i64),
    #[error("profiles have different moduli ({0} vs {1})")]
    ModulusMismatch(u64, u64),
    #[error("modulus must be at least {min}, got {got}")]
    ModulusTooSmall { min: u64, got: u64 },
    #[error("index {0} vanishes modulo {1}")]
    IndexVanishes(i64, u64),
    #[error("relation index {0} is outside 1..{1}")]
    IndexOutOfRange(u64, u64),
    #[error("divisor chain {f} | {d} | {m} does not hold")]
    BadDivisorChain { f: u64, d: u64, m: u64 },
    #[error("{0} is not a prime dividing {1}")]
    NotPrimeDivisor(u64, u64),
    #[error("the principal character is not allowed here")]
    PrincipalCharacter,
    #[error("{0} and {1} are not coprime")]
    NotCoprime(i64, i64),
    #[error("slope numerator must be nonzero")]
    ZeroSlope,
    #[error("invalid slope {p}/{q}")]
    InvalidSlope { p: i64, q: i64 },
    #[error("{0} is even; no unique spin structure")]
    EvenOrder(i64),
    #[error("Spin^c index {i} out of range for order {p}")]
    SpinCOutOfRange { i: i64, p: i64 },
    #[error("plumbing weight {0} is not at most -2")]
    BadPlumbingWeight(i64),
    #[error("window {0} does not reach the stable range of the knot model")]
    WindowTooSmall(u64),
    #[error("tower height {0} leaves no reliable grading range")]
    HeightTooSmall(u64),
    #[error("mapping cone did not stabilize after {0} doublings")]
    NotStabilized(u32),
    #[error("unknown knot model `{0}`")]
    UnknownKnot(String),
    #[error("unknown obstruction `{0}`")]
    UnknownObstruction(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
