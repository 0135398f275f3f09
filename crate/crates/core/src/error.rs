use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("0/0 is not an extended rational")]
    ZeroOverZero,
    #[error("cannot parse `{0}` as an extended rational (expected p/q)")]
    ParseRational(String),
    #[error("cannot parse `{0}` as a matrix (expected a,b,c,d)")]
    ParseMatrix(String),
    #[error("matrix {0} is singular")]
    Singular(String),
    #[error("matrix {0} is not invertible over the integers (det = {1})")]
    NotUnimodular(String, i64),
    #[error("matrix {0} does not lie in SL(2,Z)")]
    NotInSl2(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("{0} is not in the domain of the left neighbor map")]
    NegativeInfinity(String),
    #[error("M(q) is only defined for rational 0 <= q < 1, got {0}")]
    OutsideUnitInterval(String),
    #[error("{0} is not prime")]
    NotPrime(i64),
    #[error("level must be positive, got {0}")]
    BadLevel(i64),
    #[error("Hecke index must be positive, got {0}")]
    BadIndex(i64),
    #[error("matrix {0} is not in X_{1}")]
    NotInXm(String, i64),
    #[error("Hecke operator T/U({m}) is undefined at level {n}: gcd(m, n) must be 1 or m")]
    BadDivisibility { m: i64, n: i64 },
    #[error("{0}")]
    Domain(String),
}
