use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ExtendedRational;
use crate::{Error, Result};

/// A 2×2 integer matrix `(a b; c d)` with its determinant cached at
/// construction.
///
/// Ordering is lexicographic in `(a, b, c, d)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix2 {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    det: i64,
}

fn det_of(a: i64, b: i64, c: i64, d: i64) -> Result<i64> {
    let det = a as i128 * d as i128 - b as i128 * c as i128;
    i64::try_from(det).map_err(|_| Error::Overflow("determinant"))
}

impl IntMatrix2 {
    pub const I: Self = Self {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
        det: 1,
    };
    pub const T: Self = Self {
        a: 1,
        b: 1,
        c: 0,
        d: 1,
        det: 1,
    };
    pub const S: Self = Self {
        a: 0,
        b: -1,
        c: 1,
        d: 0,
        det: 1,
    };
    /// `T′ = (1 0; 1 1)`.
    pub const T_PRIME: Self = Self {
        a: 1,
        b: 0,
        c: 1,
        d: 1,
        det: 1,
    };
    /// The reflection `(0 1; 1 0)` of determinant −1.
    pub const FLIP: Self = Self {
        a: 0,
        b: 1,
        c: 1,
        d: 0,
        det: -1,
    };

    /// # Panics
    ///
    /// If the determinant does not fit in an `i64`.
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::try_new(a, b, c, d).expect("IntMatrix2::new")
    }

    pub fn try_new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Ok(Self {
            a,
            b,
            c,
            d,
            det: det_of(a, b, c, d)?,
        })
    }

    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> i64 {
        self.b
    }
    pub fn c(&self) -> i64 {
        self.c
    }
    pub fn d(&self) -> i64 {
        self.d
    }
    pub fn det(&self) -> i64 {
        self.det
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn rows(&self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    /// `max(|a|, |b|, |c|, |d|)`.
    pub fn max_abs(&self) -> u64 {
        self.entries().iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries().iter().all(|&x| x >= 0)
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.c == 0
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let e = |x: i64, y: i64, z: i64, w: i64| -> Result<i64> {
            x.checked_mul(y)
                .zip(z.checked_mul(w))
                .and_then(|(p, q)| p.checked_add(q))
                .ok_or(Error::Overflow("matrix product"))
        };
        let a = e(self.a, rhs.a, self.b, rhs.c)?;
        let b = e(self.a, rhs.b, self.b, rhs.d)?;
        let c = e(self.c, rhs.a, self.d, rhs.c)?;
        let d = e(self.c, rhs.b, self.d, rhs.d)?;
        let det = self.det.checked_mul(rhs.det).ok_or(Error::Overflow("determinant"))?;
        Ok(Self { a, b, c, d, det })
    }

    /// The adjugate `(d −b; −c a)`, so that `M · adj(M) = det(M) · I`.
    pub fn adjugate(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
            det: self.det,
        }
    }

    /// Inverse of a matrix with determinant ±1.
    pub fn inverse_unimodular(&self) -> Result<Self> {
        match self.det {
            1 => Ok(self.adjugate()),
            -1 => Ok(-self.adjugate()),
            det => Err(Error::NotUnimodular(self.to_string(), det)),
        }
    }

    /// Divides every entry by `k`, failing unless all entries are divisible.
    pub(crate) fn exact_div(&self, k: i64) -> Option<Self> {
        if self.entries().iter().any(|x| x % k != 0) {
            return None;
        }
        Some(Self::new(self.a / k, self.b / k, self.c / k, self.d / k))
    }

    /// The Möbius image `(a r + b)/(c r + d)`, evaluated projectively so that
    /// `∞ ↦ a/c` and poles map to `±1/0` according to the sign of the
    /// numerator.
    pub fn moebius(&self, r: ExtendedRational) -> Result<ExtendedRational> {
        if self.det == 0 {
            return Err(Error::Singular(self.to_string()));
        }
        let (p, q) = (r.num() as i128, r.den() as i128);
        let num = self.a as i128 * p + self.b as i128 * q;
        let den = self.c as i128 * p + self.d as i128 * q;
        let g = gcd_i128(num, den);
        let (num, den) = (num / g, den / g);
        let num = i64::try_from(num).map_err(|_| Error::Overflow("Möbius image"))?;
        let den = i64::try_from(den).map_err(|_| Error::Overflow("Möbius image"))?;
        ExtendedRational::new(num, den)
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1) as i128
}

impl Mul for IntMatrix2 {
    type Output = IntMatrix2;

    /// # Panics
    ///
    /// On integer overflow. Use [`IntMatrix2::checked_mul`] to handle it.
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("IntMatrix2 multiplication")
    }
}

impl Neg for IntMatrix2 {
    type Output = IntMatrix2;

    fn neg(self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
            det: self.det,
        }
    }
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for IntMatrix2 {
    type Err = Error;

    /// Parses `a,b,c,d`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseMatrix(s.to_string());
        let v: Vec<i64> = s
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        match v[..] {
            [a, b, c, d] => Self::try_new(a, b, c, d),
            _ => Err(bad()),
        }
    }
}

impl Serialize for IntMatrix2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMatrix2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [[a, b], [c, d]] = <[[i64; 2]; 2]>::deserialize(deserializer)?;
        Self::try_new(a, b, c, d).map_err(serde::de::Error::custom)
    }
}
