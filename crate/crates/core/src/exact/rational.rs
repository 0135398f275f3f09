use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gcd;
use crate::{Error, Result};

/// A rational number `num/den` in lowest terms with `den ≥ 0`, extended by
/// the two signed infinities `−1/0` and `1/0`.
///
/// Ordering is total: `−1/0` lies below every finite value and `1/0` above.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtendedRational {
    num: i64,
    den: i64,
}

impl ExtendedRational {
    pub const NEG_INFINITY: Self = Self { num: -1, den: 0 };
    pub const INFINITY: Self = Self { num: 1, den: 0 };
    pub const ZERO: Self = Self { num: 0, den: 1 };
    pub const ONE: Self = Self { num: 1, den: 1 };

    /// Reduces `num/den` to lowest terms with a nonnegative denominator.
    /// `a/0` becomes `sign(a)/0`; `0/0` is rejected.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if num == 0 && den == 0 {
            return Err(Error::ZeroOverZero);
        }
        if den == 0 {
            return Ok(Self {
                num: num.signum(),
                den: 0,
            });
        }
        let g = gcd(num, den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = num.checked_neg().ok_or(Error::Overflow("rational normalization"))?;
            den = -den;
        }
        Ok(Self { num, den })
    }

    pub fn integer(n: i64) -> Self {
        Self { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    pub fn to_f64(&self) -> f64 {
        if self.den == 0 {
            if self.num > 0 {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            }
        } else {
            self.num as f64 / self.den as f64
        }
    }
}

impl Ord for ExtendedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.den, other.den) {
            (0, 0) => self.num.cmp(&other.num),
            (0, _) => self.num.cmp(&0),
            (_, 0) => 0.cmp(&other.num),
            _ => {
                let lhs = self.num as i128 * other.den as i128;
                let rhs = other.num as i128 * self.den as i128;
                lhs.cmp(&rhs)
            }
        }
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExtendedRational {
    type Err = Error;

    /// Accepts `p/q` or a bare integer `p`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRational(s.to_string());
        let t = s.trim();
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (t, "1"),
        };
        let p: i64 = p.parse().map_err(|_| bad())?;
        let q: i64 = q.parse().map_err(|_| bad())?;
        Self::new(p, q)
    }
}

impl Serialize for ExtendedRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtendedRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
