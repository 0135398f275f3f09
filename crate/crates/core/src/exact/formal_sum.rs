use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::IntMatrix2;
use crate::{Error, Result};

/// A finite integer linear combination of 2×2 integer matrices, i.e. an
/// element of the group ring `Z[Mat_*(2, Z)]`.
///
/// Terms are kept merged, without zero coefficients, and sorted
/// lexicographically by `(a, b, c, d)`, so two equal sums always have
/// identical term lists.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct FormalSum {
    terms: BTreeMap<IntMatrix2, i64>,
}

impl FormalSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(m: IntMatrix2) -> Self {
        Self::from_terms([(1, m)])
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, IntMatrix2)>>(terms: I) -> Self {
        let mut sum = Self::zero();
        for (coeff, m) in terms {
            sum.add_term(coeff, m);
        }
        sum
    }

    /// Sum of the given matrices, each with coefficient one.
    pub fn from_matrices<I: IntoIterator<Item = IntMatrix2>>(matrices: I) -> Self {
        Self::from_terms(matrices.into_iter().map(|m| (1, m)))
    }

    pub fn add_term(&mut self, coeff: i64, m: IntMatrix2) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(m).or_insert(0);
        *entry = entry.checked_add(coeff).expect("FormalSum coefficient overflow");
        if *entry == 0 {
            self.terms.remove(&m);
        }
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl ExactSizeIterator<Item = (i64, IntMatrix2)> + '_ {
        self.terms.iter().map(|(m, c)| (*c, *m))
    }

    pub fn matrices(&self) -> impl ExactSizeIterator<Item = &IntMatrix2> + '_ {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &IntMatrix2) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Number of distinct matrices.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients, i.e. the size of the underlying multiset
    /// when every coefficient is positive.
    pub fn total_multiplicity(&self) -> i64 {
        self.terms.values().sum()
    }

    /// `Some(m)` when the sum is nonempty and every matrix has determinant `m`.
    pub fn stratum(&self) -> Option<i64> {
        let mut dets = self.terms.keys().map(IntMatrix2::det);
        let first = dets.next()?;
        dets.all(|d| d == first).then_some(first)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (c1, m1) in self.terms() {
            for (c2, m2) in rhs.terms() {
                let c = c1.checked_mul(c2).ok_or(Error::Overflow("formal sum coefficient"))?;
                out.add_term(c, m1.checked_mul(&m2)?);
            }
        }
        Ok(out)
    }

    /// Right multiplication of every term by `m`.
    pub fn mul_matrix(&self, m: &IntMatrix2) -> Self {
        Self::from_terms(self.terms().map(|(c, x)| (c, x * *m)))
    }
}

impl Add for &FormalSum {
    type Output = FormalSum;

    fn add(self, rhs: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        for (c, m) in rhs.terms() {
            out.add_term(c, m);
        }
        out
    }
}

impl Add for FormalSum {
    type Output = FormalSum;

    fn add(self, rhs: FormalSum) -> FormalSum {
        &self + &rhs
    }
}

impl Mul for &FormalSum {
    type Output = FormalSum;

    fn mul(self, rhs: &FormalSum) -> FormalSum {
        self.checked_mul(rhs).expect("FormalSum multiplication")
    }
}

impl Mul for FormalSum {
    type Output = FormalSum;

    fn mul(self, rhs: FormalSum) -> FormalSum {
        &self * &rhs
    }
}

impl FromIterator<IntMatrix2> for FormalSum {
    fn from_iter<I: IntoIterator<Item = IntMatrix2>>(iter: I) -> Self {
        Self::from_matrices(iter)
    }
}

#[derive(Serialize, Deserialize)]
struct Term {
    coeff: i64,
    matrix: IntMatrix2,
}

impl Serialize for FormalSum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms().map(|(coeff, matrix)| Term { coeff, matrix }))
    }
}

impl<'de> Deserialize<'de> for FormalSum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<Term>::deserialize(deserializer)?;
        Ok(Self::from_terms(terms.into_iter().map(|t| (t.coeff, t.matrix))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> IntMatrix2 {
        IntMatrix2::new(a, b, c, d)
    }

    #[test]
    fn merging() {
        let i = FormalSum::single(IntMatrix2::I);
        let two_i = &i + &i;
        assert_eq!(two_i.terms().collect::<Vec<_>>(), vec![(2, IntMatrix2::I)]);
        let cancel = FormalSum::from_terms([(3, IntMatrix2::T), (-3, IntMatrix2::T)]);
        assert!(cancel.is_empty());
        assert_eq!(cancel.stratum(), None);
    }

    #[test]
    fn strata_multiply() {
        let x = FormalSum::from_matrices([IntMatrix2::I, IntMatrix2::S, IntMatrix2::T]);
        let y = FormalSum::from_matrices([m(1, 0, 0, 2), m(1, 1, 0, 2), m(2, 0, 0, 1)]);
        let xy = &x * &y;
        assert_eq!(x.stratum(), Some(1));
        assert_eq!(y.stratum(), Some(2));
        assert_eq!(xy.stratum(), Some(2));
        assert!(xy.matrices().all(|b| b.det() == 2));
    }

    #[test]
    fn m_half_times_upper() {
        let m_half = FormalSum::from_matrices([IntMatrix2::I, m(2, -1, 1, 0)]);
        let a = FormalSum::single(m(1, 1, 0, 2));
        assert_eq!(&m_half * &a, FormalSum::from_matrices([m(1, 1, 0, 2), m(2, 0, 1, 1)]));
    }

    #[test]
    fn json_encoding() {
        let x = FormalSum::from_terms([(1, m(2, 0, 1, 1)), (2, m(1, 1, 0, 2))]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(
            s,
            r#"[{"coeff":2,"matrix":[[1,1],[0,2]]},{"coeff":1,"matrix":[[2,0],[1,1]]}]"#
        );
        assert_eq!(serde_json::from_str::<FormalSum>(&s).unwrap(), x);
    }

    fn small_sum() -> impl Strategy<Value = FormalSum> {
        proptest::collection::vec((-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3), 0..5)
            .prop_map(|v| FormalSum::from_terms(v.into_iter().map(|(k, a, b, c, d)| (k, m(a, b, c, d)))))
    }

    proptest! {
        #[test]
        fn canonical_form_is_order_independent(
            v in proptest::collection::vec((-3i64..=3, 0i64..3, 0i64..3, 0i64..3, 0i64..3), 0..12),
            seed in any::<u64>(),
        ) {
            let terms: Vec<_> = v.iter().map(|&(k, a, b, c, d)| (k, m(a, b, c, d))).collect();
            let mut shuffled = terms.clone();
            // deterministic shuffle from the seed
            let n = shuffled.len();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                shuffled.swap(i, (s >> 33) as usize % (i + 1));
            }
            let x = FormalSum::from_terms(terms);
            let y = FormalSum::from_terms(shuffled);
            prop_assert_eq!(x.terms().collect::<Vec<_>>(), y.terms().collect::<Vec<_>>());
            prop_assert!(x.terms().all(|(c, _)| c != 0));
        }

        #[test]
        fn ring_laws(x in small_sum(), y in small_sum(), z in small_sum()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
            prop_assert_eq!(&x + &y, &y + &x);
        }
    }
}
