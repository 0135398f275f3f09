//! Farey sequences, the level function, left neighbor sequences and `M(q)`.

use serde::Serialize;

use crate::exact::{gcd, ExtendedRational, FormalSum, IntMatrix2};
use crate::{Error, Result};

/// The Farey sequence of level `n`: all reduced `u/v` with `|u| ≤ n` and
/// `0 ≤ v ≤ n`, in ascending order, including `−1/0` and `1/0`.
/// Level 0 is the fixed triple `(−1/0, 0/1, 1/0)`.
pub fn farey_sequence(n: u32) -> Vec<ExtendedRational> {
    if n == 0 {
        return vec![
            ExtendedRational::NEG_INFINITY,
            ExtendedRational::ZERO,
            ExtendedRational::INFINITY,
        ];
    }
    let n = n as i64;
    let mut seq = vec![ExtendedRational::NEG_INFINITY, ExtendedRational::INFINITY];
    for v in 1..=n {
        for u in -n..=n {
            if gcd(u, v) == 1 {
                seq.push(ExtendedRational::new(u, v).expect("v > 0"));
            }
        }
    }
    seq.sort_unstable();
    seq
}

/// `0` on `−1/0`, `0/1` and `1/0`; `max(|num|, den)` otherwise.
pub fn level(r: ExtendedRational) -> u32 {
    if r.is_infinite() || r.num() == 0 {
        return 0;
    }
    let lev = r.num().unsigned_abs().max(r.den() as u64);
    u32::try_from(lev).expect("level exceeds u32")
}

/// The largest element of `F_lev(q)` strictly below `q`.
pub fn left_neighbor(q: ExtendedRational) -> Result<ExtendedRational> {
    if q == ExtendedRational::NEG_INFINITY {
        return Err(Error::NegativeInfinity(q.to_string()));
    }
    let seq = farey_sequence(level(q));
    let idx = seq.partition_point(|r| *r < q);
    debug_assert_eq!(seq.get(idx), Some(&q), "q lies in the Farey sequence of its level");
    Ok(seq[idx - 1])
}

/// `LNS(q) = (LN^L(q), …, LN(q), q)`, ascending from `−1/0` to `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct LeftNeighborSequence {
    entries: Vec<ExtendedRational>,
}

impl LeftNeighborSequence {
    pub fn entries(&self) -> &[ExtendedRational] {
        &self.entries
    }

    /// The number `L` of left neighbor steps from `q` down to `−1/0`.
    pub fn steps(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn query(&self) -> ExtendedRational {
        *self.entries.last().expect("nonempty")
    }

    /// Consecutive pairs `(y_{l−1}, y_l)` for `l = 1..=L`.
    pub fn pairs(&self) -> impl Iterator<Item = (ExtendedRational, ExtendedRational)> + '_ {
        self.entries.windows(2).map(|w| (w[0], w[1]))
    }
}

pub fn lns(q: ExtendedRational) -> Result<LeftNeighborSequence> {
    let mut entries = vec![q];
    let mut cur = q;
    while cur != ExtendedRational::NEG_INFINITY {
        cur = left_neighbor(cur)?;
        entries.push(cur);
    }
    entries.reverse();
    Ok(LeftNeighborSequence { entries })
}

/// The summands `m_l = (b_l −a_l; b_{l−1} −a_{l−1})` of `M(q)`, where
/// `y_l = a_l/b_l` runs through `LNS(q)`. Each has determinant one.
pub fn m_of_q_terms(q: ExtendedRational) -> Result<Vec<IntMatrix2>> {
    if q.is_infinite() || q < ExtendedRational::ZERO || q >= ExtendedRational::ONE {
        return Err(Error::OutsideUnitInterval(q.to_string()));
    }
    Ok(lns(q)?
        .pairs()
        .map(|(prev, cur)| IntMatrix2::new(cur.den(), -cur.num(), prev.den(), -prev.num()))
        .collect())
}

/// `M(q) = Σ_l m_l` for rational `0 ≤ q < 1`.
pub fn m_of_q(q: ExtendedRational) -> Result<FormalSum> {
    Ok(FormalSum::from_matrices(m_of_q_terms(q)?))
}

/// True iff the denominators start at `0` and strictly increase.
pub fn is_minimal_partition(seq: &[ExtendedRational]) -> bool {
    seq.first().is_some_and(|y| y.den() == 0) && seq.windows(2).all(|w| w[0].den() < w[1].den())
}
