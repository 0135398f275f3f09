//! `Γ₀(n)`, its right cosets in `SL(2, Z)` and the permutation
//! representation `ρ` induced from the trivial representation.
//!
//! Two matrices lie in the same right coset `Γ₀(n) g` iff their bottom rows
//! agree in `P¹(Z/nZ)`. The coset key is the lexicographically least
//! `(u c mod n, u d mod n)` over units `u` of `Z/nZ`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::exact::{ext_gcd, gcd, IntMatrix2};
use crate::{Error, Result};

/// `g ∈ Γ₀(n)`: lower-left entry divisible by `n`. Requires `det g = 1`.
pub fn gamma0_contains(n: u32, g: &IntMatrix2) -> Result<bool> {
    if n == 0 {
        return Err(Error::BadLevel(0));
    }
    if g.det() != 1 {
        return Err(Error::NotInSl2(g.to_string()));
    }
    Ok(g.c().rem_euclid(n as i64) == 0)
}

type CosetKey = (i64, i64);

/// Right coset representatives `α_1, …, α_μ` of `Γ₀(n)\SL(2, Z)` with
/// `α_1 = I`, together with an O(1) coset lookup.
#[derive(Clone, Debug)]
pub struct CosetTable {
    n: u32,
    units: Vec<i64>,
    reps: Vec<IntMatrix2>,
    lookup: HashMap<CosetKey, usize>,
}

impl CosetTable {
    /// The canonical table: one representative per projective bottom row,
    /// chosen with the smallest `max(|a|,|b|,|c|,|d|)`, ties broken by
    /// `(a, b, c, d)`; `α_1 = I`; remaining cosets ordered by key.
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadLevel(0));
        }
        let modulus = n as i64;
        let units: Vec<i64> = (0..modulus).filter(|&u| gcd(u, modulus) == 1).collect();
        let mut table = Self {
            n,
            units,
            reps: Vec::new(),
            lookup: HashMap::new(),
        };

        let mut keys = Vec::new();
        for c in 0..modulus {
            for d in 0..modulus {
                if gcd(gcd(c, d), modulus) == 1 {
                    keys.push(table.key(c, d));
                }
            }
        }
        keys.sort_unstable();
        keys.dedup();

        let best = minimal_lifts(&table, keys.len());
        let identity_key = table.key(0, 1);
        for (idx, key) in keys.iter().enumerate() {
            let rep = if *key == identity_key { IntMatrix2::I } else { best[key] };
            table.reps.push(rep);
            table.lookup.insert(*key, idx);
        }
        debug_assert_eq!(table.reps[0], IntMatrix2::I);
        Ok(table)
    }

    /// A table over the same cosets with representatives supplied by the
    /// caller, in the caller's order.
    pub fn with_reps(n: u32, reps: Vec<IntMatrix2>) -> Result<Self> {
        let base = Self::new(n)?;
        let mut lookup = HashMap::new();
        for (idx, rep) in reps.iter().enumerate() {
            if rep.det() != 1 {
                return Err(Error::NotInSl2(rep.to_string()));
            }
            if lookup.insert(base.key(rep.c(), rep.d()), idx).is_some() {
                return Err(Error::Domain(format!("representative {rep} repeats a coset")));
            }
        }
        if lookup.len() != base.mu() {
            return Err(Error::Domain(format!(
                "expected {} coset representatives, got {}",
                base.mu(),
                lookup.len()
            )));
        }
        Ok(Self {
            n,
            units: base.units,
            reps,
            lookup,
        })
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    /// The index `μ_n = [SL(2, Z) : Γ₀(n)]`.
    pub fn mu(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[IntMatrix2] {
        &self.reps
    }

    pub fn rep(&self, j: usize) -> IntMatrix2 {
        self.reps[j]
    }

    fn key(&self, c: i64, d: i64) -> CosetKey {
        let n = self.n as i64;
        let (c, d) = (c.rem_euclid(n), d.rem_euclid(n));
        self.units
            .iter()
            .map(|&u| ((u * c) % n, (u * d) % n))
            .min()
            .expect("Z/nZ has at least one unit")
    }

    /// The unique `j` with `g ∈ Γ₀(n) α_j`. Matrices of determinant −1 are
    /// located in the same way, i.e. with respect to `Γ₀^±(n)`.
    pub fn coset_index(&self, g: &IntMatrix2) -> Result<usize> {
        if g.det().abs() != 1 {
            return Err(Error::NotUnimodular(g.to_string(), g.det()));
        }
        Ok(self.lookup[&self.key(g.c(), g.d())])
    }

    /// `ρ(g)` with entries `δ(α_i g α_j⁻¹ ∈ Γ₀(n))`.
    ///
    /// For `det g = −1` membership is taken in `Γ₀^±(n)` (determinant ±1,
    /// lower-left entry divisible by `n`), which keeps `ρ(g)` a permutation.
    pub fn rho(&self, g: &IntMatrix2) -> Result<PermutationMatrix> {
        let image = self
            .reps
            .iter()
            .map(|alpha| self.coset_index(&(*alpha * *g)))
            .collect::<Result<Vec<_>>>()?;
        Ok(PermutationMatrix { image })
    }
}

/// For every coset key, the lexicographically least
/// `(max_abs, a, b, c, d)` among `SL(2, Z)` matrices with that bottom row
/// class. The search bound doubles until every class has a candidate; the
/// enumeration below the bound is complete, so the minimum is exact.
fn minimal_lifts(table: &CosetTable, mu: usize) -> BTreeMap<CosetKey, IntMatrix2> {
    let order = |m: &IntMatrix2| (m.max_abs(), m.a(), m.b(), m.c(), m.d());
    let mut bound = 1i64;
    loop {
        let mut best: BTreeMap<CosetKey, IntMatrix2> = BTreeMap::new();
        for c in -bound..=bound {
            for d in -bound..=bound {
                if gcd(c, d) != 1 {
                    continue;
                }
                let key = table.key(c, d);
                // a d − b c = 1; general solution (x + t c, y + t d)
                let (_, x, y) = ext_gcd(d, -c);
                let step = if c != 0 { c } else { d };
                let base = if c != 0 { x } else { y };
                let centre = -base.div_euclid(step);
                let reach = bound / step.abs() + 2;
                for t in centre - reach..=centre + reach {
                    let m = IntMatrix2::new(x + t * c, y + t * d, c, d);
                    if m.max_abs() > bound as u64 {
                        continue;
                    }
                    best.entry(key)
                        .and_modify(|cur| {
                            if order(&m) < order(cur) {
                                *cur = m;
                            }
                        })
                        .or_insert(m);
                }
            }
        }
        if best.len() == mu {
            return best;
        }
        bound *= 2;
    }
}

/// A permutation matrix stored by rows: row `i` has its single one in
/// column `image[i]`. Indices are zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PermutationMatrix {
    image: Vec<usize>,
}

impl PermutationMatrix {
    pub fn identity(size: usize) -> Self {
        Self {
            image: (0..size).collect(),
        }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &j in &image {
            if j >= image.len() || std::mem::replace(&mut seen[j], true) {
                return Err(Error::Domain(format!("{image:?} is not a permutation")));
            }
        }
        Ok(Self { image })
    }

    pub fn size(&self) -> usize {
        self.image.len()
    }

    /// Column of the one in row `i`.
    pub fn column_of(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        u8::from(self.image[i] == j)
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// The matrix product `self · rhs`.
    pub fn compose(&self, rhs: &Self) -> Self {
        assert_eq!(self.size(), rhs.size());
        Self {
            image: self.image.iter().map(|&k| rhs.image[k]).collect(),
        }
    }

    /// `P · v`, i.e. `(P v)_i = v_{image[i]}`.
    pub fn apply<T: Clone>(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.size(), v.len());
        self.image.iter().map(|&k| v[k].clone()).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        (0..self.size())
            .map(|i| (0..self.size()).map(|j| self.entry(i, j)).collect())
            .collect()
    }
}

/// `χ_{mn,n}`: sends the index of each `Γ₀(mn)` coset `β_i` to the index of
/// the `Γ₀(n)` coset containing it.
pub fn coset_projection(m: u32, n: u32) -> Result<Vec<usize>> {
    if m == 0 || n == 0 {
        return Err(Error::BadLevel(0));
    }
    let fine = CosetTable::new(m.checked_mul(n).ok_or(Error::Overflow("level"))?)?;
    let coarse = CosetTable::new(n)?;
    fine.reps().iter().map(|beta| coarse.coset_index(beta)).collect()
}

/// Parses a word in the letters `T`, `S`, `T'` (and `I`) into the product
/// matrix, read left to right.
pub fn parse_word(word: &str) -> Result<IntMatrix2> {
    let mut out = IntMatrix2::I;
    let mut chars = word.chars().filter(|c| !c.is_whitespace()).peekable();
    while let Some(ch) = chars.next() {
        let letter = match ch {
            'T' if chars.peek() == Some(&'\'') => {
                chars.next();
                IntMatrix2::T_PRIME
            }
            'T' => IntMatrix2::T,
            'S' => IntMatrix2::S,
            'I' => IntMatrix2::I,
            _ => return Err(Error::Domain(format!("bad letter `{ch}` in word `{word}`"))),
        };
        out = out.checked_mul(&letter)?;
    }
    Ok(out)
}
