//! Hecke sums as elements of `R_m`, the coset maps `σ_g` and `φ_A`, and the
//! Hecke operator matrices acting on (vector-valued) period functions.

use rayon::prelude::*;
use serde::Serialize;

use crate::congruence::CosetTable;
use crate::exact::{ext_gcd, gcd, ExtendedRational, FormalSum, IntMatrix2};
use crate::farey::m_of_q_terms;
use crate::{Error, Result};

pub fn is_prime(p: i64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| p % k != 0)
}

fn check_index(m: i64) -> Result<()> {
    if m < 1 {
        return Err(Error::BadIndex(m));
    }
    Ok(())
}

/// `X_m`: all `(a b; 0 d)` with `ad = m`, `a, d > 0` and `0 ≤ b < d`, in
/// canonical order. Its size is the divisor sum `σ(m)`.
pub fn gen_xm(m: i64) -> Result<Vec<IntMatrix2>> {
    check_index(m)?;
    let mut out = Vec::new();
    for a in (1..=m).filter(|a| m % a == 0) {
        let d = m / a;
        out.extend((0..d).map(|b| IntMatrix2::new(a, b, 0, d)));
    }
    out.sort_unstable();
    Ok(out)
}

pub fn is_in_xm(a: &IntMatrix2) -> bool {
    a.c() == 0 && a.a() > 0 && a.d() > 0 && (0..a.d()).contains(&a.b())
}

/// `T(p) = Σ_{A ∈ X_p} A` for prime `p`.
pub fn t_of_p(p: i64) -> Result<FormalSum> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(FormalSum::from_matrices(gen_xm(p)?))
}

/// `U(q) = Σ_{0 ≤ b < q} (1 b; 0 q)` for prime `q`.
pub fn u_of_q(q: i64) -> Result<FormalSum> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    Ok((0..q).map(|b| IntMatrix2::new(1, b, 0, q)).collect())
}

/// `Σ_{A ∈ X_m} A`, the Hecke operator on level one cusp forms.
pub fn scalar_hecke_sum(m: i64) -> Result<FormalSum> {
    Ok(FormalSum::from_matrices(gen_xm(m)?))
}

/// Reduces a matrix of positive determinant `m` to the unique element of
/// `X_m` in its left coset `SL(2, Z) · x`.
pub fn reduce_to_xm(x: &IntMatrix2) -> Result<IntMatrix2> {
    let m = x.det();
    if m <= 0 {
        return Err(Error::Domain(format!("{x} must have positive determinant")));
    }
    // U = (s t; −c/h a/h) with s a + t c = h clears the lower-left entry.
    let (h, s, t) = ext_gcd(x.a(), x.c());
    let u = IntMatrix2::new(s, t, -x.c() / h, x.a() / h);
    let y = u.checked_mul(x)?;
    debug_assert_eq!((y.c(), y.a()), (0, h));
    let d = y.d();
    let b = y.b().rem_euclid(d);
    Ok(IntMatrix2::new(h, b, 0, d))
}

/// `σ_g(A)`: the unique `A′ ∈ X_m` with `A g A′⁻¹ ∈ SL(2, Z)`.
pub fn sigma(g: &IntMatrix2, a: &IntMatrix2) -> Result<IntMatrix2> {
    if g.det() != 1 {
        return Err(Error::NotInSl2(g.to_string()));
    }
    if !is_in_xm(a) {
        return Err(Error::NotInXm(a.to_string(), a.det()));
    }
    reduce_to_xm(&a.checked_mul(g)?)
}

/// The data of one application of `φ_A`: `A α_j ∈ Γ₀(n) α_phi σ` with
/// `σ = σ_{α_j}(A)`. Indices are zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HeckeCosetRecord {
    pub a: IntMatrix2,
    pub j: usize,
    pub phi: usize,
    pub sigma: IntMatrix2,
}

impl HeckeCosetRecord {
    /// The unimodular factor `A α_j σ⁻¹`.
    pub fn unimodular_factor(&self, table: &CosetTable) -> Result<IntMatrix2> {
        let prod = self
            .a
            .checked_mul(&table.rep(self.j))?
            .checked_mul(&self.sigma.adjugate())?;
        prod.exact_div(self.sigma.det())
            .ok_or_else(|| Error::Domain(format!("{} α_j σ⁻¹ is not integral", self.a)))
    }
}

pub fn phi(table: &CosetTable, a: &IntMatrix2, j: usize) -> Result<HeckeCosetRecord> {
    if !is_in_xm(a) {
        return Err(Error::NotInXm(a.to_string(), a.det()));
    }
    if j >= table.mu() {
        return Err(Error::Domain(format!("coset index {j} out of range 0..{}", table.mu())));
    }
    let s = sigma(&table.rep(j), a)?;
    let mut record = HeckeCosetRecord {
        a: *a,
        j,
        phi: 0,
        sigma: s,
    };
    let b = record.unimodular_factor(table)?;
    record.phi = table.coset_index(&b)?;
    Ok(record)
}

/// `H̃(m) = Σ_{d | m, 0 ≤ b < d} M(b/d) · (m/d b; 0 d)`.
pub fn h_tilde(m: i64) -> Result<FormalSum> {
    check_index(m)?;
    let mut out = FormalSum::zero();
    for a in gen_xm(m)? {
        let q = ExtendedRational::new(a.b(), a.d())?;
        for ml in m_of_q_terms(q)? {
            out.add_term(1, ml.checked_mul(&a)?);
        }
    }
    Ok(out)
}

/// `S_m`: all `(a b; c d)` of determinant `m` with `a > c ≥ 0` and
/// `d > b ≥ 0`, in canonical order.
pub fn gen_sm(m: i64) -> Result<Vec<IntMatrix2>> {
    check_index(m)?;
    // a + d − 1 ≤ ad − bc = m bounds both diagonal entries
    let mut out = Vec::new();
    for a in 1..=m {
        for d in 1..=(m - a + 1) {
            let bc = a * d - m;
            if bc < 0 {
                continue;
            }
            for c in 0..a {
                if c == 0 {
                    if bc == 0 {
                        out.extend((0..d).map(|b| IntMatrix2::new(a, b, 0, d)));
                    }
                } else if bc % c == 0 && bc / c < d {
                    out.push(IntMatrix2::new(a, bc / c, c, d));
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// True iff `a′ > c′ ≥ 0` and `d′ > b′ ≥ 0`.
pub fn is_in_sm_shape(x: &IntMatrix2) -> bool {
    x.a() > x.c() && x.c() >= 0 && x.d() > x.b() && x.b() >= 0
}

/// The matrices `A` summed over by the `m`-th Hecke operator at level `n`:
/// all of `X_m` when `gcd(m, n) = 1`, and `X_m` without `(m 0; 0 1)` when
/// `m | n`.
pub fn hecke_coset_set(n: u32, m: i64) -> Result<Vec<IntMatrix2>> {
    if !is_prime(m) {
        return Err(Error::NotPrime(m));
    }
    let mut xm = gen_xm(m)?;
    match gcd(m, n as i64) {
        1 => {}
        g if g == m => xm.retain(|a| *a != IntMatrix2::new(m, 0, 0, 1)),
        _ => return Err(Error::BadDivisibility { m, n: n as i64 }),
    }
    Ok(xm)
}

/// Every `φ` record used by the `m`-th Hecke operator at the table's level.
pub fn hecke_records(table: &CosetTable, m: i64) -> Result<Vec<HeckeCosetRecord>> {
    let set = hecke_coset_set(table.level(), m)?;
    let mut out = Vec::with_capacity(set.len() * table.mu());
    for j in 0..table.mu() {
        for a in &set {
            out.push(phi(table, a, j)?);
        }
    }
    Ok(out)
}

/// The `μ × μ` array of formal sums representing the `m`-th Hecke operator
/// on vector-valued period functions for `Γ₀(n)`: component `j` of the
/// image of `ψ` is `Σ_i ψ_i |_s entries[j][i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeckeOperatorMatrix {
    pub n: u32,
    pub m: i64,
    pub mu: usize,
    pub entries: Vec<Vec<FormalSum>>,
}

impl HeckeOperatorMatrix {
    pub fn entry(&self, j: usize, i: usize) -> &FormalSum {
        &self.entries[j][i]
    }

    /// All matrices in all entries, with multiplicity.
    pub fn all_terms(&self) -> impl Iterator<Item = (usize, usize, i64, IntMatrix2)> + '_ {
        self.entries.iter().enumerate().flat_map(|(j, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(i, sum)| sum.terms().map(move |(c, x)| (j, i, c, x)))
        })
    }

    /// Sum of the entries of row `j`, forgetting the component structure.
    pub fn row_sum(&self, j: usize) -> FormalSum {
        self.entries[j].iter().fold(FormalSum::zero(), |acc, x| &acc + x)
    }

    /// The single-entry operator `f ↦ f |_s x`.
    pub fn scalar(m: i64, x: FormalSum) -> Self {
        Self {
            n: 1,
            m,
            mu: 1,
            entries: vec![vec![x]],
        }
    }
}

/// Builds the `m`-th Hecke operator on period functions for `Γ₀(n)`, `m`
/// prime: for each row `j` and each `A`, with `σ = σ_{α_j}(A)` and
/// `M(σ·0) = Σ_l m_l`, the matrix `m_l σ` is added to entry `(j, i)` where
/// `i` is the column of the one in row `φ_A(j)` of `ρ(m_l⁻¹)`.
pub fn vector_hecke(table: &CosetTable, m: i64) -> Result<HeckeOperatorMatrix> {
    let set = hecke_coset_set(table.level(), m)?;
    let mu = table.mu();
    let entries = (0..mu)
        .into_par_iter()
        .map(|j| {
            let mut row = vec![FormalSum::zero(); mu];
            for a in &set {
                let rec = phi(table, a, j)?;
                let q = ExtendedRational::new(rec.sigma.b(), rec.sigma.d())?;
                for ml in m_of_q_terms(q)? {
                    let i = table.coset_index(&(table.rep(rec.phi) * ml.inverse_unimodular()?))?;
                    row[i].add_term(1, ml.checked_mul(&rec.sigma)?);
                }
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HeckeOperatorMatrix {
        n: table.level(),
        m,
        mu,
        entries,
    })
}
