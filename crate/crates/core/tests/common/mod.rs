#![allow(dead_code)]

use gamma0_hecke::IntMatrix2;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn m(a: i64, b: i64, c: i64, d: i64) -> IntMatrix2 {
    IntMatrix2::new(a, b, c, d)
}

/// `T`, `S` and their inverses.
pub fn generators() -> [IntMatrix2; 4] {
    [IntMatrix2::T, m(1, -1, 0, 1), IntMatrix2::S, m(0, 1, -1, 0)]
}

/// A random word of length `0..=max_len` in the generators.
pub fn random_word(rng: &mut impl Rng, max_len: usize) -> IntMatrix2 {
    let gens = generators();
    let len = rng.gen_range(0..=max_len);
    (0..len).fold(IntMatrix2::I, |acc, _| acc * gens[rng.gen_range(0..4)])
}

/// Every word of length `≤ max_len` in `{T, S}`.
pub fn all_ts_words(max_len: usize) -> Vec<IntMatrix2> {
    let mut out = vec![IntMatrix2::I];
    let mut layer = vec![IntMatrix2::I];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| [*w * IntMatrix2::T, *w * IntMatrix2::S])
            .collect();
        out.extend(&layer);
    }
    out
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.signum() * a, a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// A random element of `Γ₀(n)` with entries of moderate size.
pub fn random_gamma0(rng: &mut impl Rng, n: u32) -> IntMatrix2 {
    loop {
        let c = n as i64 * rng.gen_range(-6i64..=6);
        let d = rng.gen_range(-40i64..=40);
        if gcd(c, d) != 1 {
            continue;
        }
        // a d − b c = 1
        let (_, x, y) = ext_gcd(d, -c);
        let k = rng.gen_range(-3i64..=3);
        let g = m(x + k * c, y + k * d, c, d);
        assert_eq!(g.det(), 1);
        return g;
    }
}

pub fn sigma_divisors(m: i64) -> i64 {
    (1..=m).filter(|d| m % d == 0).sum()
}
