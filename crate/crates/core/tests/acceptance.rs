//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{all_ts_words, random_gamma0, random_word, rng, sigma_divisors};
use gamma0_hecke::farey::{farey_sequence, left_neighbor, level};
use gamma0_hecke::hecke::{gen_sm, gen_xm, h_tilde, hecke_records, is_in_sm_shape, sigma, vector_hecke};
use gamma0_hecke::numeric::{
    eta_line_integral, laplace_eigen_error, moebius_complex, observed_order, r_zeta, r_zeta_pow, rectangle_loop,
    three_term_residual, transfer_residual, ConstantLift, HeckeImage, SpectralParameter,
};
use gamma0_hecke::{gamma0_contains, CosetTable, ExtendedRational, FormalSum, IntMatrix2};
use num_complex::Complex64;
use rand::Rng;

type Outcome = Result<String, String>;

const PRIMES: [i64; 4] = [2, 3, 5, 7];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, started: Instant) -> Result<(), String> {
    let t = started.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn criterion_1() -> Outcome {
    let started = Instant::now();
    for m in 1..=30 {
        let h = h_tilde(m).map_err(|e| e.to_string())?;
        let sm = FormalSum::from_matrices(gen_sm(m).map_err(|e| e.to_string())?);
        ensure(h == sm, || format!("H̃({m}) differs from S_m"))?;
    }
    within(Duration::from_secs(10), started)?;
    Ok(format!("m = 1..30 in {:.2?}", started.elapsed()))
}

fn criterion_2() -> Outcome {
    let started = Instant::now();
    ensure(gen_xm(1).unwrap() == vec![IntMatrix2::I], || "X_1 is not {I}".into())?;
    for m in 1..=100 {
        let len = gen_xm(m).unwrap().len() as i64;
        ensure(len == sigma_divisors(m), || format!("|X_{m}| = {len}"))?;
    }
    within(Duration::from_secs(1), started)?;
    Ok(format!("m = 1..100 in {:.2?}", started.elapsed()))
}

fn criterion_3() -> Outcome {
    let started = Instant::now();
    let sequences: Vec<_> = (0..=50).map(farey_sequence).collect();
    let mut checked = 0;
    for q in sequences[50].iter().skip(1) {
        let oracle = sequences[level(*q) as usize].iter().filter(|r| *r < q).max().unwrap();
        let ln = left_neighbor(*q).map_err(|e| e.to_string())?;
        ensure(ln == *oracle, || format!("LN({q}) = {ln}, oracle {oracle}"))?;
        if level(*q) > 0 {
            ensure(level(ln) < level(*q), || format!("level does not descend at {q}"))?;
        }
        checked += 1;
    }
    within(Duration::from_secs(30), started)?;
    Ok(format!("{checked} points in {:.2?}", started.elapsed()))
}

fn det_pair(x: &ExtendedRational, y: &ExtendedRational) -> i64 {
    x.num() * y.den() - y.num() * x.den()
}

fn criterion_4() -> Outcome {
    const MAX: u32 = 30;
    let sequences: Vec<_> = (0..=MAX).map(farey_sequence).collect();
    let positions: Vec<HashMap<ExtendedRational, usize>> = sequences
        .iter()
        .map(|f| f.iter().enumerate().map(|(i, r)| (*r, i)).collect())
        .collect();
    // orientation: neighbors have determinant −1, and det −1 forces a/c < b/d
    for f in &sequences {
        for w in f.windows(2) {
            ensure(det_pair(&w[0], &w[1]) == -1, || {
                format!("{} {} not oriented", w[0], w[1])
            })?;
        }
    }
    let all = &sequences[MAX as usize];
    let mut pairs = 0;
    for x in all {
        for y in all {
            let det = det_pair(x, y);
            if det == -1 {
                ensure(x < y, || format!("det −1 but {x} ≥ {y}"))?;
            }
            if det.abs() != 1 {
                continue;
            }
            // ±1/0 are the same point of P¹(Q)
            let k = level(*x).max(level(*y)) as usize;
            let pos = &positions[k];
            let alternatives = |r: &ExtendedRational| -> Vec<usize> {
                if r.is_infinite() {
                    vec![0, sequences[k].len() - 1]
                } else {
                    vec![pos[r]]
                }
            };
            let adjacent = alternatives(x)
                .iter()
                .any(|i| alternatives(y).iter().any(|j| i.abs_diff(*j) == 1));
            ensure(adjacent, || format!("{x}, {y} not neighbors in F_{k}"))?;
            pairs += 1;
        }
    }
    Ok(format!("levels ≤ {MAX}, {pairs} unimodular pairs"))
}

fn criterion_5() -> Outcome {
    let mut count = 0usize;
    for m in 1..=30 {
        for x in h_tilde(m).unwrap().matrices() {
            ensure(x.is_nonnegative() && is_in_sm_shape(x), || format!("{x} in H̃({m})"))?;
            count += 1;
        }
    }
    for n in 1..=6 {
        let t = CosetTable::new(n).unwrap();
        for m in PRIMES {
            let op = vector_hecke(&t, m).map_err(|e| e.to_string())?;
            for (j, i, _, x) in op.all_terms() {
                ensure(x.is_nonnegative() && is_in_sm_shape(&x), || {
                    format!("{x} at ({j},{i}), n={n} m={m}")
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} matrices"))
}

fn criterion_6() -> Outcome {
    let mut r = rng(6);
    for n in 1..=12 {
        let t = CosetTable::new(n).unwrap();
        for _ in 0..200 {
            let g = random_word(&mut r, 6);
            let h = random_word(&mut r, 6);
            let lhs = t.rho(&g).unwrap().compose(&t.rho(&h).unwrap());
            ensure(lhs == t.rho(&(g * h)).unwrap(), || format!("n={n} g={g} h={h}"))?;
        }
        for _ in 0..50 {
            let gamma = random_gamma0(&mut r, n);
            ensure(t.rho(&gamma).unwrap().column_of(0) == 0, || format!("n={n} γ={gamma}"))?;
        }
    }
    Ok("n = 1..12, 200 pairs and 50 Γ₀(n) elements each".into())
}

fn criterion_7() -> Outcome {
    let words = all_ts_words(5);
    for m in 1..=12 {
        let xm = gen_xm(m).unwrap();
        for g in &words {
            let ginv = g.inverse_unimodular().unwrap();
            let mut image: Vec<_> = xm.iter().map(|a| sigma(g, a).unwrap()).collect();
            image.sort();
            ensure(image == xm, || format!("σ_g not a bijection, m={m} g={g}"))?;
            for a in &xm {
                ensure(sigma(&ginv, &sigma(g, a).unwrap()).unwrap() == *a, || {
                    format!("σ_g⁻¹ ≠ σ_(g⁻¹), m={m} g={g}")
                })?;
            }
        }
    }
    let mut records = 0;
    for n in 1..=6 {
        let t = CosetTable::new(n).unwrap();
        for m in PRIMES {
            for rec in hecke_records(&t, m).unwrap() {
                let u = rec.unimodular_factor(&t).unwrap();
                let w = u * t.rep(rec.phi).inverse_unimodular().unwrap();
                ensure(gamma0_contains(n, &w).unwrap(), || format!("n={n} m={m} {rec:?}"))?;
                records += 1;
            }
        }
    }
    Ok(format!("{} words, {records} coset records", words.len()))
}

fn criterion_8() -> Outcome {
    let t = CosetTable::new(1).unwrap();
    for m in PRIMES {
        let op = vector_hecke(&t, m).unwrap();
        ensure(op.entry(0, 0) == &h_tilde(m).unwrap(), || format!("m={m}"))?;
    }
    Ok("m ∈ {2,3,5,7}".into())
}

fn criterion_9() -> Outcome {
    let started = Instant::now();
    let s = SpectralParameter::real(1.0);
    let zetas: Vec<f64> = (0..100).map(|k| 0.1 + 9.9 * k as f64 / 99.0).collect();
    let mut worst_in = 0.0f64;
    let mut worst_out = 0.0f64;
    for n in 1..=4 {
        let t = CosetTable::new(n).unwrap();
        let psi = ConstantLift {
            f: |x: f64| Complex64::new(1.0 / x, 0.0),
            dim: t.mu(),
        };
        for m in PRIMES {
            let op = vector_hecke(&t, m).unwrap();
            let image = HeckeImage { op: &op, psi: &psi, s };
            for &z in &zetas {
                worst_in = worst_in.max(max_norm(&three_term_residual(&psi, &t, s, z).unwrap()));
                worst_out = worst_out.max(max_norm(&three_term_residual(&image, &t, s, z).unwrap()));
            }
        }
    }
    ensure(worst_in < 1e-12, || format!("input residual {worst_in:e}"))?;
    ensure(worst_out < 1e-9, || format!("output residual {worst_out:e}"))?;
    within(Duration::from_secs(60), started)?;
    Ok(format!("input {worst_in:.1e}, output {worst_out:.1e}"))
}

fn criterion_10() -> Outcome {
    let mut r = rng(10);
    let mut worst = 0.0f64;
    let mut samples = 0;
    while samples < 100 {
        let g = random_word(&mut r, 6);
        let z = Complex64::new(r.gen_range(-3.0..3.0), r.gen_range(0.2..3.0));
        let zeta: f64 = r.gen_range(-3.0..3.0);
        let denom = g.c() as f64 * zeta + g.d() as f64;
        if denom.abs() < 1e-3 {
            continue;
        }
        let g_zeta = (g.a() as f64 * zeta + g.b() as f64) / denom;
        let lhs = g.det().abs() as f64 / (denom * denom) * r_zeta(moebius_complex(&g, z), g_zeta);
        let rhs = r_zeta(z, zeta);
        worst = worst.max(((lhs - rhs) / rhs).abs());
        samples += 1;
    }
    ensure(worst < 1e-12, || format!("R_ζ transformation error {worst:e}"))?;

    let s = SpectralParameter::new(0.5, 3.0);
    let z = Complex64::new(0.3, 1.0);
    let coarse = laplace_eigen_error(s, 0.0, z, 1e-2).unwrap();
    let fine = laplace_eigen_error(s, 0.0, z, 1e-3).unwrap();
    let lap_order = observed_order(coarse, fine, 10.0);
    ensure((lap_order - 2.0).abs() < 0.2, || {
        format!("Laplacian order {lap_order:.3}")
    })?;

    let u = |w: Complex64| r_zeta_pow(w, 2.5, s);
    let v = |w: Complex64| r_zeta_pow(w, -1.0, s);
    let rect = rectangle_loop(0.0, 1.0, 0.5, 1.5);
    let loops: Vec<f64> = [8, 16, 32]
        .iter()
        .map(|&p| eta_line_integral(u, v, &rect, p).unwrap().norm())
        .collect();
    let eta_orders: Vec<f64> = loops.windows(2).map(|w| observed_order(w[0], w[1], 2.0)).collect();
    ensure(eta_orders.iter().all(|o| (o - 2.0).abs() < 0.3), || {
        format!("η loop orders {eta_orders:?}")
    })?;

    Ok(format!(
        "R_ζ {worst:.1e}; Laplacian order {lap_order:.3}; η loop {:.1e} → {:.1e} → {:.1e}, orders {:.2}, {:.2}",
        loops[0], loops[1], loops[2], eta_orders[0], eta_orders[1]
    ))
}

fn criterion_11() -> Outcome {
    let t = CosetTable::new(1).unwrap();
    let s = SpectralParameter::real(1.0);
    let psi = ConstantLift {
        f: |x: f64| Complex64::new(1.0 / x, 0.0),
        dim: 1,
    };
    let mut worst = 0.0f64;
    for k in 0..100 {
        let zeta = 0.1 + 9.9 * k as f64 / 99.0;
        worst = worst.max(max_norm(&transfer_residual(&psi, &t, s, 1, zeta).unwrap()));
    }
    ensure(worst < 1e-12, || format!("sign +1 residual {worst:e}"))?;
    let minus = max_norm(&transfer_residual(&psi, &t, s, -1, 1.0).unwrap());
    ensure(minus > 1e-2, || format!("sign −1 residual at ζ=1 is {minus:e}"))?;
    Ok(format!("sign +1 {worst:.1e}; sign −1 at ζ=1 {minus:.3}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("H̃(m) = Σ S_m, m ≤ 30", criterion_1),
        ("|X_m| = σ(m), m ≤ 100", criterion_2),
        ("left neighbor oracle and level descent, lev ≤ 50", criterion_3),
        ("Farey orientation and completeness, lev ≤ 30", criterion_4),
        ("entry conditions of H̃(m) and vector Hecke entries", criterion_5),
        ("ρ homomorphism and Γ₀(n) stabilizer", criterion_6),
        ("σ_g bijectivity, inverse and coset records", criterion_7),
        ("level one reduction", criterion_8),
        ("three-term equation preserved by vector Hecke operators", criterion_9),
        ("R_ζ transformation, Laplacian order, η loop order", criterion_10),
        ("transfer-operator residual signs", criterion_11),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail})", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
