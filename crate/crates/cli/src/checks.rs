//! Numeric checks and the `verify-all` invariant battery.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use gamma0_hecke::farey::{farey_sequence, lns, m_of_q_terms};
use gamma0_hecke::hecke::{gen_sm, gen_xm, h_tilde, hecke_records, is_in_sm_shape, sigma, vector_hecke};
use gamma0_hecke::numeric::{
    eta_line_integral, laplace_eigen_error, observed_order, r_zeta_pow, rectangle_loop, three_term_residual,
    transfer_residual, ConstantLift, CuspLift, HeckeImage, SpectralParameter, VectorFunction,
};
use gamma0_hecke::{gamma0_contains, CosetTable, ExtendedRational, FormalSum, IntMatrix2, Result};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::output::{key_values, Report};

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum TestFunction {
    /// The constant lift of `1/z`; a solution only at `s = 1`.
    InvZ,
    /// `a − b z^{−2s}` with `a` weighted by cusp; a solution for every `s`.
    Cusp,
}

fn sample_points(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![1.0],
        k => (0..k).map(|i| 0.1 + 9.9 * i as f64 / (k - 1) as f64).collect(),
    }
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn max_residual<P: VectorFunction + ?Sized>(psi: &P, t: &CosetTable, s: SpectralParameter, zs: &[f64]) -> Result<f64> {
    zs.iter().try_fold(0.0f64, |acc, &z| {
        Ok(acc.max(max_norm(&three_term_residual(psi, t, s, z)?)))
    })
}

fn test_function(kind: TestFunction, t: &CosetTable, s: SpectralParameter) -> Result<Box<dyn VectorFunction>> {
    Ok(match kind {
        TestFunction::InvZ => Box::new(ConstantLift {
            f: |x: f64| Complex64::new(1.0 / x, 0.0),
            dim: t.mu(),
        }),
        TestFunction::Cusp => Box::new(CuspLift::new(t, s, |k| (k * k + 1) as f64)?),
    })
}

#[derive(Serialize)]
struct ThreeTerm {
    max_residual: f64,
    input_residual: f64,
    points: usize,
    tol: f64,
    passed: bool,
}

/// Three-term residual of the test function, and of its image under the
/// `m`-th Hecke operator when `m` is given.
pub fn three_term(
    n: u32,
    m: Option<i64>,
    s: SpectralParameter,
    points: usize,
    tol: f64,
    kind: TestFunction,
) -> Result<Report> {
    let t = CosetTable::new(n)?;
    let psi = test_function(kind, &t, s)?;
    let zs = sample_points(points);
    let input_residual = max_residual(psi.as_ref(), &t, s, &zs)?;
    let max_residual = match m {
        Some(m) => {
            let op = vector_hecke(&t, m)?;
            max_residual(
                &HeckeImage {
                    op: &op,
                    psi: psi.as_ref(),
                    s,
                },
                &t,
                s,
                &zs,
            )?
        }
        None => input_residual,
    };
    let passed = input_residual < tol && max_residual < tol;
    let data = ThreeTerm {
        max_residual,
        input_residual,
        points,
        tol,
        passed,
    };
    let json = serde_json::to_value(&data).expect("serializable");
    Ok(Report::check(&data, key_values(&json), passed))
}

#[derive(Serialize)]
struct Laplace {
    max_residual: f64,
    min_order: f64,
    max_order: f64,
    h: f64,
    points: usize,
    passed: bool,
}

/// Relative error of the finite-difference eigen-equation for `R_ζ^s` at
/// `points` seeded random `(ζ, z)`, and the observed order between `10h`
/// and `h`.
pub fn laplace(s: SpectralParameter, points: usize, h: f64, order_tol: f64, seed: u64) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut worst, mut lo, mut hi) = (0.0f64, f64::INFINITY, f64::NEG_INFINITY);
    for _ in 0..points {
        let zeta = rng.gen_range(-3.0..3.0);
        let z = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(0.5..3.0));
        let coarse = laplace_eigen_error(s, zeta, z, 10.0 * h)?;
        let fine = laplace_eigen_error(s, zeta, z, h)?;
        let order = observed_order(coarse, fine, 10.0);
        worst = worst.max(fine);
        lo = lo.min(order);
        hi = hi.max(order);
    }
    let passed = points > 0 && (lo - 2.0).abs() < order_tol && (hi - 2.0).abs() < order_tol;
    let data = Laplace {
        max_residual: worst,
        min_order: lo,
        max_order: hi,
        h,
        points,
        passed,
    };
    let json = serde_json::to_value(&data).expect("serializable");
    Ok(Report::check(&data, key_values(&json), passed))
}

#[derive(Serialize)]
struct EtaLoop {
    max_residual: f64,
    panels: Vec<usize>,
    integrals: Vec<f64>,
    orders: Vec<f64>,
    passed: bool,
}

/// `|∮ η(R_{ζ′}^s, R_ζ^s)|` around `[0, 1] × [1/2, 3/2]` with `ζ = −1`,
/// `ζ′ = 5/2`, for `panels`, `2·panels` and `4·panels` panels per side.
pub fn eta_loop(s: SpectralParameter, panels: usize, order_tol: f64) -> Result<Report> {
    let u = |w: Complex64| r_zeta_pow(w, 2.5, s);
    let v = |w: Complex64| r_zeta_pow(w, -1.0, s);
    let rect = rectangle_loop(0.0, 1.0, 0.5, 1.5);
    let counts: Vec<usize> = [1, 2, 4].iter().map(|k| k * panels.max(1)).collect();
    let integrals = counts
        .iter()
        .map(|&p| Ok(eta_line_integral(u, v, &rect, p)?.norm()))
        .collect::<Result<Vec<_>>>()?;
    let orders: Vec<f64> = integrals.windows(2).map(|w| observed_order(w[0], w[1], 2.0)).collect();
    let passed = orders.iter().all(|o| (o - 2.0).abs() < order_tol);
    let data = EtaLoop {
        max_residual: integrals[2],
        panels: counts,
        integrals,
        orders,
        passed,
    };
    let json = serde_json::to_value(&data).expect("serializable");
    Ok(Report::check(&data, key_values(&json), passed))
}

#[derive(Serialize)]
struct Property {
    name: &'static str,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct VerifyAll {
    n: u32,
    m: i64,
    passed: bool,
    properties: Vec<Property>,
}

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn words_up_to(len: usize) -> Vec<IntMatrix2> {
    let mut out = vec![IntMatrix2::I];
    let mut layer = vec![IntMatrix2::I];
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|w| [*w * IntMatrix2::T, *w * IntMatrix2::S])
            .collect();
        out.extend(&layer);
    }
    out
}

fn random_word(rng: &mut ChaCha8Rng, gens: &[IntMatrix2], max_len: usize) -> IntMatrix2 {
    let len = rng.gen_range(0..=max_len);
    (0..len).fold(IntMatrix2::I, |acc, _| acc * gens[rng.gen_range(0..gens.len())])
}

/// Runs every exact and numeric invariant available for the pair `(n, m)`.
pub fn verify_all(n: u32, m: i64, tol: f64, seed: u64) -> Result<Report> {
    let t = CosetTable::new(n)?;
    let op = vector_hecke(&t, m)?;
    let records = hecke_records(&t, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zs = sample_points(100);

    let mut props: Vec<(&'static str, Outcome)> = Vec::new();

    props.push(("xm_divisor_sum", {
        let size = gen_xm(m)?.len() as i64;
        let sigma_m: i64 = (1..=m).filter(|d| m % d == 0).sum();
        ensure(size == sigma_m, || format!("|X_m| = {size}, σ(m) = {sigma_m}")).map(|_| format!("|X_m| = {size}"))
    }));

    props.push(("h_tilde_equals_sm", {
        let h = h_tilde(m)?;
        let sm = FormalSum::from_matrices(gen_sm(m)?);
        ensure(h == sm, || "H̃(m) differs from S_m".into()).map(|_| format!("{} matrices", h.len()))
    }));

    props.push((
        "left_neighbor_chains",
        (|| {
            let mut count = 0;
            for q in farey_sequence(30)
                .into_iter()
                .filter(|q| *q >= ExtendedRational::ZERO && *q < ExtendedRational::ONE)
            {
                let seq = lns(q).map_err(|e| e.to_string())?;
                for (a, b) in seq.pairs() {
                    ensure(a.num() * b.den() - b.num() * a.den() == -1, || {
                        format!("{a}, {b} not oriented")
                    })?;
                }
                for ml in m_of_q_terms(q).map_err(|e| e.to_string())? {
                    ensure(ml.c() * q.num() + ml.d() * q.den() > 0, || {
                        format!("{ml} not positive at {q}")
                    })?;
                }
                count += 1;
            }
            Ok(format!("{count} rationals in [0, 1) of level ≤ 30"))
        })(),
    ));

    props.push((
        "sigma_bijective_and_inverse",
        (|| {
            let xm = gen_xm(m).map_err(|e| e.to_string())?;
            let words = words_up_to(5);
            for g in &words {
                let ginv = g.inverse_unimodular().map_err(|e| e.to_string())?;
                let image: BTreeSet<_> = xm
                    .iter()
                    .map(|a| sigma(g, a))
                    .collect::<Result<_>>()
                    .map_err(|e| e.to_string())?;
                ensure(image.iter().eq(xm.iter()), || {
                    format!("σ_g not a bijection for g = {g}")
                })?;
                for a in &xm {
                    let back = sigma(&ginv, &sigma(g, a).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                    ensure(back == *a, || format!("σ_(g⁻¹) σ_g ≠ id for g = {g}"))?;
                }
            }
            Ok(format!("{} words in T, S", words.len()))
        })(),
    ));

    props.push((
        "rho_homomorphism",
        (|| {
            let gens = [
                IntMatrix2::T,
                IntMatrix2::S,
                IntMatrix2::T.inverse_unimodular().unwrap(),
                -IntMatrix2::S,
            ];
            for _ in 0..200 {
                let g = random_word(&mut rng, &gens, 6);
                let h = random_word(&mut rng, &gens, 6);
                let lhs = t
                    .rho(&g)
                    .and_then(|x| Ok(x.compose(&t.rho(&h)?)))
                    .map_err(|e| e.to_string())?;
                ensure(lhs == t.rho(&(g * h)).map_err(|e| e.to_string())?, || {
                    format!("fails for {g}, {h}")
                })?;
            }
            Ok("200 random pairs".into())
        })(),
    ));

    props.push((
        "rho_fixes_identity_coset_on_gamma0",
        (|| {
            let lower = IntMatrix2::new(1, 0, n as i64, 1);
            let gens = [
                IntMatrix2::T,
                lower,
                IntMatrix2::T.inverse_unimodular().unwrap(),
                lower.inverse_unimodular().unwrap(),
                -IntMatrix2::I,
            ];
            for _ in 0..50 {
                let gamma = random_word(&mut rng, &gens, 8);
                ensure(gamma0_contains(n, &gamma).map_err(|e| e.to_string())?, || {
                    format!("{gamma} ∉ Γ₀(n)")
                })?;
                ensure(t.rho(&gamma).map_err(|e| e.to_string())?.column_of(0) == 0, || {
                    format!("moves the identity coset: {gamma}")
                })?;
            }
            Ok("50 random elements".into())
        })(),
    ));

    props.push((
        "coset_records",
        (|| {
            for rec in &records {
                let u = rec.unimodular_factor(&t).map_err(|e| e.to_string())?;
                let w = u * t.rep(rec.phi).inverse_unimodular().map_err(|e| e.to_string())?;
                ensure(gamma0_contains(n, &w).map_err(|e| e.to_string())?, || {
                    format!("{rec:?}")
                })?;
            }
            Ok(format!("{} records", records.len()))
        })(),
    ));

    props.push((
        "entry_shape",
        (|| {
            let mut count = 0;
            for (j, i, c, x) in op.all_terms() {
                ensure(c > 0 && x.det() == m && is_in_sm_shape(&x), || {
                    format!("{x} at ({j}, {i})")
                })?;
                count += 1;
            }
            Ok(format!("{count} matrices"))
        })(),
    ));

    if n == 1 {
        props.push(("level_one_reduction", {
            ensure(op.entry(0, 0) == &h_tilde(m)?, || "entry differs from H̃(m)".into()).map(|_| "exact".into())
        }));
    }

    for (name, kind, s) in [
        ("three_term_inv_z", TestFunction::InvZ, SpectralParameter::real(1.0)),
        (
            "three_term_cusp_lift",
            TestFunction::Cusp,
            SpectralParameter::new(0.5, 9.5),
        ),
    ] {
        let psi = test_function(kind, &t, s)?;
        let input = max_residual(psi.as_ref(), &t, s, &zs)?;
        let output = max_residual(
            &HeckeImage {
                op: &op,
                psi: psi.as_ref(),
                s,
            },
            &t,
            s,
            &zs,
        )?;
        props.push((name, {
            ensure(input < tol && output < tol, || {
                format!("input {input:e}, output {output:e}")
            })
            .map(|_| format!("s = {s}: input {input:.1e}, output {output:.1e}"))
        }));
    }

    props.push(("transfer_signs", {
        let psi = test_function(TestFunction::InvZ, &t, SpectralParameter::real(1.0))?;
        let s = SpectralParameter::real(1.0);
        let plus = zs.iter().try_fold(0.0f64, |acc, &z| {
            Ok::<_, gamma0_hecke::Error>(acc.max(max_norm(&transfer_residual(psi.as_ref(), &t, s, 1, z)?)))
        })?;
        let minus = max_norm(&transfer_residual(psi.as_ref(), &t, s, -1, 1.0)?);
        ensure(plus < tol && minus > 1e-2, || {
            format!("sign +1 {plus:e}, sign −1 {minus:e}")
        })
        .map(|_| format!("sign +1 {plus:.1e}, sign −1 at ζ = 1 {minus:.3}"))
    }));

    let properties: Vec<Property> = props
        .into_iter()
        .map(|(name, r)| match r {
            Ok(detail) => Property {
                name,
                passed: true,
                detail,
            },
            Err(detail) => Property {
                name,
                passed: false,
                detail,
            },
        })
        .collect();
    let passed = properties.iter().all(|p| p.passed);
    let mut tsv = String::from("property\tpassed\tdetail\n");
    for p in &properties {
        writeln!(tsv, "{}\t{}\t{}", p.name, p.passed, p.detail).unwrap();
    }
    Ok(Report::check(
        &VerifyAll {
            n,
            m,
            passed,
            properties,
        },
        tsv,
        passed,
    ))
}
