//! Floating-point evaluation of the slash action and the checks built on it:
//! three-term and transfer-operator residuals, the kernel `R_ζ`, a
//! finite-difference hyperbolic Laplacian and line integrals of the one-form
//! `η(u, v)`.
//!
//! Powers are principal-branch powers of strictly positive reals; the
//! evaluation routines reject inputs that would leave that regime.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::congruence::CosetTable;
use crate::exact::IntMatrix2;
use crate::hecke::HeckeOperatorMatrix;
use crate::{Error, Result};

/// Central-difference step used for partial derivatives inside `η`.
pub const DEFAULT_PARTIAL_STEP: f64 = 1e-5;
/// Default step for the Laplacian stencil.
pub const DEFAULT_LAPLACE_STEP: f64 = 1e-3;
/// Default number of midpoint panels per polyline segment.
pub const DEFAULT_PANELS: usize = 10_000;

/// The spectral parameter `s ∈ C`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralParameter(pub Complex64);

impl SpectralParameter {
    pub fn new(re: f64, im: f64) -> Self {
        Self(Complex64::new(re, im))
    }

    pub fn real(re: f64) -> Self {
        Self::new(re, 0.0)
    }

    /// The Laplace eigenvalue `s(1 − s)`.
    pub fn eigenvalue(&self) -> Complex64 {
        self.0 * (1.0 - self.0)
    }
}

impl fmt::Display for SpectralParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.0.re, self.0.im)
    }
}

impl FromStr for SpectralParameter {
    type Err = Error;

    /// Parses `re,im` or a bare real part.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("cannot parse `{s}` as a complex number (expected re,im)"));
        let (re, im) = match s.split_once(',') {
            Some((re, im)) => (re.trim(), im.trim()),
            None => (s.trim(), "0"),
        };
        let re: f64 = re.parse().map_err(|_| bad())?;
        let im: f64 = im.parse().map_err(|_| bad())?;
        if !(re.is_finite() && im.is_finite()) {
            return Err(bad());
        }
        Ok(Self::new(re, im))
    }
}

/// `x^s` for `x > 0`, principal branch.
fn pos_pow(x: f64, s: Complex64) -> Complex64 {
    debug_assert!(x > 0.0);
    (s * x.ln()).exp()
}

/// A function `(0, ∞) → C^μ`.
pub trait VectorFunction: Sync {
    fn dim(&self) -> usize;
    fn eval(&self, x: f64) -> Result<Vec<Complex64>>;
}

/// The vector `(f, f, …, f)` of length `dim`.
pub struct ConstantLift<F> {
    pub f: F,
    pub dim: usize,
}

impl<F: Fn(f64) -> Complex64 + Sync> VectorFunction for ConstantLift<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: f64) -> Result<Vec<Complex64>> {
        Ok(vec![(self.f)(x); self.dim])
    }
}

/// A vector function given by one closure per component.
pub struct Components<'a> {
    pub parts: Vec<Box<dyn Fn(f64) -> Complex64 + Sync + 'a>>,
}

impl VectorFunction for Components<'_> {
    fn dim(&self) -> usize {
        self.parts.len()
    }

    fn eval(&self, x: f64) -> Result<Vec<Complex64>> {
        Ok(self.parts.iter().map(|f| f(x)).collect())
    }
}

/// A period-like function with non-constant components:
/// `ψ(z) = a − b z^{−2s}` where `a` is constant on the orbits of `ρ(T)`
/// (one weight per cusp class) and `b = ρ(T T′⁻¹) a`.
///
/// Matching the coefficients of `1`, `z^{−2s}` and `(z+1)^{−2s}` in the
/// three-term equation reduces it to `ρ(T) a = a`, so `ψ` solves it for
/// every `s`.
pub struct CuspLift {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub s: SpectralParameter,
}

impl CuspLift {
    /// `orbit_weight(k)` is the value of `a` on the `k`-th orbit of `ρ(T)`,
    /// orbits numbered by their smallest coset index.
    pub fn new(table: &CosetTable, s: SpectralParameter, orbit_weight: impl Fn(usize) -> f64) -> Result<Self> {
        let orbits = t_orbits(table)?;
        let a: Vec<f64> = orbits.iter().map(|&k| orbit_weight(k)).collect();
        let g = IntMatrix2::T * IntMatrix2::T_PRIME.inverse_unimodular()?;
        let b = table.rho(&g)?.apply(&a);
        Ok(Self { a, b, s })
    }
}

impl VectorFunction for CuspLift {
    fn dim(&self) -> usize {
        self.a.len()
    }

    fn eval(&self, x: f64) -> Result<Vec<Complex64>> {
        check_point(x)?;
        let p = pos_pow(x, -2.0 * self.s.0);
        Ok(self.a.iter().zip(&self.b).map(|(a, b)| a - b * p).collect())
    }
}

/// Orbit number of every coset under right multiplication by `T`. The
/// orbits correspond to the cusps of `Γ₀(n)`.
pub fn t_orbits(table: &CosetTable) -> Result<Vec<usize>> {
    let rho_t = table.rho(&IntMatrix2::T)?;
    let mut orbit = vec![usize::MAX; table.mu()];
    let mut count = 0;
    for i in 0..table.mu() {
        if orbit[i] != usize::MAX {
            continue;
        }
        let mut x = i;
        while orbit[x] == usize::MAX {
            orbit[x] = count;
            x = rho_t.column_of(x);
        }
        count += 1;
    }
    Ok(orbit)
}

/// `|det M|^s (cx + d)^{−2s} f(Mx)`, requiring `cx + d > 0`.
fn slash_abs_det<T, F>(f: F, m: &IntMatrix2, s: SpectralParameter, x: f64) -> Result<T>
where
    F: FnOnce(f64) -> Result<T>,
    T: Scale,
{
    let denom = m.c() as f64 * x + m.d() as f64;
    if !(denom > 0.0) {
        return Err(Error::Domain(format!(
            "c x + d = {denom} is not positive for {m} at x = {x}"
        )));
    }
    let image = (m.a() as f64 * x + m.b() as f64) / denom;
    let factor = pos_pow((m.det().unsigned_abs()) as f64, s.0) * pos_pow(denom, -2.0 * s.0);
    Ok(f(image)?.scale(factor))
}

trait Scale {
    fn scale(self, k: Complex64) -> Self;
}

impl Scale for Complex64 {
    fn scale(self, k: Complex64) -> Self {
        self * k
    }
}

impl Scale for Vec<Complex64> {
    fn scale(mut self, k: Complex64) -> Self {
        self.iter_mut().for_each(|v| *v *= k);
        self
    }
}

fn check_slash_domain(m: &IntMatrix2, x: f64) -> Result<()> {
    if m.det() <= 0 || !m.is_nonnegative() {
        return Err(Error::Domain(format!(
            "{m} must have nonnegative entries and positive determinant"
        )));
    }
    if !(x > 0.0) {
        return Err(Error::Domain(format!("evaluation point {x} must be positive")));
    }
    Ok(())
}

/// `(f |_s M)(ζ) = det(M)^s (cζ + d)^{−2s} f(Mζ)` for `M` with nonnegative
/// entries and positive determinant, and `ζ > 0`.
pub fn slash_eval<F: Fn(f64) -> Complex64>(f: F, m: &IntMatrix2, s: SpectralParameter, zeta: f64) -> Result<Complex64> {
    check_slash_domain(m, zeta)?;
    slash_abs_det(|y| Ok(f(y)), m, s, zeta)
}

/// Componentwise `(ψ |_s M)(ζ)`.
pub fn slash_eval_vector<P: VectorFunction + ?Sized>(
    psi: &P,
    m: &IntMatrix2,
    s: SpectralParameter,
    zeta: f64,
) -> Result<Vec<Complex64>> {
    check_slash_domain(m, zeta)?;
    slash_abs_det(|y| psi.eval(y), m, s, zeta)
}

fn check_point(zeta: f64) -> Result<()> {
    if !(zeta > 0.0) {
        return Err(Error::Domain(format!("evaluation point {zeta} must be positive")));
    }
    Ok(())
}

fn check_dim<P: VectorFunction + ?Sized>(psi: &P, table: &CosetTable) -> Result<()> {
    if psi.dim() != table.mu() {
        return Err(Error::Domain(format!(
            "function has {} components, expected {}",
            psi.dim(),
            table.mu()
        )));
    }
    Ok(())
}

/// `ψ(ζ) − ρ(T⁻¹) ψ(ζ+1) − (ζ+1)^{−2s} ρ(T′⁻¹) ψ(ζ/(ζ+1))`.
pub fn three_term_residual<P: VectorFunction + ?Sized>(
    psi: &P,
    table: &CosetTable,
    s: SpectralParameter,
    zeta: f64,
) -> Result<Vec<Complex64>> {
    check_point(zeta)?;
    check_dim(psi, table)?;
    let t = IntMatrix2::T;
    let tp = IntMatrix2::T_PRIME;
    let rho_t = table.rho(&t.inverse_unimodular()?)?;
    let rho_tp = table.rho(&tp.inverse_unimodular()?)?;
    let first = rho_t.apply(&slash_eval_vector(psi, &t, s, zeta)?);
    let second = rho_tp.apply(&slash_eval_vector(psi, &tp, s, zeta)?);
    Ok(psi
        .eval(zeta)?
        .iter()
        .zip(first)
        .zip(second)
        .map(|((p, a), b)| p - a - b)
        .collect())
}

/// `ψ − ρ(T⁻¹) ψ|T − sign · ρ(M T′⁻¹) ψ|(M T′)` with `M = (0 1; 1 0)`.
///
/// `M T′ = (1 1; 1 0)` has determinant −1; its slash uses `|det|^s`, and
/// `ρ(M T′⁻¹)` is the permutation of cosets of `Γ₀^±(n)`.
pub fn transfer_residual<P: VectorFunction + ?Sized>(
    psi: &P,
    table: &CosetTable,
    s: SpectralParameter,
    sign: i8,
    zeta: f64,
) -> Result<Vec<Complex64>> {
    if sign != 1 && sign != -1 {
        return Err(Error::Domain(format!("sign must be ±1, got {sign}")));
    }
    check_point(zeta)?;
    check_dim(psi, table)?;
    let t = IntMatrix2::T;
    let flip_tp = IntMatrix2::FLIP * IntMatrix2::T_PRIME;
    let rho_t = table.rho(&t.inverse_unimodular()?)?;
    let rho_f = table.rho(&(IntMatrix2::FLIP * IntMatrix2::T_PRIME.inverse_unimodular()?))?;
    let first = rho_t.apply(&slash_eval_vector(psi, &t, s, zeta)?);
    let second = rho_f.apply(&slash_abs_det(|y| psi.eval(y), &flip_tp, s, zeta)?);
    let sign = f64::from(sign);
    Ok(psi
        .eval(zeta)?
        .iter()
        .zip(first)
        .zip(second)
        .map(|((p, a), b)| p - a - sign * b)
        .collect())
}

/// `Σ_i Σ_{(c, B) ∈ op[j][i]} c · (ψ_i |_s B)(ζ)` for every row `j`.
pub fn apply_hecke_numeric<P: VectorFunction + ?Sized>(
    op: &HeckeOperatorMatrix,
    psi: &P,
    s: SpectralParameter,
    zeta: f64,
) -> Result<Vec<Complex64>> {
    if psi.dim() != op.mu {
        return Err(Error::Domain(format!(
            "function has {} components, expected {}",
            psi.dim(),
            op.mu
        )));
    }
    check_point(zeta)?;
    let mut out = vec![Complex64::new(0.0, 0.0); op.mu];
    for (j, i, coeff, b) in op.all_terms() {
        let v = slash_eval_vector(psi, &b, s, zeta)?;
        out[j] += coeff as f64 * v[i];
    }
    Ok(out)
}

/// The image of `ψ` under a Hecke operator matrix, as a vector function.
pub struct HeckeImage<'a, P: ?Sized> {
    pub op: &'a HeckeOperatorMatrix,
    pub psi: &'a P,
    pub s: SpectralParameter,
}

impl<P: VectorFunction + ?Sized> VectorFunction for HeckeImage<'_, P> {
    fn dim(&self) -> usize {
        self.op.mu
    }

    fn eval(&self, x: f64) -> Result<Vec<Complex64>> {
        apply_hecke_numeric(self.op, self.psi, self.s, x)
    }
}

/// `R_ζ(z) = y / ((x − ζ)² + y²)` for `z = x + iy` in the upper half plane.
pub fn r_zeta(z: Complex64, zeta: f64) -> f64 {
    z.im / ((z.re - zeta).powi(2) + z.im * z.im)
}

/// `R_ζ(z)^s`.
pub fn r_zeta_pow(z: Complex64, zeta: f64, s: SpectralParameter) -> Complex64 {
    pos_pow(r_zeta(z, zeta), s.0)
}

/// Möbius action of a real matrix on a complex point.
pub fn moebius_complex(g: &IntMatrix2, z: Complex64) -> Complex64 {
    (g.a() as f64 * z + g.b() as f64) / (g.c() as f64 * z + g.d() as f64)
}

/// `−y² (∂_x² + ∂_y²) f` at `z` by second-order central differences.
pub fn laplace_fd<F: Fn(Complex64) -> Complex64>(f: F, z: Complex64, h: f64) -> Result<Complex64> {
    if !(h > 0.0 && h < z.im) {
        return Err(Error::Domain(format!("step {h} must lie in (0, Im z = {}))", z.im)));
    }
    let hx = Complex64::new(h, 0.0);
    let hy = Complex64::new(0.0, h);
    let centre = f(z);
    let dxx = f(z + hx) - 2.0 * centre + f(z - hx);
    let dyy = f(z + hy) - 2.0 * centre + f(z - hy);
    Ok(-(z.im * z.im) * (dxx + dyy) / (h * h))
}

/// `∫_path η(u, v)` with
/// `η(u, v) = (v ∂_y u − u ∂_y v) dx + (u ∂_x v − v ∂_x u) dy`,
/// using the composite midpoint rule with `panels` panels per segment and
/// central-difference partials.
pub fn eta_line_integral<U, V>(u: U, v: V, path: &[Complex64], panels: usize) -> Result<Complex64>
where
    U: Fn(Complex64) -> Complex64,
    V: Fn(Complex64) -> Complex64,
{
    eta_line_integral_with_step(u, v, path, panels, DEFAULT_PARTIAL_STEP)
}

pub fn eta_line_integral_with_step<U, V>(u: U, v: V, path: &[Complex64], panels: usize, h: f64) -> Result<Complex64>
where
    U: Fn(Complex64) -> Complex64,
    V: Fn(Complex64) -> Complex64,
{
    if panels == 0 {
        return Err(Error::Domain("at least one panel per segment is required".into()));
    }
    if let Some(p) = path.iter().find(|p| !(p.im > h)) {
        return Err(Error::Domain(format!(
            "path vertex {p} is not inside the upper half plane"
        )));
    }
    let hx = Complex64::new(h, 0.0);
    let hy = Complex64::new(0.0, h);
    let mut total = Complex64::new(0.0, 0.0);
    for w in path.windows(2) {
        let (z0, z1) = (w[0], w[1]);
        let dz = (z1 - z0) / panels as f64;
        for k in 0..panels {
            let z = z0 + (k as f64 + 0.5) * dz;
            let (uz, vz) = (u(z), v(z));
            let ux = (u(z + hx) - u(z - hx)) / (2.0 * h);
            let uy = (u(z + hy) - u(z - hy)) / (2.0 * h);
            let vx = (v(z + hx) - v(z - hx)) / (2.0 * h);
            let vy = (v(z + hy) - v(z - hy)) / (2.0 * h);
            total += (vz * uy - uz * vy) * dz.re + (uz * vx - vz * ux) * dz.im;
        }
    }
    Ok(total)
}

/// The closed counter-clockwise rectangle `[x0, x1] × [y0, y1]`.
pub fn rectangle_loop(x0: f64, x1: f64, y0: f64, y1: f64) -> Vec<Complex64> {
    vec![
        Complex64::new(x0, y0),
        Complex64::new(x1, y0),
        Complex64::new(x1, y1),
        Complex64::new(x0, y1),
        Complex64::new(x0, y0),
    ]
}

/// Relative error of the finite-difference Laplacian of `R_ζ^s` against
/// `s(1 − s) R_ζ^s` at `z`.
pub fn laplace_eigen_error(s: SpectralParameter, zeta: f64, z: Complex64, h: f64) -> Result<f64> {
    let f = |w: Complex64| r_zeta_pow(w, zeta, s);
    let exact = s.eigenvalue() * f(z);
    Ok((laplace_fd(f, z, h)? - exact).norm() / exact.norm())
}

/// `log(e_coarse / e_fine) / log(h_coarse / h_fine)`.
pub fn observed_order(e_coarse: f64, e_fine: f64, refinement: f64) -> f64 {
    (e_coarse / e_fine).ln() / refinement.ln()
}
