//! Radii of β-uniform convexity of order α, and conic-domain checks.
//!
//! A form F is β-uniformly convex of order α on |z| < r when
//! Re(1 + zF''/F') > β|zF''/F'| + α there. On the positive axis this
//! reduces to the sign of
//!
//! ```text
//! ψ(r) = (1 − α) + (1 + β)(1 + rF''(r)/F'(r) − 1),
//! ```
//!
//! which falls strictly from 1 − α at the origin to −∞ at the first zero b
//! of F'. The radius is its unique root in (0, b).

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{curvature_sum, CurvatureSeriesData, Form, FormKind};
use crate::kernel::ProductTruncation;
use crate::scalar::Real;
use crate::series::SeriesConfig;
use crate::zeros::ZeroOptions;

const MAX_ITERATIONS: usize = 200;
/// Smallest accepted root tolerance.
pub const MIN_ROOT_TOL: f64 = 1e-14;
/// Limit on the uniform-convexity equation at the computed radius.
pub const UC_RESIDUAL_LIMIT: f64 = 1e-9;
/// Zeros per table used for disk sampling.
pub const DEFAULT_DISK_ZEROS: usize = 300;
const AXIS_SAMPLES: usize = 64;

/// (α, β) with α ∈ [0, 1) and β ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UniformityParams<T> {
    alpha: T,
    beta: T,
}

impl<T: Real> UniformityParams<T> {
    pub fn new(alpha: T, beta: T) -> Result<Self> {
        if !(alpha >= T::zero() && alpha < T::one()) {
            return Err(Error::InvalidParameter(format!(
                "alpha = {alpha}: alpha in [0, 1) required"
            )));
        }
        if !(beta >= T::zero()) || !beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "beta = {beta}: finite beta >= 0 required"
            )));
        }
        Ok(Self { alpha, beta })
    }

    /// α = 0, β = 1.
    pub fn uniform() -> Self {
        Self {
            alpha: T::zero(),
            beta: T::one(),
        }
    }

    /// α = 0, β = 0.
    pub fn convex() -> Self {
        Self {
            alpha: T::zero(),
            beta: T::zero(),
        }
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }
}

/// Tolerances for the radius solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig<T> {
    pub series: SeriesConfig<T>,
    pub zeros: ZeroOptions<T>,
    root_tol: T,
}

impl<T: Real> Default for SolverConfig<T> {
    fn default() -> Self {
        Self {
            series: SeriesConfig::default(),
            zeros: ZeroOptions::default(),
            root_tol: T::lit(1e-12),
        }
    }
}

impl<T: Real> SolverConfig<T> {
    pub fn with_root_tol(mut self, tol: T) -> Result<Self> {
        if !(tol >= T::lit(MIN_ROOT_TOL)) || !tol.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "root tolerance {tol:e} below {MIN_ROOT_TOL:e}"
            )));
        }
        self.root_tol = tol;
        Ok(self)
    }

    pub fn root_tol(&self) -> T {
        self.root_tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusResult<T> {
    pub radius: T,
    /// First singularity b; the root lies in (0, b).
    pub bracket_hi: T,
    pub iterations: usize,
    /// ψ at the returned radius.
    pub residual: T,
}

/// ψ(r) = (1 − α) + (1 + β)(curvature − 1).
pub fn psi<T: Real>(form: &Form<T>, up: UniformityParams<T>, r: T, cfg: &SeriesConfig<T>) -> Result<T> {
    let c = form.curvature_real(r, cfg)?;
    Ok(T::one() - up.alpha + (T::one() + up.beta) * (c - T::one()))
}

/// Left-hand side of the radius equation in its expanded form, in terms of
/// s_{μ−1/2,1/2} or H_ν and their derivatives. Equals
/// `form.kind().printed_factor()`·ψ.
pub fn printed_lhs<T: Real>(form: &Form<T>, up: UniformityParams<T>, r: T, cfg: &SeriesConfig<T>) -> Result<T> {
    let one = T::one();
    let two = T::two();
    let half = T::half();
    let x = form.param().value();
    let (a, b) = (one - up.alpha, one + up.beta);
    let k = form.kernel();
    Ok(match form.kind() {
        FormKind::F | FormKind::U => {
            let s = k.jet(r, cfg)?;
            let weight = if form.kind() == FormKind::F {
                one / (x + half) - one
            } else {
                one / (x + one) - one
            };
            a + b * (r * s.d2 / s.d1 + weight * r * s.d1 / s.value)
        }
        FormKind::G => {
            let s = k.jet(r, cfg)?;
            let ratio = ((T::lit(1.5) - x) * s.d1 + r * s.d2) / ((half - x) * s.value + r * s.d1);
            a - b * (half + x - r * ratio)
        }
        FormKind::H => {
            let t = r.sqrt();
            let s = k.jet(t, cfg)?;
            let ratio = ((T::lit(2.5) - x) * s.d1 + t * s.d2) / ((T::lit(1.5) - x) * s.value + t * s.d1);
            T::lit(4.0) * a - b * (one + two * x - two * t * ratio)
        }
        FormKind::V => {
            let h = k.jet(r, cfg)?;
            let ratio = ((one - x) * h.d1 + r * h.d2) / (-x * h.value + r * h.d1);
            a - b * (one + x - r * ratio)
        }
        FormKind::W => {
            let t = r.sqrt();
            let h = k.jet(t, cfg)?;
            let ratio = ((two - x) * h.d1 + t * h.d2) / ((one - x) * h.value + t * h.d1);
            two * a - b * (one + x - t * ratio)
        }
    })
}

/// Left-hand side of the α = 0, β = 1 equation in its expanded form (as
/// plotted in the standard figures).
pub fn uc_equation_lhs<T: Real>(form: &Form<T>, r: T, cfg: &SeriesConfig<T>) -> Result<T> {
    let one = T::one();
    let two = T::two();
    let half = T::half();
    let x = form.param().value();
    let k = form.kernel();
    Ok(match form.kind() {
        FormKind::F | FormKind::U => {
            let s = k.jet(r, cfg)?;
            let weight = if form.kind() == FormKind::F {
                one / (x + half) - one
            } else {
                one / (x + one) - one
            };
            one + two * (r * s.d2 / s.d1 + weight * r * s.d1 / s.value)
        }
        FormKind::G => {
            let s = k.jet(r, cfg)?;
            let ratio = ((T::lit(1.5) - x) * s.d1 + r * s.d2) / ((half - x) * s.value + r * s.d1);
            one - two * (half + x - r * ratio)
        }
        FormKind::H => {
            let t = r.sqrt();
            let s = k.jet(t, cfg)?;
            half - x + t * ((T::lit(2.5) - x) * s.d1 + t * s.d2) / ((T::lit(1.5) - x) * s.value + t * s.d1)
        }
        FormKind::V => {
            let h = k.jet(r, cfg)?;
            one - two * (one + x - r * ((one - x) * h.d1 + r * h.d2) / (-x * h.value + r * h.d1))
        }
        FormKind::W => {
            let t = r.sqrt();
            let h = k.jet(t, cfg)?;
            -x + t * ((two - x) * h.d1 + t * h.d2) / ((one - x) * h.value + t * h.d1)
        }
    })
}

/// Smallest positive root of ψ, by bisection on (1e-12·b, b(1 − 1e-9)).
pub fn radius<T: Real>(form: &Form<T>, up: UniformityParams<T>, cfg: &SolverConfig<T>) -> Result<RadiusResult<T>> {
    let b = form.singularity(&cfg.zeros, &cfg.series)?;
    let f = |r: T| psi(form, up, r, &cfg.series);
    let mut lo = T::lit(1e-12) * b;
    let mut hi = b * (T::one() - T::lit(1e-9));
    let psi_lo = f(lo)?;
    let psi_hi = f(hi)?;
    if !(psi_lo > T::zero()) || !(psi_hi < T::zero()) {
        return Err(Error::BracketFailure {
            lo: lo.to_f64_lossy(),
            hi: hi.to_f64_lossy(),
            psi_lo: psi_lo.to_f64_lossy(),
            psi_hi: psi_hi.to_f64_lossy(),
        });
    }
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS && hi - lo > cfg.root_tol {
        iterations += 1;
        let mid = lo + (hi - lo) / T::two();
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid)?;
        if v > T::zero() {
            lo = mid;
        } else if v < T::zero() {
            hi = mid;
        } else {
            lo = mid;
            hi = mid;
        }
    }
    let root = lo + (hi - lo) / T::two();
    Ok(RadiusResult {
        radius: root,
        bracket_hi: b,
        iterations,
        residual: f(root)?,
    })
}

/// Radius of uniform convexity (α = 0, β = 1), with the expanded equation
/// checked at the root.
pub fn uc_radius<T: Real>(form: &Form<T>, cfg: &SolverConfig<T>) -> Result<RadiusResult<T>> {
    let res = radius(form, UniformityParams::uniform(), cfg)?;
    let residual = uc_equation_lhs(form, res.radius, &cfg.series)?;
    if !(residual.abs() <= T::lit(UC_RESIDUAL_LIMIT)) {
        return Err(Error::ResidualTooLarge {
            residual: residual.to_f64_lossy(),
            limit: UC_RESIDUAL_LIMIT,
        });
    }
    Ok(res)
}

/// Re(w) > β·|w − 1| + α.
pub fn conic_contains<T: Real>(wv: Complex<T>, up: UniformityParams<T>) -> bool {
    conic_margin(wv, up) > T::zero()
}

/// Re(w) − β·|w − 1| − α; positive inside the conic domain.
pub fn conic_margin<T: Real>(wv: Complex<T>, up: UniformityParams<T>) -> T {
    let d = wv - Complex::new(T::one(), T::zero());
    wv.re - up.beta * d.re.hypot(d.im) - up.alpha
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainShape {
    Elliptic,
    Parabolic,
    Hyperbolic,
    HalfPlane,
}

impl DomainShape {
    pub fn name(self) -> &'static str {
        match self {
            DomainShape::Elliptic => "elliptic",
            DomainShape::Parabolic => "parabolic",
            DomainShape::Hyperbolic => "hyperbolic",
            DomainShape::HalfPlane => "half_plane",
        }
    }
}

/// Shape of the conic domain for a given β.
pub fn classify_domain<T: Real>(beta: T) -> Result<DomainShape> {
    if !(beta >= T::zero()) {
        return Err(Error::InvalidParameter(format!("beta = {beta}: beta >= 0 required")));
    }
    Ok(if beta > T::one() {
        DomainShape::Elliptic
    } else if beta == T::one() {
        DomainShape::Parabolic
    } else if beta > T::zero() {
        DomainShape::Hyperbolic
    } else {
        DomainShape::HalfPlane
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiskReport<T> {
    /// Points evaluated: the random draws plus the real-axis points.
    pub points: usize,
    pub inside_fraction: T,
    /// Smallest conic margin seen (+∞ when nothing was sampled).
    pub worst_margin: T,
}

/// Samples the curvature on |z| ≤ r and checks conic membership.
///
/// Draws `samples` points uniformly in the disk from a ChaCha8 stream
/// seeded with `seed`, then adds 64 points on the real axis within 1e-3·r of
/// ±r. With `samples = 0` nothing is evaluated.
pub fn verify_disk_with<T: Real>(
    data: &CurvatureSeriesData<T>,
    up: UniformityParams<T>,
    r: T,
    samples: usize,
    seed: u64,
    trunc: ProductTruncation,
) -> Result<DiskReport<T>> {
    if !(r > T::zero()) || !(r < data.disk_radius()) {
        return Err(Error::PreconditionViolation(format!(
            "disk radius {r} must lie in (0, {})",
            data.disk_radius()
        )));
    }
    if samples == 0 {
        return Ok(DiskReport {
            points: 0,
            inside_fraction: T::one(),
            worst_margin: T::infinity(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(samples + AXIS_SAMPLES);
    for _ in 0..samples {
        let rho = r * T::lit(rng.gen::<f64>()).sqrt();
        let theta = T::lit(rng.gen::<f64>()) * T::two() * T::PI();
        points.push(Complex::from_polar(rho, theta));
    }
    let half = AXIS_SAMPLES / 2;
    for j in 0..half {
        let x = r * (T::one() - T::lit(1e-3) * T::from_usize_lossy(j) / T::from_usize_lossy(half));
        points.push(Complex::new(x, T::zero()));
        points.push(Complex::new(-x, T::zero()));
    }
    let mut inside = 0usize;
    let mut worst = T::infinity();
    for z in &points {
        let m = conic_margin(curvature_sum(data, *z, trunc)?, up);
        if m > T::zero() {
            inside += 1;
        }
        worst = worst.min(m);
    }
    Ok(DiskReport {
        points: points.len(),
        inside_fraction: T::from_usize_lossy(inside) / T::from_usize_lossy(points.len()),
        worst_margin: worst,
    })
}

/// [`verify_disk_with`] with fresh 300-zero tables.
pub fn verify_disk<T: Real>(
    form: &Form<T>,
    up: UniformityParams<T>,
    r: T,
    samples: usize,
    seed: u64,
    cfg: &SolverConfig<T>,
) -> Result<DiskReport<T>> {
    let data = form.series_data(DEFAULT_DISK_ZEROS, &cfg.zeros, &cfg.series)?;
    verify_disk_with(&data, up, r, samples, seed, ProductTruncation::new(DEFAULT_DISK_ZEROS)?)
}
