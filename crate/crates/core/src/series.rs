//! Generalized hypergeometric ₁F₂ series, its termwise derivatives, and the
//! real Gamma function.
//!
//! Summation is plain forward accumulation with a term-ratio recurrence. For
//! the arguments used by the kernels (|x| = z²/4 ≲ 100) the alternating
//! series loses only a handful of digits to cancellation in `f64`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Truncation controls for series summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig<T> {
    rel_tol: T,
    max_terms: usize,
}

impl<T: Real> SeriesConfig<T> {
    pub const MIN_TERMS: usize = 50;

    pub fn new(rel_tol: T, max_terms: usize) -> Result<Self> {
        if !(rel_tol > T::zero() && rel_tol < T::lit(1e-6)) {
            return Err(Error::InvalidParameter(format!(
                "series rel_tol must lie in (0, 1e-6), got {rel_tol:e}"
            )));
        }
        if max_terms < Self::MIN_TERMS {
            return Err(Error::InvalidParameter(format!(
                "series max_terms must be >= {}, got {max_terms}",
                Self::MIN_TERMS
            )));
        }
        Ok(Self { rel_tol, max_terms })
    }

    pub fn rel_tol(&self) -> T {
        self.rel_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl<T: Real> Default for SeriesConfig<T> {
    fn default() -> Self {
        Self {
            rel_tol: T::lit(1e-15),
            max_terms: 400,
        }
    }
}

/// Parameters and argument of ₁F₂(a; b1, b2; x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp1F2Args<T> {
    pub a: T,
    pub b1: T,
    pub b2: T,
    pub x: Complex<T>,
}

impl<T: Real> Hyp1F2Args<T> {
    pub fn new(a: T, b1: T, b2: T, x: Complex<T>) -> Result<Self> {
        let args = Self { a, b1, b2, x };
        args.validate()?;
        Ok(args)
    }

    pub fn real(a: T, b1: T, b2: T, x: T) -> Result<Self> {
        Self::new(a, b1, b2, Complex::new(x, T::zero()))
    }

    fn validate(&self) -> Result<()> {
        for (name, b) in [("b1", self.b1), ("b2", self.b2)] {
            if !b.is_finite() || is_nonpositive_integer(b) {
                return Err(Error::InvalidParameter(format!(
                    "{name} = {b} is a pole of the series denominators"
                )));
            }
        }
        if !self.a.is_finite() || !self.x.re.is_finite() || !self.x.im.is_finite() {
            return Err(Error::InvalidParameter("non-finite series input".into()));
        }
        Ok(())
    }

    /// Parameters of the k-times differentiated series and the constant
    /// factor (a)_k / ((b1)_k (b2)_k) in front of it.
    fn shifted(&self, k: usize) -> (Self, T) {
        let mut scale = T::one();
        for j in 0..k {
            let j = T::from_usize_lossy(j);
            scale = scale * (self.a + j) / ((self.b1 + j) * (self.b2 + j));
        }
        let k = T::from_usize_lossy(k);
        (
            Self {
                a: self.a + k,
                b1: self.b1 + k,
                b2: self.b2 + k,
                x: self.x,
            },
            scale,
        )
    }

    #[inline]
    fn ratio(&self, n: usize) -> Complex<T> {
        let n = T::from_usize_lossy(n);
        self.x * ((self.a + n) / ((self.b1 + n) * (self.b2 + n) * (n + T::one())))
    }
}

fn is_nonpositive_integer<T: Real>(b: T) -> bool {
    b <= T::zero() && b == b.round()
}

/// ₁F₂(a; b1, b2; x) = Σ (a)_n / ((b1)_n (b2)_n) · xⁿ / n!.
///
/// Stops once the next term is below `rel_tol` relative to the running sum,
/// or below `rel_tol · ε` relative to the largest term seen (the rounding
/// floor, which matters only next to a zero of the sum).
pub fn hyp1f2<T: Real>(args: &Hyp1F2Args<T>, cfg: &SeriesConfig<T>) -> Result<Complex<T>> {
    args.validate()?;
    let mut term = Complex::new(T::one(), T::zero());
    let mut sum = term;
    let mut largest = T::one();
    let floor = cfg.rel_tol * T::epsilon();
    for n in 0..cfg.max_terms {
        let next = term * args.ratio(n);
        let mag = next.norm();
        if mag <= cfg.rel_tol * sum.norm() || mag <= floor * largest {
            return Ok(sum);
        }
        term = next;
        sum = sum + term;
        largest = largest.max(mag);
    }
    Err(Error::NonConvergence {
        terms: cfg.max_terms,
        abs_x: args.x.norm().to_f64_lossy(),
    })
}

/// k-th derivative in `x`, by termwise differentiation (an exact shift of the
/// coefficients), with the same truncation contract as [`hyp1f2`].
pub fn hyp1f2_deriv<T: Real>(args: &Hyp1F2Args<T>, k: usize, cfg: &SeriesConfig<T>) -> Result<Complex<T>> {
    args.validate()?;
    if k == 0 {
        return hyp1f2(args, cfg);
    }
    let (shifted, scale) = args.shifted(k);
    if scale == T::zero() {
        return Ok(Complex::new(T::zero(), T::zero()));
    }
    Ok(hyp1f2(&shifted, cfg)? * scale)
}

/// Sum of the first `n_terms` terms, without any stopping rule.
pub fn hyp1f2_partial_sum<T: Real>(args: &Hyp1F2Args<T>, n_terms: usize) -> Complex<T> {
    let mut term = Complex::new(T::one(), T::zero());
    let mut sum = Complex::new(T::zero(), T::zero());
    for n in 0..n_terms {
        sum = sum + term;
        term = term * args.ratio(n);
    }
    sum
}

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos<T: Real>(x: T) -> T {
    // valid for x >= 1/2
    let x = x - T::one();
    let mut acc = T::lit(LANCZOS_COEF[0]);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc = acc + T::lit(c) / (x + T::from_usize_lossy(i));
    }
    let t = x + T::lit(LANCZOS_G) + T::half();
    (T::two() * T::PI()).sqrt() * t.powf(x + T::half()) * (-t).exp() * acc
}

/// Γ(x) for x > 0.
pub fn gamma_real<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::InvalidParameter(format!("gamma_real requires x > 0, got {x}")));
    }
    Ok(gamma_signed(x))
}

/// Γ(x) on the whole real line (reflection below 1/2). Infinite at the poles.
pub(crate) fn gamma_signed<T: Real>(x: T) -> T {
    if x < T::half() {
        if x == x.round() {
            return T::infinity();
        }
        T::PI() / ((T::PI() * x).sin() * lanczos(T::one() - x))
    } else {
        lanczos(x)
    }
}

/// 1/Γ(x), zero at the non-positive integers.
pub(crate) fn rgamma<T: Real>(x: T) -> T {
    if x <= T::zero() && x == x.round() {
        T::zero()
    } else {
        T::one() / gamma_signed(x)
    }
}
