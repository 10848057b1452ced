//! Lommel s_{μ−1/2,1/2} and Struve H_ν kernels.
//!
//! Both kernels share one shape,
//!
//! ```text
//! K(z) = C · z^p · E(z),    E(z) = ₁F₂(1; b1, b2; −z²/4),
//! ```
//!
//! with
//!
//! | kernel | p       | C                         | b1        | b2        |
//! |--------|---------|---------------------------|-----------|-----------|
//! | Lommel | μ + 1/2 | 1 / (μ(μ+1))              | (μ+2)/2   | (μ+3)/2   |
//! | Struve | ν + 1   | 1 / (√π 2^ν Γ(ν+3/2))     | 3/2       | ν + 3/2   |
//!
//! `E` is the even entire factor; all zero scans run on `E` and on the
//! entire combinations listed in [`ZeroTarget`], never on `K` itself.
//!
//! Evaluation uses the ₁F₂ series for `z <= SERIES_LIMIT` and large-argument
//! expansions beyond it (see [`asymptotic`]), where the series loses too many
//! digits to cancellation in double precision.

pub mod asymptotic;
mod product;

pub use product::{ml_product, ProductKind, ProductTruncation, TailCorrection};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::series::{gamma_signed, hyp1f2_deriv, rgamma, Hyp1F2Args, SeriesConfig};

/// Crossover between series summation and the large-argument expansions.
pub const SERIES_LIMIT: f64 = 19.0;

/// Which kernel a value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Lommel,
    Struve,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Lommel => "lommel",
            Family::Struve => "struve",
        }
    }

    /// Symbol of the shape parameter.
    pub fn param_symbol(self) -> &'static str {
        match self {
            Family::Lommel => "mu",
            Family::Struve => "nu",
        }
    }
}

/// μ of the Lommel function s_{μ−1/2,1/2}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LommelParam<T> {
    mu: T,
    in_hypothesis: bool,
}

impl<T: Real> LommelParam<T> {
    /// Accepts μ ∈ (−1, 1) with μ ≠ 0 and μ ≠ −1/2.
    pub fn new(mu: T) -> Result<Self> {
        if !Self::hypothesis_holds(mu) {
            return Err(Error::InvalidParameter(format!(
                "mu = {mu}: mu in (-1, 1), mu != 0 and mu != -1/2 required"
            )));
        }
        Ok(Self {
            mu,
            in_hypothesis: true,
        })
    }

    /// Accepts any μ for which the kernel is defined (μ(μ+1) ≠ 0, finite).
    pub fn new_unchecked(mu: T) -> Result<Self> {
        if !mu.is_finite() || mu == T::zero() || mu == -T::one() {
            return Err(Error::InvalidParameter(format!("mu = {mu}: mu(mu+1) != 0 required")));
        }
        if mu <= -T::two() && (mu + T::two()) == (mu + T::two()).round() {
            return Err(Error::InvalidParameter(format!(
                "mu = {mu}: series denominators have a pole"
            )));
        }
        Ok(Self {
            mu,
            in_hypothesis: Self::hypothesis_holds(mu),
        })
    }

    fn hypothesis_holds(mu: T) -> bool {
        mu.is_finite() && mu > -T::one() && mu < T::one() && mu != T::zero() && mu != -T::half()
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    pub fn in_hypothesis(&self) -> bool {
        self.in_hypothesis
    }
}

/// ν of the Struve function H_ν.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StruveParam<T> {
    nu: T,
    in_hypothesis: bool,
}

impl<T: Real> StruveParam<T> {
    /// Accepts |ν| ≤ 1/2.
    pub fn new(nu: T) -> Result<Self> {
        if !(nu.is_finite() && nu.abs() <= T::half()) {
            return Err(Error::InvalidParameter(format!("nu = {nu}: |nu| <= 1/2 required")));
        }
        Ok(Self {
            nu,
            in_hypothesis: true,
        })
    }

    /// Accepts any ν for which the series is defined (−ν − 3/2 ∉ ℕ).
    pub fn new_unchecked(nu: T) -> Result<Self> {
        let b2 = nu + T::lit(1.5);
        if !nu.is_finite() || (b2 <= T::zero() && b2 == b2.round()) {
            return Err(Error::InvalidParameter(format!(
                "nu = {nu}: -nu - 3/2 must not be a non-negative integer"
            )));
        }
        Ok(Self {
            nu,
            in_hypothesis: nu.abs() <= T::half(),
        })
    }

    pub fn nu(&self) -> T {
        self.nu
    }

    pub fn in_hypothesis(&self) -> bool {
        self.in_hypothesis
    }
}

/// Value and first two derivatives at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet<T> {
    pub value: T,
    pub d1: T,
    pub d2: T,
}

impl<T: Real> Jet<T> {
    pub fn get(&self, order: usize) -> T {
        match order {
            0 => self.value,
            1 => self.d1,
            _ => self.d2,
        }
    }
}

/// Entire functions whose positive zeros are tabulated.
///
/// With `K = C z^p E`, each target is `q·E(z) + z·E'(z)` for a fixed `q`,
/// which shares its positive zeros with the named kernel expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZeroTarget {
    /// `E`: zeros of K (ξ_{μ,n}, h_{ν,n}).
    Kernel,
    /// `pE + zE'`: zeros of K' (ξ'_{μ,n}, h'_{ν,n}).
    KernelDeriv,
    /// `E + zE'`: zeros of (1−p)K + zK', i.e. of g′_μ and v′_ν
    /// (γ_{μ,n}, ς_{ν,n}).
    SecondFormDeriv,
    /// `2E + tE'`: zeros in t = √z of (2−p)K(t) + tK'(t); their squares are
    /// the zeros of h′_μ and w′_ν.
    ThirdFormDeriv,
}

impl ZeroTarget {
    pub fn label(self) -> &'static str {
        match self {
            ZeroTarget::Kernel => "kernel",
            ZeroTarget::KernelDeriv => "kernel-deriv",
            ZeroTarget::SecondFormDeriv => "second-form-deriv",
            ZeroTarget::ThirdFormDeriv => "third-form-deriv",
        }
    }
}

/// A kernel with its parameter resolved into the shared shape constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kernel<T> {
    family: Family,
    shape: T,
    in_hypothesis: bool,
    power: T,
    scale: T,
    b1: T,
    b2: T,
}

impl<T: Real> Kernel<T> {
    pub fn lommel(p: LommelParam<T>) -> Self {
        let mu = p.mu();
        Self {
            family: Family::Lommel,
            shape: mu,
            in_hypothesis: p.in_hypothesis(),
            power: mu + T::half(),
            scale: T::one() / (mu * (mu + T::one())),
            b1: (mu + T::two()) / T::two(),
            b2: (mu + T::lit(3.0)) / T::two(),
        }
    }

    pub fn struve(p: StruveParam<T>) -> Self {
        let nu = p.nu();
        let norm = T::PI().sqrt() * T::two().powf(nu) * gamma_signed(nu + T::lit(1.5));
        Self {
            family: Family::Struve,
            shape: nu,
            in_hypothesis: p.in_hypothesis(),
            power: nu + T::one(),
            scale: T::one() / norm,
            b1: T::lit(1.5),
            b2: nu + T::lit(1.5),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// μ or ν.
    pub fn shape(&self) -> T {
        self.shape
    }

    pub fn in_hypothesis(&self) -> bool {
        self.in_hypothesis
    }

    /// Exponent p of the outer power z^p.
    pub fn power(&self) -> T {
        self.power
    }

    /// Constant C in front of z^p E(z).
    pub fn scale(&self) -> T {
        self.scale
    }

    /// The ₁F₂ lower parameters (b1, b2).
    pub fn series_params(&self) -> (T, T) {
        (self.b1, self.b2)
    }

    /// E(z) = ₁F₂(1; b1, b2; −z²/4) evaluated by the series only (any real
    /// z, no branch switch).
    pub fn entire_series(&self, z: T, cfg: &SeriesConfig<T>) -> Result<Jet<T>> {
        let x = -z * z / T::lit(4.0);
        let args = Hyp1F2Args::new(T::one(), self.b1, self.b2, Complex::new(x, T::zero()))?;
        let f0 = hyp1f2_deriv(&args, 0, cfg)?.re;
        let f1 = hyp1f2_deriv(&args, 1, cfg)?.re;
        let f2 = hyp1f2_deriv(&args, 2, cfg)?.re;
        Ok(Jet {
            value: f0,
            d1: -f1 * z / T::two(),
            d2: f2 * z * z / T::lit(4.0) - f1 / T::two(),
        })
    }

    /// Entire factor E and its first two derivatives at z > 0.
    pub fn entire(&self, z: T, cfg: &SeriesConfig<T>) -> Result<Jet<T>> {
        check_positive(z)?;
        if z <= T::lit(SERIES_LIMIT) {
            return self.entire_series(z, cfg);
        }
        let k = self.jet_large(z);
        Ok(self.entire_from_kernel(z, &k))
    }

    /// K, K', K'' at z > 0.
    pub fn jet(&self, z: T, cfg: &SeriesConfig<T>) -> Result<Jet<T>> {
        check_positive(z)?;
        if z <= T::lit(SERIES_LIMIT) {
            let e = self.entire_series(z, cfg)?;
            Ok(self.kernel_from_entire(z, &e))
        } else {
            Ok(self.jet_large(z))
        }
    }

    /// K^{(order)}(z) for order 0, 1, 2.
    pub fn eval(&self, z: T, order: usize, cfg: &SeriesConfig<T>) -> Result<T> {
        if order > 2 {
            return Err(Error::InvalidParameter(format!(
                "derivative order {order} not supported (0, 1, 2)"
            )));
        }
        Ok(self.jet(z, cfg)?.get(order))
    }

    /// Value of a [`ZeroTarget`] function at z > 0.
    pub fn target(&self, which: ZeroTarget, z: T, cfg: &SeriesConfig<T>) -> Result<T> {
        let e = self.entire(z, cfg)?;
        Ok(match which {
            ZeroTarget::Kernel => e.value,
            ZeroTarget::KernelDeriv => self.power * e.value + z * e.d1,
            ZeroTarget::SecondFormDeriv => e.value + z * e.d1,
            ZeroTarget::ThirdFormDeriv => T::two() * e.value + z * e.d1,
        })
    }

    /// Derivative in z of a [`ZeroTarget`] function at z > 0.
    pub fn target_deriv(&self, which: ZeroTarget, z: T, cfg: &SeriesConfig<T>) -> Result<T> {
        let e = self.entire(z, cfg)?;
        let q = match which {
            ZeroTarget::Kernel => return Ok(e.d1),
            ZeroTarget::KernelDeriv => self.power,
            ZeroTarget::SecondFormDeriv => T::one(),
            ZeroTarget::ThirdFormDeriv => T::two(),
        };
        Ok((q + T::one()) * e.d1 + z * e.d2)
    }

    /// Right-hand side of the inhomogeneous Bessel equation
    /// z²K'' + zK' + (z² − ν'²)K = rhs(z).
    pub fn ode_rhs(&self, z: T) -> T {
        match self.family {
            Family::Lommel => z.powf(self.power),
            Family::Struve => {
                let nu = self.shape;
                T::lit(4.0) * (z / T::two()).powf(nu + T::one()) * rgamma(nu + T::half()) / T::PI().sqrt()
            }
        }
    }

    /// ν'² of the Bessel operator (1/4 for the Lommel kernel).
    pub fn bessel_order_sq(&self) -> T {
        match self.family {
            Family::Lommel => T::lit(0.25),
            Family::Struve => self.shape * self.shape,
        }
    }

    fn kernel_from_entire(&self, z: T, e: &Jet<T>) -> Jet<T> {
        let p = self.power;
        let zp = z.powf(p);
        let c = self.scale;
        Jet {
            value: c * zp * e.value,
            d1: c * zp / z * (p * e.value + z * e.d1),
            d2: c * zp / (z * z) * (p * (p - T::one()) * e.value + T::two() * p * z * e.d1 + z * z * e.d2),
        }
    }

    fn entire_from_kernel(&self, z: T, k: &Jet<T>) -> Jet<T> {
        let p = self.power;
        let czp = self.scale * z.powf(p);
        let e0 = k.value / czp;
        let ze1 = z * k.d1 / czp - p * e0;
        let z2e2 = z * z * k.d2 / czp - p * (p - T::one()) * e0 - T::two() * p * ze1;
        Jet {
            value: e0,
            d1: ze1 / z,
            d2: z2e2 / (z * z),
        }
    }

    fn jet_large(&self, z: T) -> Jet<T> {
        let (value, d1) = match self.family {
            Family::Lommel => asymptotic::lommel_large(self.shape, z),
            Family::Struve => asymptotic::struve_large(self.shape, z),
        };
        // second derivative from the differential equation
        let d2 = (self.ode_rhs(z) - z * d1 - (z * z - self.bessel_order_sq()) * value) / (z * z);
        Jet { value, d1, d2 }
    }
}

fn check_positive<T: Real>(z: T) -> Result<()> {
    if !(z > T::zero()) || !z.is_finite() {
        return Err(Error::PreconditionViolation(format!(
            "z must be finite and > 0, got {z}"
        )));
    }
    Ok(())
}

/// s_{μ−1/2,1/2}(z) for z > 0.
pub fn lommel_s<T: Real>(p: LommelParam<T>, z: T, cfg: &SeriesConfig<T>) -> Result<T> {
    Kernel::lommel(p).eval(z, 0, cfg)
}

/// First or second derivative of s_{μ−1/2,1/2} at z > 0.
pub fn lommel_s_deriv<T: Real>(p: LommelParam<T>, z: T, order: usize, cfg: &SeriesConfig<T>) -> Result<T> {
    check_order(order)?;
    Kernel::lommel(p).eval(z, order, cfg)
}

/// H_ν(z) for z > 0.
pub fn struve_h<T: Real>(p: StruveParam<T>, z: T, cfg: &SeriesConfig<T>) -> Result<T> {
    Kernel::struve(p).eval(z, 0, cfg)
}

/// First or second derivative of H_ν at z > 0.
pub fn struve_h_deriv<T: Real>(p: StruveParam<T>, z: T, order: usize, cfg: &SeriesConfig<T>) -> Result<T> {
    check_order(order)?;
    Kernel::struve(p).eval(z, order, cfg)
}

fn check_order(order: usize) -> Result<()> {
    if order == 1 || order == 2 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "derivative order must be 1 or 2, got {order}"
        )))
    }
}

/// H_{1/2}(z) = √(2/(πz)) (1 − cos z).
pub fn struve_half_closed_form<T: Real>(z: T) -> T {
    (T::two() / (T::PI() * z)).sqrt() * (T::one() - z.cos())
}

#[cfg(test)]
mod tests;
