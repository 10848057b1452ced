//! The six normalized forms and their curvature 1 + zF''(z)/F'(z).
//!
//! With K = C z^p E (see [`crate::kernel`]) the forms are
//!
//! ```text
//! f_μ, u_ν:  (K/C)^{1/p}         = z E(z)^{1/p}
//! g_μ, v_ν:  z^{1−p} K(z) / C    = z E(z)
//! h_μ, w_ν:  z^{(2−p)/2} K(√z)/C = z E(√z)
//! ```
//!
//! On the positive axis the curvature is assembled from kernel jets. On
//! complex disks it is assembled from zero tables:
//!
//! ```text
//! f, u:  1 − Σ 2z²/(d_n² − z²) − w Σ 2z²/(ξ_n² − z²),   w = 1/p − 1
//! g, v:  1 − Σ 2z²/(d_n² − z²)
//! h, w:  1 − Σ z/(d_n² − z)
//! ```
//!
//! where d_n are the zeros of the form's derivative (in t = √z for h, w)
//! and ξ_n the zeros of the kernel.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::kernel::{Family, Jet, Kernel, LommelParam, ProductTruncation, StruveParam, TailCorrection, ZeroTarget};
use crate::scalar::Real;
use crate::series::SeriesConfig;
use crate::zeros::{kernel_zero_table, positive_zeros, ZeroOptions, ZeroTable};

/// Denominators below this magnitude count as a singularity.
const SINGULAR_DENOMINATOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    F,
    G,
    H,
    U,
    V,
    W,
}

/// How a form is built from its entire factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Normalization {
    /// z E(z)^{1/p}
    Power,
    /// z E(z)
    Linear,
    /// z E(√z)
    Root,
}

impl FormKind {
    pub const ALL: [FormKind; 6] = [
        FormKind::F,
        FormKind::G,
        FormKind::H,
        FormKind::U,
        FormKind::V,
        FormKind::W,
    ];

    pub fn family(self) -> Family {
        match self {
            FormKind::F | FormKind::G | FormKind::H => Family::Lommel,
            _ => Family::Struve,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            FormKind::F => "f",
            FormKind::G => "g",
            FormKind::H => "h",
            FormKind::U => "u",
            FormKind::V => "v",
            FormKind::W => "w",
        }
    }

    /// Positive constant c with (expanded radius equation LHS) = c·ψ.
    pub fn printed_factor(self) -> u32 {
        match self {
            FormKind::H => 4,
            FormKind::W => 2,
            _ => 1,
        }
    }

    fn normalization(self) -> Normalization {
        match self {
            FormKind::F | FormKind::U => Normalization::Power,
            FormKind::G | FormKind::V => Normalization::Linear,
            FormKind::H | FormKind::W => Normalization::Root,
        }
    }

    /// Entire function whose zeros locate the singularities of the curvature.
    pub fn derivative_target(self) -> ZeroTarget {
        match self.normalization() {
            Normalization::Power => ZeroTarget::KernelDeriv,
            Normalization::Linear => ZeroTarget::SecondFormDeriv,
            Normalization::Root => ZeroTarget::ThirdFormDeriv,
        }
    }
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for FormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FormKind::ALL
            .into_iter()
            .find(|k| k.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown form '{s}' (expected one of f, g, h, u, v, w)")))
    }
}

/// μ for the Lommel forms, ν for the Struve forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShapeParam<T> {
    Mu(LommelParam<T>),
    Nu(StruveParam<T>),
}

impl<T: Real> ShapeParam<T> {
    pub fn mu(mu: T) -> Result<Self> {
        LommelParam::new(mu).map(ShapeParam::Mu)
    }

    pub fn nu(nu: T) -> Result<Self> {
        StruveParam::new(nu).map(ShapeParam::Nu)
    }

    /// Parameter for `family` without the hypothesis checks (poles are
    /// still rejected).
    pub fn unchecked(family: Family, value: T) -> Result<Self> {
        match family {
            Family::Lommel => LommelParam::new_unchecked(value).map(ShapeParam::Mu),
            Family::Struve => StruveParam::new_unchecked(value).map(ShapeParam::Nu),
        }
    }

    pub fn checked(family: Family, value: T) -> Result<Self> {
        match family {
            Family::Lommel => Self::mu(value),
            Family::Struve => Self::nu(value),
        }
    }

    pub fn value(&self) -> T {
        match self {
            ShapeParam::Mu(p) => p.mu(),
            ShapeParam::Nu(p) => p.nu(),
        }
    }

    pub fn family(&self) -> Family {
        match self {
            ShapeParam::Mu(_) => Family::Lommel,
            ShapeParam::Nu(_) => Family::Struve,
        }
    }

    pub fn in_hypothesis(&self) -> bool {
        match self {
            ShapeParam::Mu(p) => p.in_hypothesis(),
            ShapeParam::Nu(p) => p.in_hypothesis(),
        }
    }

    pub fn kernel(&self) -> Kernel<T> {
        match *self {
            ShapeParam::Mu(p) => Kernel::lommel(p),
            ShapeParam::Nu(p) => Kernel::struve(p),
        }
    }
}

/// A normalized form bound to its parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Form<T> {
    kind: FormKind,
    param: ShapeParam<T>,
    kernel: Kernel<T>,
}

impl<T: Real> Form<T> {
    pub fn new(kind: FormKind, param: ShapeParam<T>) -> Result<Self> {
        if kind.family() != param.family() {
            return Err(Error::InvalidParameter(format!(
                "form {kind} takes {}, not {}",
                kind.family().param_symbol(),
                param.family().param_symbol()
            )));
        }
        Ok(Self {
            kind,
            param,
            kernel: param.kernel(),
        })
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn param(&self) -> ShapeParam<T> {
        self.param
    }

    pub fn kernel(&self) -> &Kernel<T> {
        &self.kernel
    }

    /// Value of the form at z > 0.
    pub fn eval(&self, z: T, cfg: &SeriesConfig<T>) -> Result<T> {
        match self.kind.normalization() {
            Normalization::Power => {
                let e = self.kernel.entire(z, cfg)?.value;
                if e < T::zero() {
                    return Err(Error::PreconditionViolation(format!(
                        "{} is not real at z = {z}: the kernel changed sign",
                        self.kind
                    )));
                }
                Ok(z * e.powf(T::one() / self.kernel.power()))
            }
            Normalization::Linear => Ok(z * self.kernel.entire(z, cfg)?.value),
            Normalization::Root => Ok(z * self.kernel.entire(z.sqrt(), cfg)?.value),
        }
    }

    /// 1 + rF''(r)/F'(r) for 0 < r below the first singularity, from kernel
    /// jets.
    pub fn curvature_real(&self, r: T, cfg: &SeriesConfig<T>) -> Result<T> {
        let p = self.kernel.power();
        let one = T::one();
        let two = T::two();
        match self.kind.normalization() {
            Normalization::Power => {
                let k = self.kernel.jet(r, cfg)?;
                nonsingular(k.d1, r)?;
                nonsingular(k.value, r)?;
                Ok(one + r * k.d2 / k.d1 + (one / p - one) * r * k.d1 / k.value)
            }
            Normalization::Linear => {
                let k = self.kernel.jet(r, cfg)?;
                let den = (one - p) * k.value + r * k.d1;
                nonsingular(den, r)?;
                Ok(one - p + r * ((two - p) * k.d1 + r * k.d2) / den)
            }
            Normalization::Root => {
                let t = check_r(r)?.sqrt();
                let k = self.kernel.jet(t, cfg)?;
                let den = (two - p) * k.value + t * k.d1;
                nonsingular(den, r)?;
                Ok(one - p / two + t / two * ((T::lit(3.0) - p) * k.d1 + t * k.d2) / den)
            }
        }
    }

    /// The same curvature computed from the entire factor E alone.
    ///
    /// Shares no algebra with [`Form::curvature_real`], so the two serve as
    /// cross-checks of each other.
    pub fn curvature_entire(&self, r: T, cfg: &SeriesConfig<T>) -> Result<T> {
        let one = T::one();
        let two = T::two();
        match self.kind.normalization() {
            Normalization::Power => {
                let p = self.kernel.power();
                let e = self.kernel.entire(r, cfg)?;
                let den = p * e.value + r * e.d1;
                nonsingular(den, r)?;
                nonsingular(e.value, r)?;
                Ok(one + (one / p - one) * r * e.d1 / e.value + r * ((p + one) * e.d1 + r * e.d2) / den)
            }
            Normalization::Linear => {
                let e = self.kernel.entire(r, cfg)?;
                let den = e.value + r * e.d1;
                nonsingular(den, r)?;
                Ok(one + r * (two * e.d1 + r * e.d2) / den)
            }
            Normalization::Root => {
                let t = check_r(r)?.sqrt();
                let e: Jet<T> = self.kernel.entire(t, cfg)?;
                let den = two * e.value + t * e.d1;
                nonsingular(den, r)?;
                Ok(one + t * (T::lit(3.0) * e.d1 + t * e.d2) / (two * den))
            }
        }
    }

    /// First positive singularity of the curvature on the real axis: the
    /// first zero of f', g', h' (or u', v', w'), in the form's own variable.
    pub fn singularity(&self, opts: &ZeroOptions<T>, cfg: &SeriesConfig<T>) -> Result<T> {
        let target = self.kind.derivative_target();
        match self.kind.normalization() {
            Normalization::Root => {
                // scan directly in r so the bracket never depends on squaring
                let upper = opts.upper_limit_for(1);
                let table = positive_zeros(
                    |r: T| self.kernel.target(target, r.sqrt(), cfg),
                    1,
                    opts.scan_step,
                    opts.tol,
                    upper * upper,
                )?;
                Ok(table.as_slice()[0])
            }
            _ => Ok(kernel_zero_table(&self.kernel, target, 1, opts, cfg)?.as_slice()[0]),
        }
    }

    /// Zero tables for [`curvature_sum`], `count` entries each.
    pub fn series_data(
        &self,
        count: usize,
        opts: &ZeroOptions<T>,
        cfg: &SeriesConfig<T>,
    ) -> Result<CurvatureSeriesData<T>> {
        let function_zeros = kernel_zero_table(&self.kernel, ZeroTarget::Kernel, count, opts, cfg)?;
        let derivative_zeros = kernel_zero_table(&self.kernel, self.kind.derivative_target(), count, opts, cfg)?;
        let weight = match self.kind.normalization() {
            Normalization::Power => T::one() / self.kernel.power() - T::one(),
            _ => T::zero(),
        };
        CurvatureSeriesData::new(self.kind, function_zeros, derivative_zeros, weight)
    }
}

fn check_r<T: Real>(r: T) -> Result<T> {
    if !(r > T::zero()) || !r.is_finite() {
        return Err(Error::PreconditionViolation(format!(
            "r must be finite and > 0, got {r}"
        )));
    }
    Ok(r)
}

fn nonsingular<T: Real>(den: T, r: T) -> Result<()> {
    if den.abs() < T::lit(SINGULAR_DENOMINATOR) || den.is_nan() {
        return Err(Error::SingularityReached { r: r.to_f64_lossy() });
    }
    Ok(())
}

/// Value of `form` at z > 0.
pub fn eval_form<T: Real>(form: FormKind, param: ShapeParam<T>, z: T, cfg: &SeriesConfig<T>) -> Result<T> {
    Form::new(form, param)?.eval(z, cfg)
}

/// 1 + rF''(r)/F'(r) of `form` at real r > 0.
pub fn curvature_real<T: Real>(form: FormKind, param: ShapeParam<T>, r: T, cfg: &SeriesConfig<T>) -> Result<T> {
    Form::new(form, param)?.curvature_real(r, cfg)
}

/// Zero tables and weight for the zero-sum curvature of one form.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureSeriesData<T> {
    form: FormKind,
    function_zeros: ZeroTable<T>,
    derivative_zeros: ZeroTable<T>,
    weight: T,
}

impl<T: Real> CurvatureSeriesData<T> {
    pub fn new(
        form: FormKind,
        function_zeros: ZeroTable<T>,
        derivative_zeros: ZeroTable<T>,
        weight: T,
    ) -> Result<Self> {
        if function_zeros.is_empty() || derivative_zeros.is_empty() {
            return Err(Error::InsufficientZeros {
                needed: 1,
                available: function_zeros.len().min(derivative_zeros.len()),
            });
        }
        if !weight.is_finite() {
            return Err(Error::InvalidParameter(format!("weight must be finite, got {weight}")));
        }
        Ok(Self {
            form,
            function_zeros,
            derivative_zeros,
            weight,
        })
    }

    pub fn form(&self) -> FormKind {
        self.form
    }

    pub fn function_zeros(&self) -> &ZeroTable<T> {
        &self.function_zeros
    }

    pub fn derivative_zeros(&self) -> &ZeroTable<T> {
        &self.derivative_zeros
    }

    pub fn weight(&self) -> T {
        self.weight
    }

    pub fn with_weight(mut self, weight: T) -> Self {
        self.weight = weight;
        self
    }

    fn uses_root(&self) -> bool {
        self.form.normalization() == Normalization::Root
    }

    /// Radius of the disk where the sum converges: the first derivative
    /// zero (squared for h and w).
    pub fn disk_radius(&self) -> T {
        let d = self.derivative_zeros.as_slice()[0];
        let d = if self.uses_root() { d * d } else { d };
        if self.weight != T::zero() {
            d.min(self.function_zeros.as_slice()[0])
        } else {
            d
        }
    }

    fn check_len(&self, n: usize) -> Result<()> {
        let mut available = self.derivative_zeros.len();
        if self.weight != T::zero() {
            available = available.min(self.function_zeros.len());
        }
        if available < n {
            return Err(Error::InsufficientZeros { needed: n, available });
        }
        Ok(())
    }

    /// Estimate of the dropped tail at |z|: 2|z|²Σ_{n>N} 1/d_n² (plus the
    /// weighted kernel-zero term), or |z|Σ_{n>N} 1/d_n² for h and w.
    pub fn tail_bound(&self, modulus: T, n: usize) -> Result<T> {
        self.check_len(n)?;
        let t = self.derivative_zeros.tail_inverse_square_sum(n)?;
        if self.uses_root() {
            return Ok(modulus * t);
        }
        let mut bound = T::two() * modulus * modulus * t;
        if self.weight != T::zero() {
            let tf = self.function_zeros.tail_inverse_square_sum(n)?;
            bound = bound + self.weight.abs() * T::two() * modulus * modulus * tf;
        }
        Ok(bound)
    }
}

/// 1 + zF''(z)/F'(z) from the zero tables, for complex |z| below
/// [`CurvatureSeriesData::disk_radius`].
///
/// With [`TailCorrection::IntegralEstimate`] the leading term of the
/// dropped tail is added back.
pub fn curvature_sum<T: Real>(
    data: &CurvatureSeriesData<T>,
    z: Complex<T>,
    trunc: ProductTruncation,
) -> Result<Complex<T>> {
    let n = trunc.n_zeros();
    data.check_len(n)?;
    if !(z.norm() < data.disk_radius()) {
        return Err(Error::PreconditionViolation(format!(
            "|z| = {} must be below the first singularity {}",
            z.norm(),
            data.disk_radius()
        )));
    }
    let one = Complex::new(T::one(), T::zero());
    let tail = trunc.tail() == TailCorrection::IntegralEstimate;
    if data.uses_root() {
        let mut sum = Complex::new(T::zero(), T::zero());
        for (d, m) in data.derivative_zeros.iter().take(n) {
            sum = sum + z * T::from_usize_lossy(m as usize) / (Complex::new(d * d, T::zero()) - z);
        }
        if tail {
            sum = sum + z * data.derivative_zeros.tail_inverse_square_sum(n)?;
        }
        return Ok(one - sum);
    }
    let z2 = z * z;
    let pole_sum = |table: &ZeroTable<T>| -> Result<Complex<T>> {
        let mut sum = Complex::new(T::zero(), T::zero());
        for (d, m) in table.iter().take(n) {
            sum = sum + z2 * (T::two() * T::from_usize_lossy(m as usize)) / (Complex::new(d * d, T::zero()) - z2);
        }
        if tail {
            sum = sum + z2 * (T::two() * table.tail_inverse_square_sum(n)?);
        }
        Ok(sum)
    };
    let mut value = one - pole_sum(&data.derivative_zeros)?;
    if data.weight != T::zero() {
        value = value - pole_sum(&data.function_zeros)? * data.weight;
    }
    Ok(value)
}
