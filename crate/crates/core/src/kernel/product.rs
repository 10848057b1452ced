//! Truncated Mittag-Leffler products over kernel zeros. These are
//! cross-check oracles for the series evaluators, not primary evaluators.

use super::{Family, Kernel};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::zeros::ZeroTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductKind {
    /// s_{μ−1/2,1/2} = z^{μ+1/2}/(μ(μ+1)) Π(1 − z²/ξ²)
    Lommel,
    /// s' = (μ+1/2) z^{μ−1/2}/(μ(μ+1)) Π(1 − z²/ξ'²)
    LommelDeriv,
    /// H_ν = z^{ν+1}/(√π 2^ν Γ(ν+3/2)) Π(1 − z²/h²)
    Struve,
    /// H'_ν = (ν+1) z^ν/(√π 2^ν Γ(ν+3/2)) Π(1 − z²/h'²)
    StruveDeriv,
}

impl ProductKind {
    pub fn family(self) -> Family {
        match self {
            ProductKind::Lommel | ProductKind::LommelDeriv => Family::Lommel,
            ProductKind::Struve | ProductKind::StruveDeriv => Family::Struve,
        }
    }

    pub fn is_derivative(self) -> bool {
        matches!(self, ProductKind::LommelDeriv | ProductKind::StruveDeriv)
    }
}

/// How the omitted factors n > N are accounted for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TailCorrection {
    /// Plain truncation.
    None,
    /// Multiply by exp(−z² Σ_{n>N} 1/d_n²), the sum estimated by
    /// [`ZeroTable::tail_inverse_square_sum`].
    #[default]
    IntegralEstimate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductTruncation {
    n_zeros: usize,
    tail: TailCorrection,
}

impl ProductTruncation {
    pub const MIN_ZEROS: usize = 10;

    pub fn new(n_zeros: usize) -> Result<Self> {
        Self::with_tail(n_zeros, TailCorrection::default())
    }

    pub fn with_tail(n_zeros: usize, tail: TailCorrection) -> Result<Self> {
        if n_zeros < Self::MIN_ZEROS {
            return Err(Error::InvalidParameter(format!(
                "product truncation needs at least {} zeros, got {n_zeros}",
                Self::MIN_ZEROS
            )));
        }
        Ok(Self { n_zeros, tail })
    }

    pub fn n_zeros(&self) -> usize {
        self.n_zeros
    }

    pub fn tail(&self) -> TailCorrection {
        self.tail
    }
}

/// Prefactor times Π_{n≤N}(1 − z²/d_n²) for the requested kind, z > 0.
///
/// `zeros` must hold the zeros matching `kind` (function zeros for
/// `Lommel`/`Struve`, derivative zeros for the `*Deriv` kinds).
pub fn ml_product<T: Real>(
    kind: ProductKind,
    kernel: &Kernel<T>,
    z: T,
    zeros: &ZeroTable<T>,
    trunc: ProductTruncation,
) -> Result<T> {
    if kind.family() != kernel.family() {
        return Err(Error::InvalidParameter(format!(
            "product kind {kind:?} does not match a {} kernel",
            kernel.family().name()
        )));
    }
    if !(z > T::zero()) {
        return Err(Error::PreconditionViolation(format!(
            "product evaluation needs z > 0, got {z}"
        )));
    }
    let n = trunc.n_zeros();
    if zeros.len() < n {
        return Err(Error::InsufficientZeros {
            needed: n,
            available: zeros.len(),
        });
    }
    let p = kernel.power();
    let prefactor = if kind.is_derivative() {
        p * kernel.scale() * z.powf(p - T::one())
    } else {
        kernel.scale() * z.powf(p)
    };
    let mut prod = T::one();
    for (d, m) in zeros.iter().take(n) {
        let ratio = z / d;
        prod = prod * (T::one() - ratio * ratio).powi(m as i32);
    }
    if trunc.tail() == TailCorrection::IntegralEstimate {
        prod = prod * (-z * z * zeros.tail_inverse_square_sum(n)?).exp();
    }
    Ok(prefactor * prod)
}
