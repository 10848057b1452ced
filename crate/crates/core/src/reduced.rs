//! Elementary equations for the ν = 1/2 Struve forms.
//!
//! With H_{1/2}(z) = √(2/(πz))(1 − cos z) the uniform-convexity equations of
//! u, v and w become trigonometric. Their roots give independent checks of
//! the general solver.
//!
//! The v equation is often quoted as cos z(2z² − 3) − z sin z + 3 = 0, which
//! has no root near the v radius; clearing denominators in the v equation
//! gives a coefficient 3 on z sin z. Both versions are provided.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::FormKind;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReducedEquation {
    /// 5 + (−5 + 8z²)cos z − 2z(2z + sin z) = 0
    U,
    /// cos z(2z² − 3) − 3z sin z + 3 = 0
    V,
    /// cos z(2z² − 3) − z sin z + 3 = 0, the commonly quoted variant
    VQuoted,
    /// √z cot √z = 0
    W,
}

impl ReducedEquation {
    pub const ALL: [ReducedEquation; 4] = [
        ReducedEquation::U,
        ReducedEquation::V,
        ReducedEquation::VQuoted,
        ReducedEquation::W,
    ];

    pub fn form(self) -> FormKind {
        match self {
            ReducedEquation::U => FormKind::U,
            ReducedEquation::V | ReducedEquation::VQuoted => FormKind::V,
            ReducedEquation::W => FormKind::W,
        }
    }

    pub fn text(self) -> &'static str {
        match self {
            ReducedEquation::U => "5+(-5+8z^2)cos z-2z(2z+sin z)=0",
            ReducedEquation::V => "cos z(2z^2-3)-3z sin z+3=0",
            ReducedEquation::VQuoted => "cos z(2z^2-3)-z sin z+3=0",
            ReducedEquation::W => "sqrt(z) cot sqrt(z)=0",
        }
    }

    pub fn eval<T: Real>(self, z: T) -> T {
        let (s, c) = z.sin_cos();
        let two = T::two();
        let three = T::lit(3.0);
        match self {
            ReducedEquation::U => T::lit(5.0) + (T::lit(8.0) * z * z - T::lit(5.0)) * c - two * z * (two * z + s),
            ReducedEquation::V => c * (two * z * z - three) - three * z * s + three,
            ReducedEquation::VQuoted => c * (two * z * z - three) - z * s + three,
            ReducedEquation::W => {
                let t = z.sqrt();
                t / t.tan()
            }
        }
    }

    /// Search interval containing the smallest positive root (if any).
    pub fn bracket<T: Real>(self) -> (T, T) {
        match self {
            ReducedEquation::U => (T::half(), T::two()),
            ReducedEquation::V | ReducedEquation::VQuoted => (T::half(), T::lit(2.5)),
            ReducedEquation::W => (T::half(), T::lit(4.0)),
        }
    }

    /// Root in [`ReducedEquation::bracket`] by bisection to width `tol`.
    pub fn root<T: Real>(self, tol: T) -> Result<T> {
        let (lo, hi) = self.bracket::<T>();
        bisect_sign_change(|z| self.eval(z), lo, hi, tol)
    }
}

/// Bisection for a continuous f with f(lo) and f(hi) of opposite signs.
pub fn bisect_sign_change<T: Real>(f: impl Fn(T) -> T, mut lo: T, mut hi: T, tol: T) -> Result<T> {
    let f_lo = f(lo);
    let f_hi = f(hi);
    if !((f_lo > T::zero() && f_hi < T::zero()) || (f_lo < T::zero() && f_hi > T::zero())) {
        return Err(Error::BracketFailure {
            lo: lo.to_f64_lossy(),
            hi: hi.to_f64_lossy(),
            psi_lo: f_lo.to_f64_lossy(),
            psi_hi: f_hi.to_f64_lossy(),
        });
    }
    let lo_positive = f_lo > T::zero();
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = lo + (hi - lo) / T::two();
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v == T::zero() {
            return Ok(mid);
        }
        if (v > T::zero()) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo + (hi - lo) / T::two())
}
