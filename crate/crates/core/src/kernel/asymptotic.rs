//! Large-argument expansions of the two kernels (z ≳ 20).
//!
//! Lommel, ν' = 1/2:
//!
//! ```text
//! s_{μ−1/2,1/2}(z) = S_{μ−1/2,1/2}(z) + Γ(μ) z^{−1/2} sin(z − μπ/2)
//! S(z) ~ z^{μ−3/2} Σ_k (−1)^k a_k z^{−2k},  a_k = a_{k−1} (μ−2k)(μ−2k+1)
//! ```
//!
//! Struve: H_ν = Y_ν + K_ν with the Hankel expansion of Y_ν and
//!
//! ```text
//! K_ν(z) ~ (1/π) Σ_k Γ(k+1/2) / Γ(ν+1/2−k) · (z/2)^{ν−2k−1}.
//! ```
//!
//! Every sum is cut at its smallest term, which leaves a relative error of
//! roughly e^{−z}.

use crate::scalar::Real;
use crate::series::{gamma_signed, rgamma};

const MAX_TERMS: usize = 200;

/// Sums Σ t_k with t_{k+1} = t_k · ratio(k) until the terms stop
/// decreasing. Also returns Σ w(k) t_k with the same cut (for termwise
/// derivatives).
fn optimally_truncated<T: Real>(
    first: T,
    mut ratio: impl FnMut(usize) -> T,
    mut weight: impl FnMut(usize) -> T,
) -> (T, T) {
    let mut term = first;
    let mut sum = T::zero();
    let mut wsum = T::zero();
    for k in 0..MAX_TERMS {
        sum = sum + term;
        wsum = wsum + weight(k) * term;
        let next = term * ratio(k);
        if next == T::zero() || next.abs() >= term.abs() || next.abs() <= T::epsilon() * sum.abs() * T::lit(1e-3) {
            break;
        }
        term = next;
    }
    (sum, wsum)
}

/// (s, s') for the Lommel kernel s_{μ−1/2,1/2} at large z.
pub fn lommel_large<T: Real>(mu: T, z: T) -> (T, T) {
    let expo = mu - T::lit(1.5);
    let inv_z2 = T::one() / (z * z);
    let two = T::two();
    let (sum, dsum) = optimally_truncated(
        z.powf(expo),
        |k| {
            let k1 = T::from_usize_lossy(k + 1);
            -(mu - two * k1) * (mu - two * k1 + T::one()) * inv_z2
        },
        |k| (expo - two * T::from_usize_lossy(k)) / z,
    );
    let g = gamma_signed(mu);
    let phase = z - mu * T::FRAC_PI_2();
    let (sin, cos) = phase.sin_cos();
    let rz = z.sqrt();
    let osc = g * sin / rz;
    let dosc = g * (cos / rz - T::half() * sin / (rz * z));
    (sum + osc, dsum + dosc)
}

/// Hankel P and Q for Y_ν, J_ν.
fn hankel_pq<T: Real>(nu: T, z: T) -> (T, T) {
    let four_nu2 = T::lit(4.0) * nu * nu;
    let mut p = T::zero();
    let mut q = T::zero();
    let mut term = T::one();
    for k in 0..MAX_TERMS {
        // term = a_k(ν) / z^k with the alternating sign folded in below
        match k % 4 {
            0 => p = p + term,
            1 => q = q + term,
            2 => p = p - term,
            _ => q = q - term,
        }
        let k1 = T::from_usize_lossy(k + 1);
        let odd = T::two() * k1 - T::one();
        let next = term * (four_nu2 - odd * odd) / (T::lit(8.0) * k1 * z);
        if next == T::zero()
            || next.abs() >= term.abs()
            || next.abs() <= T::epsilon() * T::lit(1e-3) * p.abs().max(q.abs())
        {
            break;
        }
        term = next;
    }
    (p, q)
}

/// Y_ν(z) at large z.
pub fn bessel_y_large<T: Real>(nu: T, z: T) -> T {
    let (p, q) = hankel_pq(nu, z);
    let chi = z - (nu / T::two() + T::lit(0.25)) * T::PI();
    let (sin, cos) = chi.sin_cos();
    (T::two() / (T::PI() * z)).sqrt() * (p * sin + q * cos)
}

/// (H_ν, H'_ν) at large z.
pub fn struve_large<T: Real>(nu: T, z: T) -> (T, T) {
    let y = bessel_y_large(nu, z);
    let y_next = bessel_y_large(nu + T::one(), z);
    let dy = nu / z * y - y_next;

    let half_z = z / T::two();
    let inv_h2 = T::one() / (half_z * half_z);
    let c0 = T::PI().sqrt() * rgamma(nu + T::half());
    let expo = nu - T::one();
    let (k_sum, k_dsum) = if c0 == T::zero() {
        (T::zero(), T::zero())
    } else {
        optimally_truncated(
            c0 * half_z.powf(expo) / T::PI(),
            |k| {
                let k = T::from_usize_lossy(k);
                (k + T::half()) * (nu - T::half() - k) * inv_h2
            },
            |k| (expo - T::two() * T::from_usize_lossy(k)) / z,
        )
    };
    (y + k_sum, dy + k_dsum)
}
