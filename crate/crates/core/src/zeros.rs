//! Positive zeros of real functions by scan-and-bisect, interlacing checks,
//! and the elementary disk inequalities used by the radius proofs.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::kernel::{Kernel, ZeroTarget};
use crate::scalar::Real;
use crate::series::SeriesConfig;

/// Ascending positive zeros of a named function.
///
/// Zeros are simple unless marked otherwise; a tangential (even-order)
/// zero such as those of H_{1/2} at 2πk carries multiplicity 2.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable<T> {
    label: String,
    zeros: Vec<T>,
    multiplicities: Vec<u32>,
    tol: T,
    scan_step: T,
}

impl<T: Real> ZeroTable<T> {
    pub fn new(label: impl Into<String>, zeros: Vec<T>, tol: T, scan_step: T) -> Result<Self> {
        if let Some(bad) = zeros.iter().find(|z| !(**z > T::zero()) || !z.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "zero table entries must be finite and positive, found {bad}"
            )));
        }
        if zeros.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter("zero table must be strictly increasing".into()));
        }
        Ok(Self {
            label: label.into(),
            multiplicities: vec![1; zeros.len()],
            zeros,
            tol,
            scan_step,
        })
    }

    pub fn with_multiplicities(mut self, multiplicities: Vec<u32>) -> Result<Self> {
        if multiplicities.len() != self.zeros.len() || multiplicities.contains(&0) {
            return Err(Error::InvalidParameter(
                "one positive multiplicity per zero required".into(),
            ));
        }
        self.multiplicities = multiplicities;
        Ok(self)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn as_slice(&self) -> &[T] {
        &self.zeros
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    /// Zeros paired with their multiplicities.
    pub fn iter(&self) -> impl Iterator<Item = (T, u32)> + '_ {
        self.zeros.iter().copied().zip(self.multiplicities.iter().copied())
    }

    pub fn first(&self) -> Option<T> {
        self.zeros.first().copied()
    }

    pub fn tol(&self) -> T {
        self.tol
    }

    pub fn scan_step(&self) -> T {
        self.scan_step
    }

    /// Estimate of Σ_{m>n} 1/d_m², counted with multiplicity.
    ///
    /// Entries n+1..len are summed exactly; the rest is estimated assuming
    /// the spacing Δ continues, by the midpoint rule with its leading
    /// correction: Σ_{k≥1} 1/(d + kΔ)² ≈ 1/(Δc) − Δ/(12c³), c = d + Δ/2.
    /// Δ is averaged over the last two gaps since Lommel zeros alternate
    /// between slightly short and slightly long gaps.
    pub fn tail_inverse_square_sum(&self, n: usize) -> Result<T> {
        let len = self.zeros.len();
        if len < 2 || n > len {
            return Err(Error::InsufficientZeros {
                needed: n.max(2),
                available: len,
            });
        }
        let exact = self
            .iter()
            .skip(n)
            .fold(T::zero(), |acc, (d, m)| acc + T::from_usize_lossy(m as usize) / (d * d));
        let last = self.zeros[len - 1];
        let spacing = if len >= 3 {
            (last - self.zeros[len - 3]) / T::two()
        } else {
            last - self.zeros[len - 2]
        };
        let c = last + spacing / T::two();
        let rest = T::one() / (spacing * c) - spacing / (T::lit(12.0) * c * c * c);
        Ok(exact + T::from_usize_lossy(self.multiplicities[len - 1] as usize) * rest)
    }
}

/// Scan/refine settings for [`positive_zeros`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroOptions<T> {
    pub scan_step: T,
    pub tol: T,
    /// `None` picks (2·count + 2)π + 10, enough for zeros spaced up to 2π.
    pub upper_limit: Option<T>,
}

impl<T: Real> Default for ZeroOptions<T> {
    fn default() -> Self {
        Self {
            scan_step: T::lit(0.05),
            tol: T::lit(1e-12),
            upper_limit: None,
        }
    }
}

impl<T: Real> ZeroOptions<T> {
    pub fn with_tol(mut self, tol: T) -> Self {
        self.tol = tol;
        self
    }

    pub fn upper_limit_for(&self, count: usize) -> T {
        self.upper_limit
            .unwrap_or_else(|| T::from_usize_lossy(2 * count + 2) * T::PI() + T::lit(10.0))
    }
}

/// The first `count` zeros of `f` on (0, upper_limit], each refined by
/// bisection to a bracket of width ≤ `tol`.
///
/// A scan point where `f` is exactly zero is taken as a zero directly.
/// A scan local minimum of |f| without a sign change is refined by
/// golden-section search and kept as a double zero when |f| there drops
/// below 1e-3 of its neighbours. Such zeros are only located to about
/// √ε relative accuracy; [`refine_double_zeros`] improves on that when the
/// derivative is available.
pub fn positive_zeros<T, F>(mut f: F, count: usize, scan_step: T, tol: T, upper_limit: T) -> Result<ZeroTable<T>>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    if !(scan_step > T::zero() && tol > T::zero() && upper_limit > T::zero()) {
        return Err(Error::InvalidParameter(format!(
            "scan_step ({scan_step}), tol ({tol}) and upper_limit ({upper_limit}) must be positive"
        )));
    }
    let mut zeros = Vec::with_capacity(count);
    let mut mult = Vec::with_capacity(count);
    let mut eval = |x: T| -> Result<T> {
        let v = f(x)?;
        if v.is_nan() {
            return Err(Error::PreconditionViolation(format!("function is NaN at {x}")));
        }
        Ok(v)
    };

    let mut x_prev = scan_step.min(upper_limit) * T::lit(1e-6);
    let mut f_prev = eval(x_prev)?;
    // the point before x_prev, kept while there is no sign change
    let mut before: Option<(T, T)> = None;
    let mut i = 1usize;
    while zeros.len() < count {
        let x = T::from_usize_lossy(i) * scan_step;
        if x > upper_limit {
            break;
        }
        i += 1;
        let fx = eval(x)?;
        if fx == T::zero() {
            zeros.push(x);
            mult.push(1);
            before = None;
        } else if f_prev != T::zero() && (f_prev < T::zero()) != (fx < T::zero()) {
            zeros.push(bisect(&mut eval, x_prev, f_prev, x, tol)?);
            mult.push(1);
            before = None;
        } else {
            if let Some((x0, f0)) = before {
                let m = f_prev.abs();
                if f_prev != T::zero() && m < f0.abs() && m < fx.abs() {
                    let (xm, fm) = golden_min(&mut eval, x0, x, tol)?;
                    if fm.abs() <= T::lit(1e-3) * f0.abs().min(fx.abs()) {
                        zeros.push(xm);
                        mult.push(2);
                    }
                }
            }
            before = if f_prev == T::zero() {
                None
            } else {
                Some((x_prev, f_prev))
            };
        }
        x_prev = x;
        f_prev = fx;
    }
    zeros.truncate(count);
    mult.truncate(count);
    if zeros.len() < count {
        return Err(Error::NotEnoughZeros {
            found: zeros.len(),
            requested: count,
            upper_limit: upper_limit.to_f64_lossy(),
        });
    }
    ZeroTable::new("", zeros, tol, scan_step)?.with_multiplicities(mult)
}

/// Minimizer of |f| on [lo, hi] by golden-section search.
fn golden_min<T: Real>(f: &mut impl FnMut(T) -> Result<T>, mut lo: T, mut hi: T, tol: T) -> Result<(T, T)> {
    let ratio = (T::lit(5.0).sqrt() - T::one()) / T::two();
    let mut a = hi - ratio * (hi - lo);
    let mut b = lo + ratio * (hi - lo);
    let mut fa = f(a)?.abs();
    let mut fb = f(b)?.abs();
    for _ in 0..200 {
        if hi - lo <= tol || fa == T::zero() || fb == T::zero() {
            break;
        }
        if fa < fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - ratio * (hi - lo);
            fa = f(a)?.abs();
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + ratio * (hi - lo);
            fb = f(b)?.abs();
        }
    }
    let (x, _) = if fa <= fb { (a, fa) } else { (b, fb) };
    Ok((x, f(x)?))
}

fn bisect<T: Real>(f: &mut impl FnMut(T) -> Result<T>, mut lo: T, mut f_lo: T, mut hi: T, tol: T) -> Result<T> {
    for _ in 0..300 {
        if hi - lo <= tol {
            break;
        }
        let mid = lo + (hi - lo) / T::two();
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == T::zero() {
            return Ok(mid);
        }
        if (fm < T::zero()) == (f_lo < T::zero()) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(lo + (hi - lo) / T::two())
}

/// Relocates each double zero as the sign change of the derivative `df`
/// within one scan step, which is far better conditioned than minimizing
/// |f|. Entries without such a sign change are left as they are.
pub fn refine_double_zeros<T, D>(mut table: ZeroTable<T>, mut df: D) -> Result<ZeroTable<T>>
where
    T: Real,
    D: FnMut(T) -> Result<T>,
{
    let step = table.scan_step;
    for i in 0..table.zeros.len() {
        if table.multiplicities[i] != 2 {
            continue;
        }
        let z = table.zeros[i];
        let lo = (z - step).max(z / T::two());
        let hi = z + step;
        let (d_lo, d_hi) = (df(lo)?, df(hi)?);
        if (d_lo < T::zero()) != (d_hi < T::zero()) && d_lo != T::zero() && d_hi != T::zero() {
            let refined = bisect(&mut df, lo, d_lo, hi, table.tol)?;
            let below = i == 0 || table.zeros[i - 1] < refined;
            let above = i + 1 == table.zeros.len() || refined < table.zeros[i + 1];
            if below && above {
                table.zeros[i] = refined;
            }
        }
    }
    Ok(table)
}

/// Zeros of one of the kernel's entire target functions.
pub fn kernel_zero_table<T: Real>(
    kernel: &Kernel<T>,
    target: ZeroTarget,
    count: usize,
    opts: &ZeroOptions<T>,
    cfg: &SeriesConfig<T>,
) -> Result<ZeroTable<T>> {
    let table = positive_zeros(
        |z| kernel.target(target, z, cfg),
        count,
        opts.scan_step,
        opts.tol,
        opts.upper_limit_for(count),
    )?;
    let table = refine_double_zeros(table, |z| kernel.target_deriv(target, z, cfg))?;
    Ok(table.with_label(format!(
        "{}({}={})/{}",
        kernel.family().name(),
        kernel.family().param_symbol(),
        kernel.shape(),
        target.label()
    )))
}

/// True iff b_1 < a_1 < b_2 < a_2 < … < b_count < a_count, with `a` the
/// function zeros and `b` the derivative zeros.
pub fn interlacing_check<T: Real>(a: &ZeroTable<T>, b: &ZeroTable<T>, count: usize) -> Result<bool> {
    let available = a.len().min(b.len());
    if available < count {
        return Err(Error::InsufficientZeros {
            needed: count,
            available,
        });
    }
    let (a, b) = (a.as_slice(), b.as_slice());
    Ok((0..count).all(|i| b[i] < a[i] && (i + 1 == count || a[i] < b[i + 1])))
}

/// Every interval (a_{i−1}, a_i] with a_0 = 0, i ≤ count, holds a zero of b.
/// This is what survives of interlacing when the a_i are double zeros: the
/// derivative vanishes at each a_i and picks up extra zeros in between.
pub fn separation_check<T: Real>(a: &ZeroTable<T>, b: &ZeroTable<T>, count: usize) -> Result<bool> {
    if a.len() < count {
        return Err(Error::InsufficientZeros {
            needed: count,
            available: a.len(),
        });
    }
    let (a, b) = (a.as_slice(), b.as_slice());
    let close = |x: T, y: T| (x - y).abs() <= T::lit(1e-9) * x.abs().max(T::one());
    Ok((0..count).all(|i| {
        let lo = if i == 0 { T::zero() } else { a[i - 1] };
        b.iter()
            .any(|&d| d > lo && !close(d, lo) && (d < a[i] || close(d, a[i])))
    }))
}

/// Both sides of the disk inequalities for one sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma1Sides<T> {
    /// |z/(b−z) − λ z/(a−z)| (or |1/((a+z)(b−z))| for the second case)
    pub modulus: T,
    /// Re(z/(b−z) − λ z/(a−z)); unused in the second case
    pub real_part: T,
    /// r/(b−r) − λ r/(a−r) (or 1/((a−r)(b+r)))
    pub bound: T,
    /// Re(z/(b−z)), |z/(b−z)| and r/(b−r)
    pub single: (T, T, T),
    pub case: Lemma1Case,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma1Case {
    /// a > b > r ≥ |z|
    Difference,
    /// b > a > r ≥ |z|
    Product,
}

pub fn lemma1_sides<T: Real>(a: T, b: T, r: T, z: Complex<T>, lambda: T) -> Result<Lemma1Sides<T>> {
    if !(T::zero() <= lambda && lambda <= T::one()) {
        return Err(Error::PreconditionViolation(format!(
            "lambda = {lambda} outside [0, 1]"
        )));
    }
    if !(r >= z.norm() && r >= T::zero()) {
        return Err(Error::PreconditionViolation(format!(
            "need r >= |z|, got r = {r}, |z| = {}",
            z.norm()
        )));
    }
    let one = Complex::new(T::one(), T::zero());
    let single_term = z / (Complex::new(b, T::zero()) - z);
    let single_bound = r / (b - r);
    if a > b && b > r {
        let w = single_term - z / (Complex::new(a, T::zero()) - z) * lambda;
        Ok(Lemma1Sides {
            modulus: w.norm(),
            real_part: w.re,
            bound: single_bound - lambda * r / (a - r),
            single: (single_term.re, single_term.norm(), single_bound),
            case: Lemma1Case::Difference,
        })
    } else if b > a && a > r {
        let w = one / ((Complex::new(a, T::zero()) + z) * (Complex::new(b, T::zero()) - z));
        Ok(Lemma1Sides {
            modulus: w.norm(),
            real_part: w.re,
            bound: T::one() / ((a - r) * (b + r)),
            single: (single_term.re, single_term.norm(), single_bound),
            case: Lemma1Case::Product,
        })
    } else {
        Err(Error::PreconditionViolation(format!(
            "need a > b > r or b > a > r, got a = {a}, b = {b}, r = {r}"
        )))
    }
}

/// Whether the disk inequalities hold for one sample (with a few ulps of
/// slack for the equality case z = r).
pub fn lemma1_bound_check<T: Real>(a: T, b: T, r: T, z: Complex<T>, lambda: T) -> Result<bool> {
    let s = lemma1_sides(a, b, r, z, lambda)?;
    let le = |lhs: T, rhs: T| lhs <= rhs + T::lit(64.0) * T::epsilon() * (T::one() + rhs.abs());
    Ok(match s.case {
        Lemma1Case::Difference => {
            let (re1, abs1, bound1) = s.single;
            le(s.modulus, s.bound) && le(s.real_part, s.bound) && le(re1, abs1) && le(abs1, bound1)
        }
        Lemma1Case::Product => le(s.modulus, s.bound),
    })
}
