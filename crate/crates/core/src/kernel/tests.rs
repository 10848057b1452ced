#![allow(clippy::excessive_precision)]

use super::*;
use crate::zeros::{kernel_zero_table, ZeroOptions};
use approx::assert_relative_eq;
use std::f64::consts::{PI, SQRT_2};

fn cfg() -> SeriesConfig<f64> {
    SeriesConfig::default()
}

fn lommel(mu: f64) -> LommelParam<f64> {
    LommelParam::new(mu).unwrap()
}

fn struve(nu: f64) -> StruveParam<f64> {
    StruveParam::new(nu).unwrap()
}

fn lommel_kernel(mu: f64) -> Kernel<f64> {
    Kernel::lommel(lommel(mu))
}

fn struve_kernel(nu: f64) -> Kernel<f64> {
    Kernel::struve(struve(nu))
}

#[test]
fn parameter_hypotheses() {
    for mu in [0.0, -0.5, 1.0, -1.0, 1.2] {
        assert!(LommelParam::new(mu).is_err(), "mu = {mu}");
    }
    assert!(LommelParam::new(0.3).unwrap().in_hypothesis());
    let outside = LommelParam::new_unchecked(1.0).unwrap();
    assert!(!outside.in_hypothesis());
    assert!(LommelParam::new_unchecked(0.0).is_err());
    assert!(LommelParam::new_unchecked(-1.0).is_err());

    assert!(StruveParam::new(0.5).is_ok());
    assert!(StruveParam::new(-0.5).is_ok());
    assert!(StruveParam::new(0.6).is_err());
    assert!(!StruveParam::new_unchecked(0.6).unwrap().in_hypothesis());
    assert!(StruveParam::new_unchecked(-1.5).is_err());
}

#[test]
fn lommel_small_argument_limit() {
    // s_{-1/5,1/2}(z) / z^{4/5} -> 100/39
    let z = 1e-6;
    let s = lommel_s(lommel(0.3), z, &cfg()).unwrap();
    assert_relative_eq!(s / z.powf(0.8), 100.0 / 39.0, max_relative = 1e-8);
}

#[test]
fn lommel_normalization_matches_series_form() {
    let (mu, z) = (0.3, 0.5);
    let s = lommel_s(lommel(mu), z, &cfg()).unwrap();
    let lhs = mu * (mu + 1.0) * z.powf(0.5 - mu) * s;
    let args = Hyp1F2Args::real(1.0, 23.0 / 20.0, 33.0 / 20.0, -z * z / 4.0).unwrap();
    let rhs = z * crate::series::hyp1f2(&args, &cfg()).unwrap().re;
    assert_relative_eq!(lhs, rhs, max_relative = 1e-13);
}

#[test]
fn normalized_kernels_positive_below_first_zero() {
    let opts = ZeroOptions::default();
    for mu in [-0.25, -0.2, 0.1, 0.3] {
        let k = lommel_kernel(mu);
        let xi1 = kernel_zero_table(&k, ZeroTarget::Kernel, 1, &opts, &cfg())
            .unwrap()
            .as_slice()[0];
        for i in 1..50 {
            let z = xi1 * i as f64 / 50.0;
            // μ(μ+1)s carries the sign of the leading coefficient
            let v = mu * (mu + 1.0) * k.eval(z, 0, &cfg()).unwrap();
            assert!(v > 0.0, "mu = {mu}, z = {z}");
        }
        let s_half = lommel_s(lommel(mu), 0.5 * xi1, &cfg()).unwrap();
        assert!(mu * (mu + 1.0) * s_half > 0.0);
    }
    for nu in [-0.3, -0.25, 0.0, 0.5] {
        let k = struve_kernel(nu);
        let h1 = kernel_zero_table(&k, ZeroTarget::Kernel, 1, &opts, &cfg())
            .unwrap()
            .as_slice()[0];
        for i in 1..50 {
            let z = h1 * i as f64 / 50.0;
            assert!(k.eval(z, 0, &cfg()).unwrap() > 0.0, "nu = {nu}, z = {z}");
        }
    }
}

fn central(f: impl Fn(f64) -> f64, z: f64, h: f64) -> (f64, f64) {
    let (fp, f0, fm) = (f(z + h), f(z), f(z - h));
    ((fp - fm) / (2.0 * h), (fp - 2.0 * f0 + fm) / (h * h))
}

#[test]
fn lommel_derivatives_match_finite_differences() {
    let p = lommel(0.3);
    let s = |z: f64| lommel_s(p, z, &cfg()).unwrap();
    let (d1, _) = central(s, 0.3, 1e-6);
    let (_, d2) = central(s, 0.3, 1e-4);
    assert!((lommel_s_deriv(p, 0.3, 1, &cfg()).unwrap() - d1).abs() <= 1e-7);
    assert!((lommel_s_deriv(p, 0.3, 2, &cfg()).unwrap() - d2).abs() <= 1e-5);
}

#[test]
fn lommel_derivative_leading_term() {
    let mu = 0.3;
    let z = 1e-7;
    let d = lommel_s_deriv(lommel(mu), z, 1, &cfg()).unwrap();
    let scaled = d * z.powf(0.5 - mu) * mu * (mu + 1.0) / (mu + 0.5);
    assert_relative_eq!(scaled, 1.0, max_relative = 1e-10);
}

#[test]
fn struve_half_order_values() {
    let h = struve_h(struve(0.5), PI, &cfg()).unwrap();
    assert_relative_eq!(h, 2.0 * SQRT_2 / PI, max_relative = 1e-13);
    let at_zero = struve_h(struve(0.5), 2.0 * PI, &cfg()).unwrap();
    assert!(at_zero.abs() < 1e-14, "{at_zero}");
}

#[test]
fn struve_half_order_closed_form_on_grid() {
    for i in 0..=99 {
        let z = 0.1 + 9.9 * i as f64 / 99.0;
        let h = struve_h(struve(0.5), z, &cfg()).unwrap();
        let want = struve_half_closed_form(z);
        assert!(
            (h - want).abs() <= 1e-12 * want.abs().max(1e-3),
            "z = {z}: {h} vs {want}"
        );
    }
}

#[test]
fn lommel_struve_relation_at_half_order() {
    // s_{1/2,1/2}(z) = 2^{-1/2} √π Γ(1) H_{1/2}(z); s_{1/2,1/2} is the μ = 1 kernel
    let z = 1.0;
    let s = lommel_s(LommelParam::new_unchecked(1.0).unwrap(), z, &cfg()).unwrap();
    let h = struve_h(struve(0.5), z, &cfg()).unwrap();
    assert!((s - PI.sqrt() / SQRT_2 * h).abs() <= 1e-12);
}

#[test]
fn struve_derivatives() {
    let half = struve(0.5);
    let z: f64 = 1.0;
    let trig = (2.0 / PI).sqrt() * (z.sin() / z.sqrt() - 0.5 * (1.0 - z.cos()) * z.powf(-1.5));
    assert!((struve_h_deriv(half, z, 1, &cfg()).unwrap() - trig).abs() <= 1e-10);

    let p = struve(0.25);
    let h = |z: f64| struve_h(p, z, &cfg()).unwrap();
    let (_, d2) = central(h, 0.7, 1e-4);
    assert!((struve_h_deriv(p, 0.7, 2, &cfg()).unwrap() - d2).abs() <= 1e-5);

    for nu in [-0.3, 0.0, 0.25, 0.5] {
        let z = 1e-7;
        let d = struve_h_deriv(struve(nu), z, 1, &cfg()).unwrap();
        let norm = PI.sqrt() * 2f64.powf(nu) * crate::series::gamma_real(nu + 1.5).unwrap();
        assert_relative_eq!(d * norm / ((nu + 1.0) * z.powf(nu)), 1.0, max_relative = 1e-10);
    }
}

#[test]
fn derivative_order_validation() {
    assert!(lommel_s_deriv(lommel(0.3), 1.0, 0, &cfg()).is_err());
    assert!(struve_h_deriv(struve(0.3), 1.0, 3, &cfg()).is_err());
    assert!(lommel_s(lommel(0.3), 0.0, &cfg()).is_err());
    assert!(struve_h(struve(0.3), -1.0, &cfg()).is_err());
}

// Reference values from a 50-digit evaluation (mpmath hyp1f2 / struveh).
const REFERENCE: &[(char, f64, f64, [f64; 3])] = &[
    (
        'L',
        0.3,
        5.0,
        [-1.1757579195694733831, -0.1445258944653531889, 1.3378614520023883934],
    ),
    (
        'L',
        0.3,
        12.0,
        [-0.69341484031548111768, 0.46496664384264338385, 0.70416080327748027203],
    ),
    (
        'L',
        0.3,
        30.0,
        [-0.50221580832174964897, -0.16194911081611044476, 0.52435779709482345095],
    ),
    (
        'L',
        0.3,
        600.0,
        [0.060663411824625876962, -0.10631397757053662433, -0.0600224995897053163],
    ),
    (
        'L',
        -0.7,
        22.0,
        [0.81657296237575160595, 0.38780833605311852548, -0.8326653820425249669],
    ),
    (
        'S',
        -0.3,
        5.0,
        [-0.32043952017673389815, 0.011642128833678880767, 0.35430062732232380619],
    ),
    (
        'S',
        -0.3,
        22.0,
        [0.05714137470468378196, -0.16356323917896026977, -0.04425451355993021223],
    ),
    (
        'S',
        -0.3,
        600.0,
        [
            0.011502747447923278266,
            -0.030512422272504101275,
            -0.011377883173055369338,
        ],
    ),
    (
        'S',
        0.25,
        18.0,
        [
            -0.079846696675983763967,
            -0.082847756116796998512,
            0.17303918315146845619,
        ],
    ),
    (
        'S',
        0.25,
        100.0,
        [
            -0.054531734106931581438,
            -0.010859566970717783728,
            0.079125758906043660666,
        ],
    ),
];

#[test]
fn reference_values_both_branches() {
    for &(fam, p, z, want) in REFERENCE {
        let k = if fam == 'L' {
            Kernel::lommel(LommelParam::new_unchecked(p).unwrap())
        } else {
            struve_kernel(p)
        };
        let j = k.jet(z, &cfg()).unwrap();
        for (order, w) in want.iter().enumerate() {
            assert!(
                (j.get(order) - w).abs() <= 2e-9,
                "{fam} {p} z={z} order {order}: {} vs {w}",
                j.get(order)
            );
        }
    }
}

#[test]
fn inhomogeneous_bessel_equation_residual() {
    let kernels = [
        lommel_kernel(0.3),
        lommel_kernel(-0.25),
        struve_kernel(-0.3),
        struve_kernel(0.5),
    ];
    for k in kernels {
        for z in [0.4, 2.0, 7.5, 15.0] {
            let j = k.jet(z, &cfg()).unwrap();
            let lhs = z * z * j.d2 + z * j.d1 + (z * z - k.bessel_order_sq()) * j.value;
            let rhs = k.ode_rhs(z);
            assert!(
                (lhs - rhs).abs() <= 1e-10 * (1.0 + z * z) * (1.0 + rhs.abs()),
                "{:?} z={z}: {lhs} vs {rhs}",
                k.family()
            );
        }
    }
}

#[test]
fn branches_agree_near_crossover() {
    for k in [
        lommel_kernel(0.1),
        lommel_kernel(-0.2),
        struve_kernel(0.0),
        struve_kernel(-0.25),
    ] {
        for z in [SERIES_LIMIT - 0.5, SERIES_LIMIT, SERIES_LIMIT + 0.5] {
            let e = k.entire_series(z, &cfg()).unwrap();
            let zp = k.scale() * z.powf(k.power());
            let (v, d) = match k.family() {
                Family::Lommel => asymptotic::lommel_large(k.shape(), z),
                Family::Struve => asymptotic::struve_large(k.shape(), z),
            };
            assert!((zp * e.value - v).abs() < 1e-8);
            assert!((zp / z * (k.power() * e.value + z * e.d1) - d).abs() < 1e-8);
        }
    }
}

fn table(k: &Kernel<f64>, target: ZeroTarget, n: usize) -> crate::zeros::ZeroTable<f64> {
    kernel_zero_table(k, target, n, &ZeroOptions::default(), &cfg()).unwrap()
}

#[test]
fn product_vanishes_at_first_zero() {
    let k = lommel_kernel(0.3);
    let zeros = table(&k, ZeroTarget::Kernel, 20);
    let z1 = zeros.as_slice()[0];
    let trunc = ProductTruncation::new(20).unwrap();
    assert_eq!(ml_product(ProductKind::Lommel, &k, z1, &zeros, trunc).unwrap(), 0.0);
}

#[test]
fn lommel_product_matches_series() {
    let k = lommel_kernel(0.3);
    let zeros = table(&k, ZeroTarget::Kernel, 200);
    let z = 0.5 * zeros.as_slice()[0];
    let trunc = ProductTruncation::new(200).unwrap();
    let prod = ml_product(ProductKind::Lommel, &k, z, &zeros, trunc).unwrap();
    let series = k.eval(z, 0, &cfg()).unwrap();
    assert_relative_eq!(prod, series, max_relative = 1e-6);
}

#[test]
fn struve_product_matches_closed_form() {
    let k = struve_kernel(0.5);
    let zeros = table(&k, ZeroTarget::Kernel, 200);
    let trunc = ProductTruncation::new(200).unwrap();
    let prod = ml_product(ProductKind::Struve, &k, PI, &zeros, trunc).unwrap();
    assert_relative_eq!(prod, 2.0 * SQRT_2 / PI, max_relative = 1e-6);
}

#[test]
fn derivative_products_match_series() {
    let cases = [
        (lommel_kernel(-0.2), ProductKind::LommelDeriv),
        (struve_kernel(0.25), ProductKind::StruveDeriv),
    ];
    for (k, kind) in cases {
        let zeros = table(&k, ZeroTarget::KernelDeriv, 200);
        let trunc = ProductTruncation::new(200).unwrap();
        let z = 0.7 * zeros.as_slice()[0];
        let prod = ml_product(kind, &k, z, &zeros, trunc).unwrap();
        assert_relative_eq!(prod, k.eval(z, 1, &cfg()).unwrap(), max_relative = 1e-6);
    }
}

#[test]
fn uncorrected_truncation_error_is_first_order() {
    let k = struve_kernel(0.5);
    let zeros = table(&k, ZeroTarget::Kernel, 200);
    let plain = ProductTruncation::with_tail(200, TailCorrection::None).unwrap();
    let prod = ml_product(ProductKind::Struve, &k, PI, &zeros, plain).unwrap();
    let rel = (prod / (2.0 * SQRT_2 / PI) - 1.0).abs();
    // roughly z² / (π² N) for zeros spaced by 2π
    assert!(rel > 1e-4 && rel < 1e-2, "{rel}");
}

#[test]
fn product_input_errors() {
    let k = struve_kernel(0.5);
    let zeros = table(&k, ZeroTarget::Kernel, 12);
    let trunc = ProductTruncation::new(20).unwrap();
    assert!(matches!(
        ml_product(ProductKind::Struve, &k, 1.0, &zeros, trunc),
        Err(Error::InsufficientZeros {
            needed: 20,
            available: 12
        })
    ));
    let trunc = ProductTruncation::new(10).unwrap();
    assert!(ml_product(ProductKind::Lommel, &k, 1.0, &zeros, trunc).is_err());
    assert!(ProductTruncation::new(9).is_err());
}

#[test]
fn single_precision_kernel() {
    let k = Kernel::struve(StruveParam::new(0.5f32).unwrap());
    let v = k.eval(std::f32::consts::PI, 0, &SeriesConfig::default()).unwrap();
    assert!((v - 0.900_316_3).abs() < 1e-5);
}

#[test]
fn half_order_struve_zeros() {
    let k = struve_kernel(0.5);
    let t = table(&k, ZeroTarget::Kernel, 2);
    assert!((t.as_slice()[0] - 2.0 * PI).abs() < 1e-10);
    assert!((t.as_slice()[1] - 4.0 * PI).abs() < 1e-10);
    // the double zero next to the series/asymptotic switch
    let t3 = table(&k, ZeroTarget::Kernel, 3);
    assert!((t3.as_slice()[2] - 6.0 * PI).abs() < 1e-9, "{}", t3.as_slice()[2]);
    assert_eq!(t.multiplicities(), &[2, 2]);

    // H'_{1/2} = 0 in (0, π) ⟺ tan(z/2) = 2z
    let d = table(&k, ZeroTarget::KernelDeriv, 1).as_slice()[0];
    let (mut lo, mut hi) = (1.0f64, 3.1f64);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if (mid / 2.0).tan() - 2.0 * mid < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    assert!((d - lo).abs() < 1e-10, "{d} vs {lo}");
}

#[test]
fn zeros_interlace_with_derivative_zeros() {
    let mut kernels: Vec<Kernel<f64>> = [-0.25, -0.2, 0.1, 0.3].map(lommel_kernel).to_vec();
    kernels.extend([-0.3, -0.25, 0.0].map(struve_kernel));
    for k in kernels {
        let a = table(&k, ZeroTarget::Kernel, 5);
        let b = table(&k, ZeroTarget::KernelDeriv, 5);
        assert!(crate::zeros::interlacing_check(&a, &b, 5).unwrap(), "{}", a.label());
    }
}

#[test]
fn product_tracks_series_below_first_zero() {
    for mu in [-0.25, -0.2, 0.1, 0.3] {
        let k = lommel_kernel(mu);
        let zeros = table(&k, ZeroTarget::Kernel, 200);
        let trunc = ProductTruncation::new(200).unwrap();
        let xi1 = zeros.as_slice()[0];
        for i in 1..=20 {
            let z = xi1 * i as f64 / 21.0;
            let prod = ml_product(ProductKind::Lommel, &k, z, &zeros, trunc).unwrap();
            let series = k.eval(z, 0, &cfg()).unwrap();
            assert!(((prod - series) / series).abs() <= 1e-5, "mu = {mu}, z = {z}");
        }
    }
}
