//! The published-value verification suite behind the `verify` command.

use serde::Serialize;

use crate::error::Result;
use crate::forms::{Form, FormKind, ShapeParam};
use crate::kernel::{ml_product, Family, Kernel, ProductKind, ProductTruncation, ZeroTarget};
use crate::radius::{radius, SolverConfig, UniformityParams};
use crate::reduced::ReducedEquation;
use crate::zeros::{interlacing_check, kernel_zero_table, separation_check};

/// Published uniform-convexity radii (form, parameter, radius).
pub const GOLDEN_RADII: [(FormKind, f64, f64); 6] = [
    (FormKind::F, 0.3, 0.6623),
    (FormKind::G, 0.3, 0.7376),
    (FormKind::H, 0.3, 1.4961),
    (FormKind::U, 0.5, 1.1382),
    (FormKind::V, 0.5, 0.9349),
    (FormKind::W, 0.5, 2.4674),
];
pub const GOLDEN_TOL: f64 = 5e-4;
pub const LOMMEL_SET: [f64; 4] = [-0.25, -0.2, 0.1, 0.3];
pub const STRUVE_SET: [f64; 4] = [-0.3, -0.25, 0.0, 0.5];
pub const PRODUCT_ZEROS: usize = 200;
pub const PRODUCT_TOL: f64 = 1e-5;
pub const REDUCED_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Reported for reference; does not affect the outcome.
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub group: &'static str,
    pub name: String,
    pub status: CheckStatus,
    pub value: f64,
    pub expected: f64,
    pub tolerance: f64,
}

impl CheckOutcome {
    fn within(group: &'static str, name: String, value: f64, expected: f64, tolerance: f64) -> Self {
        let status = if (value - expected).abs() <= tolerance {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Self {
            group,
            name,
            status,
            value,
            expected,
            tolerance,
        }
    }

    fn flag(group: &'static str, name: String, ok: bool) -> Self {
        Self {
            group,
            name,
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            value: if ok { 1.0 } else { 0.0 },
            expected: 1.0,
            tolerance: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }
}

fn form(kind: FormKind, value: f64) -> Result<Form<f64>> {
    Form::new(kind, ShapeParam::checked(kind.family(), value)?)
}

fn kernel(family: Family, value: f64) -> Result<Kernel<f64>> {
    Ok(ShapeParam::checked(family, value)?.kernel())
}

/// Golden radii and the sharp w case.
pub fn golden_checks(cfg: &SolverConfig<f64>) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for (kind, value, want) in GOLDEN_RADII {
        let r = radius(&form(kind, value)?, UniformityParams::uniform(), cfg)?.radius;
        let sym = kind.family().param_symbol();
        out.push(CheckOutcome::within(
            "golden",
            format!("{kind} {sym}={value}"),
            r,
            want,
            GOLDEN_TOL,
        ));
    }
    let w = radius(&form(FormKind::W, 0.5)?, UniformityParams::uniform(), cfg)?.radius;
    let quarter_pi_sq = std::f64::consts::PI.powi(2) / 4.0;
    out.push(CheckOutcome::within(
        "golden",
        "w nu=0.5 equals pi^2/4".into(),
        w,
        quarter_pi_sq,
        1e-10,
    ));
    Ok(out)
}

/// Roots of the ν = 1/2 trigonometric equations against the solver.
pub fn reduced_checks(cfg: &SolverConfig<f64>) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for eq in ReducedEquation::ALL {
        let root = eq.root(1e-15)?;
        let solver = radius(&form(eq.form(), 0.5)?, UniformityParams::uniform(), cfg)?.radius;
        let mut check = CheckOutcome::within("reduced", eq.text().to_string(), root, solver, REDUCED_TOL);
        if eq == ReducedEquation::VQuoted {
            check.status = CheckStatus::Info;
        }
        out.push(check);
    }
    Ok(out)
}

/// First five zeros of each kernel interlace with those of its derivative.
pub fn interlacing_checks(cfg: &SolverConfig<f64>) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    let sets = LOMMEL_SET
        .map(|v| (Family::Lommel, v))
        .into_iter()
        .chain(STRUVE_SET.map(|v| (Family::Struve, v)));
    for (family, value) in sets {
        let k = kernel(family, value)?;
        let a = kernel_zero_table(&k, ZeroTarget::Kernel, 5, &cfg.zeros, &cfg.series)?;
        let b = kernel_zero_table(&k, ZeroTarget::KernelDeriv, 10, &cfg.zeros, &cfg.series)?;
        let sym = family.param_symbol();
        if a.multiplicities().iter().any(|&m| m > 1) {
            // double zeros are shared with the derivative
            let ok = separation_check(&a, &b, 5)?;
            out.push(CheckOutcome::flag(
                "interlacing",
                format!("{} {sym}={value} (double zeros, separation)", family.name()),
                ok,
            ));
        } else {
            let ok = interlacing_check(&a, &b, 5)?;
            out.push(CheckOutcome::flag(
                "interlacing",
                format!("{} {sym}={value}", family.name()),
                ok,
            ));
        }
    }
    Ok(out)
}

/// Largest relative gap between the truncated product and the series on 20
/// points below the first zero of the function compared.
pub fn product_gap(k: &Kernel<f64>, derivative: bool, cfg: &SolverConfig<f64>) -> Result<f64> {
    let (target, kind, order) = match (k.family(), derivative) {
        (Family::Lommel, false) => (ZeroTarget::Kernel, ProductKind::Lommel, 0),
        (Family::Lommel, true) => (ZeroTarget::KernelDeriv, ProductKind::LommelDeriv, 1),
        (Family::Struve, false) => (ZeroTarget::Kernel, ProductKind::Struve, 0),
        (Family::Struve, true) => (ZeroTarget::KernelDeriv, ProductKind::StruveDeriv, 1),
    };
    let zeros = kernel_zero_table(k, target, PRODUCT_ZEROS, &cfg.zeros, &cfg.series)?;
    let trunc = ProductTruncation::new(PRODUCT_ZEROS)?;
    let first = zeros.as_slice()[0];
    let mut worst: f64 = 0.0;
    for i in 1..=20 {
        let z = first * i as f64 / 21.0;
        let series = k.eval(z, order, &cfg.series)?;
        let prod = ml_product(kind, k, z, &zeros, trunc)?;
        worst = worst.max(((prod - series) / series).abs());
    }
    Ok(worst)
}

pub fn product_checks(cfg: &SolverConfig<f64>) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    let sets = LOMMEL_SET
        .map(|v| (Family::Lommel, v))
        .into_iter()
        .chain(STRUVE_SET.map(|v| (Family::Struve, v)));
    for (family, value) in sets {
        let k = kernel(family, value)?;
        for derivative in [false, true] {
            let gap = product_gap(&k, derivative, cfg)?;
            let what = match (family, derivative) {
                (Family::Lommel, false) => "s",
                (Family::Lommel, true) => "s'",
                (Family::Struve, false) => "H",
                (Family::Struve, true) => "H'",
            };
            let name = format!("{what} {}={value} N={PRODUCT_ZEROS}", family.param_symbol());
            let mut check = CheckOutcome::within("product", name, gap, 0.0, PRODUCT_TOL);
            check.expected = 0.0;
            out.push(check);
        }
    }
    Ok(out)
}

/// Every group in order: golden radii, reduced equations, interlacing,
/// products.
pub fn run_suite(cfg: &SolverConfig<f64>) -> Result<VerifyReport> {
    let mut checks = golden_checks(cfg)?;
    checks.extend(reduced_checks(cfg)?);
    checks.extend(interlacing_checks(cfg)?);
    checks.extend(product_checks(cfg)?);
    Ok(VerifyReport { checks })
}
