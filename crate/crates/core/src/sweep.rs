//! Tabulated ψ curves for plotting, including the six standard figures.

use std::io::{self, Write};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{Form, FormKind, ShapeParam};
use crate::radius::{printed_lhs, psi, UniformityParams};
use crate::scalar::Real;
use crate::series::SeriesConfig;

pub const CSV_HEADER: &str = "form,param,r,lhs_printed,psi_unified";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow<T> {
    pub form: FormKind,
    pub param: T,
    pub r: T,
    /// Left-hand side of the expanded radius equation.
    pub lhs_printed: T,
    pub psi_unified: T,
}

/// `steps` equally spaced points from `r_min` to `r_max` inclusive; a single
/// step gives just `r_min`.
pub fn grid<T: Real>(r_min: T, r_max: T, steps: usize) -> Result<Vec<T>> {
    if steps == 0 {
        return Err(Error::InvalidParameter("steps must be >= 1".into()));
    }
    if !(r_min > T::zero()) || !(r_max >= r_min) || !r_max.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "need 0 < r_min <= r_max, got r_min = {r_min}, r_max = {r_max}"
        )));
    }
    if steps == 1 {
        return Ok(vec![r_min]);
    }
    let h = (r_max - r_min) / T::from_usize_lossy(steps - 1);
    Ok((0..steps)
        .map(|i| {
            if i + 1 == steps {
                r_max
            } else {
                r_min + h * T::from_usize_lossy(i)
            }
        })
        .collect())
}

/// Rows ordered by parameter (as given) then by r.
pub fn sweep<T: Real>(
    kind: FormKind,
    params: &[ShapeParam<T>],
    up: UniformityParams<T>,
    r_min: T,
    r_max: T,
    steps: usize,
    cfg: &SeriesConfig<T>,
) -> Result<Vec<SweepRow<T>>> {
    let rs = grid(r_min, r_max, steps)?;
    let mut rows = Vec::with_capacity(rs.len() * params.len());
    for p in params {
        let form = Form::new(kind, *p)?;
        for &r in &rs {
            rows.push(SweepRow {
                form: kind,
                param: p.value(),
                r,
                lhs_printed: printed_lhs(&form, up, r, cfg)?,
                psi_unified: psi(&form, up, r, cfg)?,
            });
        }
    }
    Ok(rows)
}

fn sci<T: Real>(x: T) -> String {
    format!("{:.16e}", x.to_f64_lossy())
}

/// Writes the header and one line per row, LF-terminated.
pub fn write_csv<T: Real, W: Write>(rows: &[SweepRow<T>], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            row.form,
            sci(row.param),
            sci(row.r),
            sci(row.lhs_printed),
            sci(row.psi_unified)
        )?;
    }
    Ok(())
}

/// Number of strict sign changes along a sequence (zeros are skipped).
pub fn sign_changes<T: Real>(values: &[T]) -> usize {
    let mut last: Option<bool> = None;
    let mut count = 0;
    for v in values {
        if *v == T::zero() {
            continue;
        }
        let pos = *v > T::zero();
        if last.is_some_and(|l| l != pos) {
            count += 1;
        }
        last = Some(pos);
    }
    count
}

pub fn strictly_decreasing<T: Real>(values: &[T]) -> bool {
    values.windows(2).all(|w| w[1] < w[0])
}

/// One of the six standard figure configurations (α = 0, β = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigurePreset {
    pub id: char,
    pub form: FormKind,
    pub params: [f64; 4],
    /// Plotted window [0, r_max].
    pub r_max: f64,
}

const LOMMEL_CURVES: [f64; 4] = [-0.25, -0.2, 0.1, 0.3];
const STRUVE_CURVES: [f64; 4] = [-0.3, -0.25, 0.0, 0.5];

pub const FIGURES: [FigurePreset; 6] = [
    FigurePreset {
        id: 'a',
        form: FormKind::F,
        params: LOMMEL_CURVES,
        r_max: 0.9,
    },
    FigurePreset {
        id: 'b',
        form: FormKind::G,
        params: LOMMEL_CURVES,
        r_max: 0.9,
    },
    FigurePreset {
        id: 'c',
        form: FormKind::H,
        params: LOMMEL_CURVES,
        r_max: 2.0,
    },
    FigurePreset {
        id: 'd',
        form: FormKind::U,
        params: STRUVE_CURVES,
        r_max: 1.2,
    },
    FigurePreset {
        id: 'e',
        form: FormKind::V,
        params: STRUVE_CURVES,
        r_max: 1.2,
    },
    FigurePreset {
        id: 'f',
        form: FormKind::W,
        params: STRUVE_CURVES,
        r_max: 2.7,
    },
];

impl FigurePreset {
    pub fn by_id(id: char) -> Option<FigurePreset> {
        FIGURES.into_iter().find(|f| f.id == id.to_ascii_lowercase())
    }

    /// Sweeps the figure's curves from r = 0.01 to the window end.
    pub fn rows(&self, steps: usize, cfg: &SeriesConfig<f64>) -> Result<Vec<SweepRow<f64>>> {
        let params = self
            .params
            .iter()
            .map(|&v| ShapeParam::checked(self.form.family(), v))
            .collect::<Result<Vec<_>>>()?;
        sweep(
            self.form,
            &params,
            UniformityParams::uniform(),
            0.01,
            self.r_max,
            steps,
            cfg,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints_and_single_step() {
        let g = grid(0.01, 0.9, 90).unwrap();
        assert_eq!(g.len(), 90);
        assert_eq!(g[0], 0.01);
        assert_eq!(g[89], 0.9);
        assert_eq!(grid(0.3, 0.9, 1).unwrap(), vec![0.3]);
        assert!(grid(0.3, 0.9, 0).is_err());
        assert!(grid(0.0, 0.9, 5).is_err());
    }

    #[test]
    fn sign_change_counting() {
        assert_eq!(sign_changes(&[1.0, 0.5, -0.1, -2.0]), 1);
        assert_eq!(sign_changes(&[1.0, 0.0, -1.0, 1.0]), 2);
        assert_eq!(sign_changes::<f64>(&[]), 0);
        assert!(strictly_decreasing(&[3.0, 2.0, -1.0]));
        assert!(!strictly_decreasing(&[3.0, 3.0]));
    }

    #[test]
    fn csv_layout() {
        let rows = sweep(
            FormKind::F,
            &[ShapeParam::mu(0.3).unwrap()],
            UniformityParams::uniform(),
            0.5,
            0.5,
            1,
            &SeriesConfig::default(),
        )
        .unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.split('\n').collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert!(lines[1].starts_with("f,2.9999999999999999e-1,5.0000000000000000e-1,"));
        assert_eq!(lines[2], "");
        assert!(!text.contains('\r'));
    }
}
