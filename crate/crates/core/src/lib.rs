//! Lommel and Struve functions of the first kind, the zeros of these
//! functions and of their normalized forms, and the radii of β-uniform
//! convexity of order α of those forms.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the aliases below
//! fix the scalar to `f64`, the precision all tolerances are stated for.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod forms;
pub mod kernel;
pub mod radius;
pub mod reduced;
pub mod scalar;
pub mod series;
pub mod sweep;
pub mod verify;
pub mod zeros;

pub use error::{Error, Result};
pub use forms::{FormKind, ShapeParam};
pub use kernel::Family;
pub use scalar::Real;

pub type FormF64 = forms::Form<f64>;
pub type KernelF64 = kernel::Kernel<f64>;
pub type SeriesConfigF64 = series::SeriesConfig<f64>;
pub type ZeroTableF64 = zeros::ZeroTable<f64>;
pub type ZeroOptionsF64 = zeros::ZeroOptions<f64>;
pub type UniformityParamsF64 = radius::UniformityParams<f64>;
pub type RadiusResultF64 = radius::RadiusResult<f64>;
pub type SolverConfigF64 = radius::SolverConfig<f64>;
pub type CurvatureSeriesDataF64 = forms::CurvatureSeriesData<f64>;
