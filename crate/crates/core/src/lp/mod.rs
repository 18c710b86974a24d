//! Finite measure spaces, L_p and grand Lebesgue norms.

mod fatou;
mod fundamental;
pub mod io;
mod measure;
mod mri;
mod natural;
mod norms;

pub use fatou::{fatou_check, FatouReport};
pub use fundamental::{
    fundamental_function, indicator_norm_check, realize_measure, IndicatorReport, IndicatorSpec, INDICATOR_TOL,
    REALIZE_TOL,
};
pub use measure::{DiscreteMeasureSpace, SimpleFunction};
pub(crate) use measure::same_space;
pub use mri::{mri_norm, MriNormSpec, WeightedMoments};
pub use natural::natural_psi;
pub use norms::{bgl_norm, bgl_norm_of_curve, lp_norm, NormValue};
