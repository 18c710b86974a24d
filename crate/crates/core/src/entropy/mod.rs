//! Function families, induced semi-metrics and covering numbers.

mod cover;
mod family;
mod metric;
mod profile;

pub use cover::{cover, covering_number, Cover, CoverMode, EXACT_MAX_POINTS};
pub use family::FunctionFamily;
pub use metric::{family_semimetric, FamilyMetric, FamilyNorm, SemiMetric, TRIANGLE_TOL};
pub use profile::{covering_profile, entropy_dimension, mid_range_levels, CoverLevel, CoveringProfile};
