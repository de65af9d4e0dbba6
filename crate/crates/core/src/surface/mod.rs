//! Curves on the closed genus-2 surface.

pub mod arrangement;
pub mod curve;
pub mod normal;
pub mod triangulation;
pub mod word;

pub use arrangement::{band_surgery_candidates, dehn_twist, intersection_number, neighborhood_boundary};
pub use curve::Curve;
pub use normal::NormalCurve;
pub use word::CurveKey;
