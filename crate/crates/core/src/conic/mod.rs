//! Conic bundle structure of the reference model and the curves it produces.

pub mod analysis;
pub mod critical;
pub mod curve;
pub mod quadform;
pub mod smooth;

pub use analysis::{analyze, AnalysisOptions, ConicAnalysis};
pub use critical::{critical_alpha, critical_alpha_certificate, CriticalCertificate};
pub use curve::*;
pub use quadform::*;
pub use smooth::{resultant, smoothness_certificate, SmoothnessCertificate};
