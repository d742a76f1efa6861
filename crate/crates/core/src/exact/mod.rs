//! Exact arithmetic: rationals, univariate and sparse Laurent polynomials.

pub mod laurent;
pub mod rat;
pub mod unipoly;

pub use laurent::{poly_identity_check, LaurentPoly, PolyIdentity, TermRecord};
pub use rat::{int, parse_rat, rat, Rat};
pub use unipoly::{cyclotomic, t_pow_minus_one, UniPoly};
