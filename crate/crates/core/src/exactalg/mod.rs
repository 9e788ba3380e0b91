//! Exact arithmetic: rationals, polynomials, rational functions, truncated
//! power series, elimination and integer lattices.

pub mod gcd;
pub mod moebius;
pub mod mpoly;
pub mod ratfunc;
pub mod rational;
pub mod resultant;
pub mod series;
pub mod snf;
pub mod solve;

pub use gcd::gcd;
pub use moebius::moebius;
pub use mpoly::{MPoly, Monomial};
pub use ratfunc::RatFunc;
pub use rational::Q;
pub use resultant::resultant_eliminate;
pub use series::{rat_expand, TruncSeries};
pub use snf::{smith_normal_form, IntMatrix, Smith};
pub use solve::series_solve;
