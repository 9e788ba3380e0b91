//! Chromatic Lagrangians of cubic planar graphs: point counts, period
//! lattices, period maps and framed superpotentials, in exact arithmetic.

pub mod chromatic;
pub mod error;
pub mod exactalg;
pub mod homlattice;
pub mod io;
pub mod periods;
pub mod ribbon;
pub mod superpot;

pub use error::{Error, Result};
