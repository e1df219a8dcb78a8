//! Braid fans, nested Braid fans, permutohedra and their deformation cones,
//! all in exact rational arithmetic.

pub mod budget;
pub mod chisel;
pub mod defcone;
pub mod error;
pub mod exactgeom;
pub mod fans;
pub mod json;
pub mod linalg;
pub mod permutohedra;
pub mod posets;
pub mod random;
pub mod rat;

pub use error::{Error, Result};
pub use rat::{Rat, RatVec};
