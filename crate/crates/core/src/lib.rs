//! Push-forward Segre classes of subschemes of smooth projective toric
//! varieties, computed exactly from the fan and a multihomogeneous ideal in
//! the Cox ring by residual intersections.

pub mod chow;
pub mod cli;
pub mod cones;
pub mod error;
pub mod exactpoly;
pub mod fan;
pub mod groebner;
pub mod intmat;
pub mod linear;
pub mod segre;

pub use error::{Error, Result};
