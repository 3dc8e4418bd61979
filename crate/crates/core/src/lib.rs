//! Exact computations for two-dimensional quasihomogeneous singularities:
//! Poincaré series, orbit invariants, Saito duality of cyclotomic products,
//! monodromy characteristic polynomials and the McKay correspondence.

pub mod arith;
pub mod catalog;
pub mod error;
pub mod frameshape;
pub mod mckay;
pub mod monodromy;
pub mod poly;
pub mod seifert;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use frameshape::FrameShape;
pub use poly::IntPoly;
pub use series::PowerSeries;
