//! Maya diagrams, the modified TASEP, cylinder dimer kernels and the
//! variational functional of Young tableau limit shapes.

pub mod cyclotomic;
pub mod dimer;
pub mod error;
pub mod linalg;
pub mod mtasep;
pub mod quadrature;
pub mod scalar;
pub mod shape;
pub mod svg;
pub mod verify;
pub mod young;

pub use error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Shape functions in double precision, the default for all tooling.
pub type ShapeFunction64 = shape::ShapeFunction<f64>;
pub type ShapeFunction32 = shape::ShapeFunction<f32>;
