//! Exact computations on moduli of quiver representations.

pub mod bundle;
pub mod chow;
pub mod collection;
pub mod linalg;
pub mod poly;
pub mod quiver;
pub mod rational;
pub mod rep;
pub mod strata;
