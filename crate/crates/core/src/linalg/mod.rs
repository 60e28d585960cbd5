//! Exact linear algebra used by the cohomology computations.

pub mod integer;
pub mod rational;
pub mod small;
