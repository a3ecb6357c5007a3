//! Exact Jordan normal form of the monodromy at infinity of polynomials
//! whose generic fibers have smooth projective closures, computed from the
//! isolated singularities of the hypersurface at infinity.

pub mod cli;
pub mod cyclic;
pub mod cyclo;
pub mod defect;
pub mod infinity;
pub mod jordan;
pub mod localsing;
pub mod oracle;
