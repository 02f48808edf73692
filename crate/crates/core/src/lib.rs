//! Exact certificates for a one-parameter family of convex projective
//! structures on the rectified 4-simplex and its Dehn fillings.

#![allow(clippy::needless_range_loop)]

pub mod cartan;
pub mod complex;
pub mod coxeter;
pub mod exactnum;
pub mod family;
pub mod matrix;
pub mod par;
pub mod reflect;
pub mod report;
pub mod vinberg;

pub use par::Exec;
