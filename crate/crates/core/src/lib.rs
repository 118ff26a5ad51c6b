//! Exact volume distributions of plane partitions in a box and of
//! Ferrers-diagram ensembles.
//!
//! Everything here is pure computation over arbitrary-precision integers and
//! rationals. Floating point appears only in [`limits`], where exact
//! cumulative counts are compared against continuous reference laws.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod ensembles;
pub mod error;
pub mod ferrers;
pub mod limits;
pub mod moments;
pub mod oracle;
pub mod qpoly;

pub use ensembles::{distribution, EnsembleKind, EnsembleSpec, VolumeDistribution};
pub use error::{Error, Result};
pub use qpoly::{DegreeCap, ExactPolynomial, ExactRational, FactorRatioProduct};
