//! Free-particle wave mechanics for double slits in space and in time.
//!
//! The crate evaluates closed-form densities for point slits, the shutter
//! transient and weighted slits ([`analytic`]), propagates finite initial
//! states spectrally ([`propagator`]) and bundles reproducible parameter
//! sets ([`scenarios`]) whose results are written by [`output`] and
//! driven from the command line by [`cli`].
//!
//! All computations use internal units with `ħ = 1`, `m_e = 1` and an
//! energy unit of 1 eV; see [`units`].

pub mod analytic;
pub mod cli;
pub mod error;
pub mod output;
pub mod propagator;
pub mod scenarios;
pub mod series;
pub mod specfun;
pub mod units;
pub mod validate;

pub use error::{Error, Result};
