//! Invariant p-adic heat kernels, wavelet spectra and the spectral
//! classification of Mumford-curve reduction graphs.

pub mod error;
pub mod action;
pub mod config;
pub mod graphs;
pub mod padic;
pub mod selftest;
pub mod schwartz;
pub mod spectral;
pub mod teichmueller;

pub use error::{Error, Result};
