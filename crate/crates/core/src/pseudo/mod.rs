//! Pseudospectrum machinery (work in progress).

pub mod reduction;
