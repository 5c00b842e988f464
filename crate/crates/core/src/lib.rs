//! One-particle reduced density operators of N-harmonium.
//!
//! Bosons: closed-form Gibbs state of an effective oscillator ([`boson`]).
//! Fermions: exact polynomial prefactor, truncated Hermite-basis matrix at
//! arbitrary precision and its natural spectrum ([`fermion`], [`spectrum`]).

pub mod boson;
pub mod cli;
pub mod error;
pub mod export;
pub mod fermion;
pub mod figure;
pub mod model;
pub mod numerics;
pub mod pipeline;
pub mod spectrum;

pub use error::{Error, Result};
