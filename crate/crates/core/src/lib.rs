//! Exact arithmetic for the Â-, L- and Witten genera and their quasimodular
//! representations as traces of partition Eisenstein series, together with
//! floating-point checks of the theta-function identities behind them.
//!
//! The crate is organised bottom-up:
//!
//! - [`arith`]: rationals, Bernoulli numbers, factorials and binomials;
//! - [`partitions`]: partitions, weight functions `φ`, cycle indices;
//! - [`series`]: truncated `q`-series, Eisenstein series, theta products;
//! - [`symfun`]: symmetric polynomials and genus coefficients;
//! - [`genera`]: partition Eisenstein traces, Ramanujan's `U_{2k}`, the
//!   Witten characteristic series, and exact verification reports;
//! - [`numeric`]: double-precision evaluation of `η`, `θ`, `Θ`, `σ`,
//!   `G_2^*` and Hecke-regularised lattice products.

pub mod arith;
pub mod cli;
pub mod error;
pub mod genera;
pub mod numeric;
pub mod partitions;
mod render;
pub mod report;
pub mod series;
pub mod symfun;

pub use arith::Rational;
pub use error::{Error, Result};
pub use partitions::{Partition, PhiWeight};
pub use series::QSeries;
