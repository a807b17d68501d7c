//! Integrality of factorial ratios and the geometry of the hypergeometric
//! families behind them.
//!
//! A [`GammaList`] encodes `c_n = Π (−γ_i n)! / Π (γ_i n)!`. From it this
//! crate computes the Landau floor-function test, the circuit polytope and
//! its Ehrhart data, closed forms for Hodge numbers, monodromy data,
//! finite-field hypergeometric traces, point counts and Euler factors.

pub mod arith;
pub mod cli;
pub mod criteria;
pub mod error;
pub mod ffield;
pub mod gamma;
pub mod hodge;
pub mod polytope;
pub mod report;

pub use error::{Error, GammaError, Result};
pub use gamma::{
    factorial_ratio, hypergeom_data, landau_check, parse_gamma, GammaList, HypergeomData,
    LandauResult,
};
