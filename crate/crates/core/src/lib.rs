//! Exact computations with adic completion and torsion over
//! `A = F_p[[x₁..x_n]]` with its maximal ideal `𝔞`.
//!
//! Complete modules are represented as towers of finite-dimensional modules
//! over the artinian quotients `A_k = A/𝔞^{k+1}`, torsion modules as directed
//! systems of such modules, and derived functors against the residue field
//! through Koszul complexes. Every verdict about an infinite object is stamped
//! with the precision at which it was checked.

pub mod base;
pub mod complex;
pub mod error;
pub mod fgcomplex;
pub mod koszul;
pub mod level;
pub mod matlis;
pub mod nakayama;
pub mod projective;
pub mod resolve;
pub mod tower;

pub use base::*;
pub use error::{AdicError, Result};
