//! Prime-field arithmetic, monomial bookkeeping, truncated power series and
//! dense exact linear algebra.

pub mod field;
pub mod matrix;
pub mod monomial;
pub mod series;

pub use field::PrimeField;
pub use matrix::{Matrix, Rref};
pub use monomial::{binomial, level_dim, make_level_ring, LevelRing, Monomial, RingConfig};
pub use series::{AdicOrder, SeriesMatrix, TruncatedSeries};
