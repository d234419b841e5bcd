//! Exact generalized Stirling numbers and poly-Bernoulli polynomials in any
//! number of variables, with a checker that verifies identities between them
//! by canonical polynomial equality.

pub mod bernoulli;
pub mod cli;
pub mod combinat;
pub mod identities;
pub mod poly;
pub mod rat;
pub mod stirling;

pub use poly::{rising_product, MPoly};
pub use rat::Rat;
