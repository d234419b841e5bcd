//! Machine-checkable identities between Stirling-type numbers and
//! poly-Bernoulli polynomials.
//!
//! Every check compares canonical polynomials (or exact rationals after full
//! substitution); nothing here samples random points.

use thiserror::Error;

use crate::rat::Rat;

mod catalog;
mod recurrences;
mod report;
mod rfunction;
mod transfer;

pub use catalog::{odd_weight_sum, run_catalog, run_suite, CatalogConfig, Suite};
pub use recurrences::{carlitz_check, check_binomial_shift_family, gen_recurrence_a, gen_recurrence_b, Members};
pub use report::{CheckRecord, SuiteReport, Summary};
pub use rfunction::{r_function, RFunctionEval};
pub use transfer::{
    bernoullify, umbral_transfer, verify_transfer, IdentitySpec, Orders, ShiftedPower, ShiftedSum, ShiftedTerm,
    TransferIdentity, TransferWitness,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("R-function pole at (mu={mu}, k={k}, y={y})")]
    Pole { mu: i64, k: i64, y: Rat },
    #[error("base polynomial identity fails: {lhs} != {rhs}")]
    BaseIdentity { lhs: String, rhs: String },
    #[error("coefficient sequences must have length {expected}, got {lhs} and {rhs}")]
    Shape { expected: usize, lhs: usize, rhs: usize },
    #[error("transfer variable `{0}` appears in a shift")]
    TransferVariableInShift(String),
    #[error("transfer variable `{0}` appears in a coefficient")]
    TransferVariableInCoefficient(String),
    #[error("{identity}: members disagree: {left} != {right}")]
    Disagreement {
        identity: &'static str,
        left: String,
        right: String,
    },
}
