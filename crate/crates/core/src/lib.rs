//! Linear codes over `R_q = F_2[u_1, …, u_q] / (u_i^2)`.
//!
//! Elements of `R_q` are stored as bitmasks over the `2^q` monomials `u_A`
//! (bit `j` is the monomial whose index set has characteristic vector `j`).
//! The crate builds simplex, MacDonald and repetition codes, maps them to
//! binary codes through Lee and homogeneous Gray maps, computes weight
//! distributions and covering radii, and audits closed-form claims
//! against exhaustive computation.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod analysis;
pub mod audit;
pub mod bits;
pub mod constructions;
pub mod error;
pub mod linalg;
pub mod ring;

pub use analysis::{CoveringRadiusResult, Engine, Metric, SymbolWeights, WeightDistribution};
pub use audit::{catalog, find_claim, run_audit, AuditEntry, AuditReport, AuditValue, Budget, Claim, Verdict};
pub use bits::{BinaryCode, BinaryMatrix, BitVec};
pub use constructions::{ConstructionParams, Family, Generator};
pub use error::{Error, Result};
pub use linalg::{CodeOverRq, ColumnMatrix, GrayMap, RqMatrix};
pub use ring::{GrayKind, GrayVector, HomMode, RingSpec, RqElement, Q_MAX};

/// Exact rationals used for weights and radii.
pub type Rational = num_rational::Ratio<i128>;

/// Size guards shared by every exhaustive routine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Upper bound on enumerated objects: codewords, matrix entries or search points.
    pub enum_limit: u64,
    /// Upper bound on `codewords × length` cells held in memory.
    pub cell_limit: u64,
    /// Largest parity-check redundancy the syndrome engine will tabulate.
    pub syndrome_bits: u32,
    /// Largest code the profile engine accepts.
    pub profile_codewords: usize,
    /// Largest Pareto frontier the profile engine keeps per column.
    pub frontier_limit: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enum_limit: 1 << 24,
            cell_limit: 1 << 26,
            syndrome_bits: 26,
            profile_codewords: 64,
            frontier_limit: 1 << 12,
        }
    }
}
