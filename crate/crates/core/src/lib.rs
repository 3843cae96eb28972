//! Quotient-lift pairs of finite matroids.
//!
//! Matroids are stored by their circuits on a labelled ground set of at most
//! 24 elements. On top of the basic machinery (rank, bases, duals, minors and
//! axiom checkers) the crate decides whether `M` is a quotient of `L`, builds
//! the matroid `N` on `E ∪ X` with `N / X = M` and `N \ X = L`, and splits
//! the pair into a chain of rank-one quotients. Exhaustive enumeration of
//! small matroids backs every claim with a brute-force oracle.

pub mod axioms;
pub mod cli;
mod core_table;
pub mod enumeration;
pub mod matroid;
pub mod minors;
pub mod quotient;
pub mod sets;
pub mod sweep;
pub mod text;

pub use axioms::{check_basis_exchange, check_circuit_axioms, check_independence_axioms, AxiomReport, Violation};
pub use matroid::{FundamentalFamily, Matroid, MatroidError};
pub use minors::{contract, delete, MinorError};
pub use quotient::{
    certify_quotient, compose_witnesses, factor_homotopy, lift_witness, verify_pair, HomotopySequence, LiftWitness,
    QuotientCertificate, QuotientError, QuotientVerdict,
};
pub use sets::{maximal_members, minimal_members, trace, GroundSet, SetFamily, SubsetMask};
pub use text::{parse_matroid_text, serialize_matroid_text};
