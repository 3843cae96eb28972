//! Quotient-lift pairs.
//!
//! `(M, L)` on a common ground set `E` is a quotient-lift pair when some
//! matroid `N` on `E ∪ X` has `N / X = M` and `N \ X = L`. This holds exactly
//! when every circuit of `L` is a union of circuits of `M`. This module
//! certifies that criterion, builds `N` explicitly ([`lift_witness`]),
//! factors a pair into rank-one steps ([`factor_homotopy`]) and carries
//! checkers for the supporting lemmas about cyclic sets.

mod homotopy;
mod lemmas;
mod lift;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::axioms::{AxiomReport, Violation};
use crate::matroid::{Matroid, MatroidError};
use crate::minors::{contract, delete, MinorError};
use crate::sets::{subsets_of, GroundError, GroundSet, SetFamily, SubsetMask};
use crate::text::serialize_named;

pub use homotopy::{
    factor_homotopy, remark_circuits, remark_comparison, HomotopySequence, RemarkComparison, RemarkFamily,
};
pub use lemmas::{base_family_witness, cyclic_elimination, cyclic_extension, lemma_span_witness};
pub use lift::{compose_witnesses, lift_witness, LiftWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("matroids are not on the same ground set")]
    GroundMismatch,
    #[error("not a quotient: circuit {circuit:?} of L leaves {uncovered:?} uncovered by circuits of M")]
    QuotientViolation { circuit: SubsetMask, uncovered: SubsetMask },
    #[error("M = L; a lift needs a rank step s >= 1")]
    ZeroStep,
    #[error("rank step is {expected} but {got} new labels were given")]
    RankMismatch { expected: usize, got: usize },
    #[error("label clash: {0}")]
    LabelClash(String),
    #[error("precondition failed: {0}")]
    PreconditionFailure(String),
    #[error("set {0:?} is independent")]
    NotDependent(SubsetMask),
    #[error("lift construction failed: {reason}\n{dump}")]
    ConstructionFailure { reason: String, dump: String },
    #[error("homotopy factorization failed at step {step}: {reason}\n{dump}")]
    FactorizationFailure { step: usize, reason: String, dump: String },
    #[error("counterexample to {lemma}: {reason}\n{dump}")]
    LemmaCounterexample { lemma: &'static str, reason: String, dump: String },
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Minor(#[from] MinorError),
}

impl From<GroundError> for QuotientError {
    fn from(e: GroundError) -> Self {
        QuotientError::LabelClash(e.to_string())
    }
}

/// Replayable text dump: each matroid as a canonical document, then the
/// named sets as comment lines.
pub(crate) fn dump(matroids: &[(&str, &Matroid)], sets: &[(&str, &GroundSet, SubsetMask)]) -> String {
    let mut out = String::new();
    for (name, m) in matroids {
        out.push_str(&serialize_named(m, name));
    }
    for (name, ground, set) in sets {
        writeln!(out, "# {name} = {}", ground.format_mask(*set)).unwrap();
    }
    out
}

/// Evidence that `M` is a quotient of `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientCertificate {
    pub m: Matroid,
    pub l: Matroid,
    /// `rank(L) - rank(M)`.
    pub step_s: usize,
    /// For each circuit `D` of `L`, circuits of `M` inside `D` whose union is
    /// `D`. From [`certify_quotient`] this is every circuit of `M` inside `D`.
    pub coverings: BTreeMap<SubsetMask, SetFamily>,
}

/// The first circuit of `L` that is not a union of circuits of `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refusal {
    pub circuit: SubsetMask,
    pub uncovered: SubsetMask,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientVerdict {
    Quotient(Box<QuotientCertificate>),
    NotQuotient(Refusal),
}

impl QuotientVerdict {
    pub fn is_quotient(&self) -> bool {
        matches!(self, QuotientVerdict::Quotient(_))
    }

    pub fn certificate(&self) -> Option<&QuotientCertificate> {
        match self {
            QuotientVerdict::Quotient(c) => Some(c),
            QuotientVerdict::NotQuotient(_) => None,
        }
    }

    pub fn into_certificate(self) -> Result<QuotientCertificate, QuotientError> {
        match self {
            QuotientVerdict::Quotient(c) => Ok(*c),
            QuotientVerdict::NotQuotient(r) => {
                Err(QuotientError::QuotientViolation { circuit: r.circuit, uncovered: r.uncovered })
            }
        }
    }
}

/// Checks that every circuit of `l` is a union of circuits of `m`.
pub fn certify_quotient(m: &Matroid, l: &Matroid) -> Result<QuotientVerdict, QuotientError> {
    if m.ground() != l.ground() {
        return Err(QuotientError::GroundMismatch);
    }
    let mut coverings = BTreeMap::new();
    for d in l.circuits().iter() {
        let covering = m.circuits().filter(|c| c.is_subset_of(d));
        let covered = covering.union();
        if covered != d {
            return Ok(QuotientVerdict::NotQuotient(Refusal { circuit: d, uncovered: d - covered }));
        }
        coverings.insert(d, covering);
    }
    let (rm, rl) = (m.rank(), l.rank());
    let step_s = rl.checked_sub(rm).ok_or_else(|| QuotientError::LemmaCounterexample {
        lemma: "rank order",
        reason: format!("certified quotient with rank(L) = {rl} < rank(M) = {rm}"),
        dump: dump(&[("M", m), ("L", l)], &[]),
    })?;
    Ok(QuotientVerdict::Quotient(Box::new(QuotientCertificate { m: m.clone(), l: l.clone(), step_s, coverings })))
}

/// Certifies and fails with [`QuotientError::QuotientViolation`] on refusal.
pub(crate) fn require_quotient(m: &Matroid, l: &Matroid) -> Result<QuotientCertificate, QuotientError> {
    certify_quotient(m, l)?.into_certificate()
}

/// Outcome of [`verify_pair`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCheck {
    pub contraction: Matroid,
    pub deletion: Matroid,
    pub contraction_matches: bool,
    pub deletion_matches: bool,
}

impl PairCheck {
    pub fn holds(&self) -> bool {
        self.contraction_matches && self.deletion_matches
    }
}

/// Whether `N / X = M` and `N \ X = L`.
pub fn verify_pair(n: &Matroid, x: SubsetMask, m: &Matroid, l: &Matroid) -> Result<PairCheck, QuotientError> {
    let full = n.ground().full();
    if x.is_empty() || !x.is_subset_of(full) || x == full {
        return Err(QuotientError::PreconditionFailure(
            "X must be a non-empty proper subset of the ground set of N".into(),
        ));
    }
    let rest = n.ground().restrict(full - x)?;
    if m.ground() != &rest || l.ground() != &rest {
        return Err(QuotientError::GroundMismatch);
    }
    let contraction = contract(n, x)?;
    let deletion = delete(n, x)?;
    Ok(PairCheck { contraction_matches: &contraction == m, deletion_matches: &deletion == l, contraction, deletion })
}

/// Every cyclic set `A` of `M` with `c_M(A) = s + 1` must be dependent in `L`.
pub fn bigcyclo_check(m: &Matroid, l: &Matroid) -> Result<AxiomReport, QuotientError> {
    let cert = require_quotient(m, l)?;
    let violations = m
        .cyclic_sets(Some(cert.step_s + 1))?
        .iter()
        .filter(|&a| l.is_independent(a))
        .map(|a| Violation::Lemma {
            lemma: "bigcyclo",
            sets: vec![a],
            detail: format!("cyclic in M with nullity {} but independent in L", cert.step_s + 1),
        })
        .collect();
    Ok(AxiomReport { violations })
}

/// For a certified pair with `M != L`: `rank(L) > rank(M)` and every
/// independent set of `M` is independent in `L`.
pub fn rank_order_check(m: &Matroid, l: &Matroid) -> Result<AxiomReport, QuotientError> {
    let cert = require_quotient(m, l)?;
    let mut violations = Vec::new();
    if m == l {
        return Ok(AxiomReport { violations });
    }
    if cert.step_s == 0 {
        violations.push(Violation::Lemma {
            lemma: "rank order",
            sets: vec![],
            detail: format!("M != L but both have rank {}", m.rank()),
        });
    }
    for a in subsets_of(m.ground().full()) {
        if m.is_independent(a) && !l.is_independent(a) {
            violations.push(Violation::Lemma {
                lemma: "rank order",
                sets: vec![a],
                detail: "independent in M but dependent in L".into(),
            });
        }
    }
    Ok(AxiomReport { violations })
}

/// If `(M, L)` and `(L, K)` certify, `(M, K)` must certify too.
pub fn transitivity_check(m: &Matroid, l: &Matroid, k: &Matroid) -> Result<AxiomReport, QuotientError> {
    require_quotient(m, l)?;
    require_quotient(l, k)?;
    let violations = match certify_quotient(m, k)? {
        QuotientVerdict::Quotient(_) => Vec::new(),
        QuotientVerdict::NotQuotient(r) => vec![Violation::Lemma {
            lemma: "transitivity",
            sets: vec![r.circuit, r.uncovered],
            detail: "circuit of K not covered by circuits of M".into(),
        }],
    };
    Ok(AxiomReport { violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(r: usize, n: usize) -> Matroid {
        Matroid::uniform(GroundSet::letters(n).unwrap(), r)
    }

    fn m(ground: &GroundSet, s: &str) -> SubsetMask {
        ground.mask_of(s.split("").filter(|c| !c.is_empty())).unwrap()
    }

    #[test]
    fn certify_examples() {
        let (u13, u23) = (u(1, 3), u(2, 3));
        let g = u13.ground().clone();
        let cert = certify_quotient(&u13, &u23).unwrap().into_certificate().unwrap();
        assert_eq!(cert.step_s, 1);
        let abc = m(&g, "abc");
        assert_eq!(cert.coverings[&abc], [m(&g, "ab"), m(&g, "ac"), m(&g, "bc")].into_iter().collect());

        match certify_quotient(&u23, &u13).unwrap() {
            QuotientVerdict::NotQuotient(r) => {
                assert_eq!(r.circuit, m(&g, "ab"));
                assert_eq!(r.uncovered, m(&g, "ab"));
            }
            v => panic!("{v:?}"),
        }

        let cert = certify_quotient(&u23, &u23).unwrap().into_certificate().unwrap();
        assert_eq!(cert.step_s, 0);
        assert_eq!(cert.coverings[&abc], [abc].into_iter().collect());

        assert_eq!(certify_quotient(&u13, &u(1, 4)), Err(QuotientError::GroundMismatch));
    }

    #[test]
    fn verify_pair_examples() {
        let u24 = u(2, 4);
        let g = u24.ground().clone();
        let d = m(&g, "d");
        assert!(verify_pair(&u24, d, &u(1, 3), &u(2, 3)).unwrap().holds());
        let swapped = verify_pair(&u24, d, &u(2, 3), &u(1, 3)).unwrap();
        assert!(!swapped.holds());
        assert!(!swapped.contraction_matches && !swapped.deletion_matches);

        let ab = GroundSet::new(["a", "b"]).unwrap();
        let loops = Matroid::from_circuits(ab.clone(), [SubsetMask(1), SubsetMask(2)].into_iter().collect()).unwrap();
        let f2 = Matroid::free(ab.clone());
        let cd = m(&g, "cd");
        assert!(verify_pair(&u24, cd, &loops, &f2).unwrap().holds());
        assert!(!verify_pair(&u24, cd, &f2, &f2).unwrap().holds());
        assert_eq!(verify_pair(&u24, cd, &u(1, 3), &f2), Err(QuotientError::GroundMismatch));
        assert!(matches!(verify_pair(&u24, SubsetMask::EMPTY, &u24, &u24), Err(QuotientError::PreconditionFailure(_))));
    }

    #[test]
    fn bigcyclo_examples() {
        let (u13, u23) = (u(1, 3), u(2, 3));
        assert!(bigcyclo_check(&u13, &u23).unwrap().passed());
        let f3 = Matroid::free(GroundSet::letters(3).unwrap());
        assert!(bigcyclo_check(&u13, &f3).unwrap().passed());
        assert!(bigcyclo_check(&u24(), &u24()).unwrap().passed());
        assert!(matches!(bigcyclo_check(&u23, &u13), Err(QuotientError::QuotientViolation { .. })));
    }

    fn u24() -> Matroid {
        u(2, 4)
    }

    #[test]
    fn rank_order_and_transitivity() {
        let (u13, u23) = (u(1, 3), u(2, 3));
        let f3 = Matroid::free(GroundSet::letters(3).unwrap());
        assert!(rank_order_check(&u13, &u23).unwrap().passed());
        assert!(rank_order_check(&u13, &u13).unwrap().passed());
        assert!(transitivity_check(&u13, &u23, &f3).unwrap().passed());
        assert!(transitivity_check(&u23, &u13, &f3).is_err());
    }
}
