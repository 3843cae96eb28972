//! The [`Matroid`] value type, stored by its circuits.
//!
//! Independence, rank, bases and cyclic sets are all derived from the circuit
//! clutter. For ground sets of up to 16 elements a dense table of
//! "union of circuits inside S" is built lazily on first use; larger ground
//! sets fall back to scanning the circuit list.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use thiserror::Error;

use crate::axioms::{first_circuit_violation, first_exchange_violation, Violation};
use crate::core_table::{CoreOracle, TABLE_LIMIT};
use crate::sets::{subsets_of, GroundError, GroundSet, SetFamily, SubsetMask};

/// Largest ground set for which `cyclic_sets` enumerates without a filter.
pub const CYCLIC_ENUMERATION_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error(transparent)]
    Ground(#[from] GroundError),
    #[error("set {0:?} has elements outside the ground set")]
    OutOfGround(SubsetMask),
    #[error("the empty set is listed as a circuit")]
    EmptyCircuit,
    #[error("circuit family is not a clutter: {smaller:?} is contained in {larger:?}")]
    NotClutter { smaller: SubsetMask, larger: SubsetMask },
    #[error("circuit elimination fails for C1={c1:?}, C2={c2:?}, e={e}")]
    EliminationFailure { c1: SubsetMask, c2: SubsetMask, e: usize },
    #[error("basis family is empty")]
    EmptyBasisFamily,
    #[error("bases {first:?} and {other:?} have different sizes")]
    UnequalBasisSizes { first: SubsetMask, other: SubsetMask },
    #[error("basis exchange fails for B1={b1:?}, B2={b2:?}, x={x}")]
    ExchangeFailure { b1: SubsetMask, b2: SubsetMask, x: usize },
    #[error("set {0:?} is not independent")]
    NotIndependent(SubsetMask),
    #[error("{i:?} + {x} is independent; there is no fundamental circuit")]
    StillIndependent { i: SubsetMask, x: usize },
    #[error("element {x} already lies in {i:?}")]
    ElementInSet { i: SubsetMask, x: usize },
    #[error("ground set has {n} elements; exhaustive enumeration is capped at {cap}")]
    GroundTooLarge { n: usize, cap: usize },
}

impl MatroidError {
    fn from_violation(v: Violation) -> Self {
        match v {
            Violation::EmptyMember => MatroidError::EmptyCircuit,
            Violation::Containment { smaller, larger } => MatroidError::NotClutter { smaller, larger },
            Violation::Elimination { c1, c2, e } => MatroidError::EliminationFailure { c1, c2, e },
            Violation::NoBases => MatroidError::EmptyBasisFamily,
            Violation::UnequalBases { b1, b2 } => MatroidError::UnequalBasisSizes { first: b1, other: b2 },
            Violation::Exchange { b1, b2, x } => MatroidError::ExchangeFailure { b1, b2, x },
            other => unreachable!("not produced by the weak checks: {other:?}"),
        }
    }
}

/// A matroid on a labelled ground set, represented by its circuits.
pub struct Matroid {
    ground: GroundSet,
    circuits: SetFamily,
    oracle: OnceLock<CoreOracle>,
    rank: OnceLock<usize>,
}

impl Clone for Matroid {
    fn clone(&self) -> Self {
        Matroid {
            ground: self.ground.clone(),
            circuits: self.circuits.clone(),
            oracle: self.oracle.clone(),
            rank: self.rank.clone(),
        }
    }
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.circuits == other.circuits
    }
}

impl Eq for Matroid {}

impl Hash for Matroid {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ground.hash(state);
        self.circuits.hash(state);
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let circuits: Vec<String> = self.circuits.iter().map(|c| self.ground.format_mask(c)).collect();
        f.debug_struct("Matroid").field("ground", &self.ground).field("circuits", &circuits).finish()
    }
}

/// The fundamental circuits `C(x, I)` for the roots `x` of `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalFamily {
    pub base_independent: SubsetMask,
    pub roots: SubsetMask,
    pub circuits: BTreeMap<usize, SubsetMask>,
}

impl FundamentalFamily {
    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }

    pub fn union(&self) -> SubsetMask {
        self.circuits.values().fold(SubsetMask::EMPTY, |a, &b| a | b)
    }

    pub fn family(&self) -> SetFamily {
        self.circuits.values().copied().collect()
    }

    pub fn get(&self, root: usize) -> Option<SubsetMask> {
        self.circuits.get(&root).copied()
    }
}

impl Matroid {
    /// Validates AC0–AC2 and builds the matroid.
    pub fn from_circuits(ground: GroundSet, circuits: SetFamily) -> Result<Matroid, MatroidError> {
        check_within(&ground, &circuits)?;
        if let Some(v) = first_circuit_violation(ground.len(), &circuits, false) {
            return Err(MatroidError::from_violation(v));
        }
        Ok(Matroid::from_circuits_unchecked(ground, circuits))
    }

    /// Skips validation. Callers must pass a genuine circuit family.
    pub(crate) fn from_circuits_unchecked(ground: GroundSet, circuits: SetFamily) -> Matroid {
        Matroid { ground, circuits, oracle: OnceLock::new(), rank: OnceLock::new() }
    }

    /// Builds the matroid with the given bases, checking the exchange axiom.
    ///
    /// Every circuit is a fundamental circuit of some basis, so the circuits
    /// are collected as `C(x, B) = x + {y ∈ B : B - y + x is a basis}`.
    pub fn from_bases(ground: GroundSet, bases: SetFamily) -> Result<Matroid, MatroidError> {
        check_within(&ground, &bases)?;
        let is_basis = |m: SubsetMask| bases.contains(m);
        if let Some(v) = first_exchange_violation(bases.members(), &is_basis) {
            return Err(MatroidError::from_violation(v));
        }
        let circuits = circuits_from_bases(ground.full(), &bases);
        Ok(Matroid::from_circuits_unchecked(ground, circuits))
    }

    /// Free matroid: no circuits.
    pub fn free(ground: GroundSet) -> Matroid {
        Matroid::from_circuits_unchecked(ground, SetFamily::new())
    }

    /// Uniform matroid `U(r, n)` on `ground`.
    pub fn uniform(ground: GroundSet, r: usize) -> Matroid {
        let circuits = subsets_of(ground.full()).filter(|s| s.len() == r + 1).collect();
        Matroid::from_circuits_unchecked(ground, circuits)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn circuits(&self) -> &SetFamily {
        &self.circuits
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    /// A matroid always has a non-empty ground set.
    pub fn is_empty(&self) -> bool {
        false
    }

    fn oracle(&self) -> &CoreOracle {
        self.oracle.get_or_init(|| CoreOracle::new(self.ground.len(), self.circuits.members()))
    }

    /// Union of the circuits contained in `a`.
    pub fn core_of(&self, a: SubsetMask) -> SubsetMask {
        self.oracle().core(a)
    }

    pub fn is_independent(&self, a: SubsetMask) -> bool {
        !self.oracle().has_member_within(a)
    }

    pub fn is_circuit(&self, a: SubsetMask) -> bool {
        self.circuits.contains(a)
    }

    /// `a` is the union of the circuits it contains (the empty set included).
    pub fn is_cyclic(&self, a: SubsetMask) -> bool {
        self.core_of(a) == a
    }

    /// Greedy extension of the independent set `start` by elements of
    /// `within`, taken in ground order.
    pub fn extend_independent(&self, start: SubsetMask, within: SubsetMask) -> SubsetMask {
        debug_assert!(self.is_independent(start));
        let mut i = start;
        for x in (within - start).iter() {
            if self.is_independent(i.with(x)) {
                i = i.with(x);
            }
        }
        i
    }

    /// Maximal independent subset of `a` chosen greedily in ground order.
    pub fn max_independent_in(&self, a: SubsetMask) -> SubsetMask {
        self.extend_independent(SubsetMask::EMPTY, a)
    }

    pub fn rank_of(&self, a: SubsetMask) -> usize {
        self.max_independent_in(a).len()
    }

    /// Rank of the whole matroid.
    pub fn rank(&self) -> usize {
        *self.rank.get_or_init(|| self.rank_of(self.ground.full()))
    }

    /// `|a| - rank(a)`, also called the cyclomaticity of `a`.
    pub fn nullity(&self, a: SubsetMask) -> usize {
        a.len() - self.rank_of(a)
    }

    pub fn bases(&self) -> SetFamily {
        let r = self.rank();
        subsets_of(self.ground.full()).filter(|s| s.len() == r && self.is_independent(*s)).collect()
    }

    /// The dual matroid; its bases are the complements of the bases of `self`.
    pub fn dual(&self) -> Matroid {
        let full = self.ground.full();
        let co_bases: SetFamily = self.bases().map_masks(|b| full - b);
        let circuits = circuits_from_bases(full, &co_bases);
        Matroid::from_circuits_unchecked(self.ground.clone(), circuits)
    }

    /// The unique circuit `C(x, I)` with `x ∈ C ⊆ I + x`.
    pub fn fundamental_circuit(&self, i: SubsetMask, x: usize) -> Result<SubsetMask, MatroidError> {
        let full = self.ground.full();
        if !i.is_subset_of(full) || x >= self.ground.len() {
            return Err(MatroidError::OutOfGround(i.with(x)));
        }
        if !self.is_independent(i) {
            return Err(MatroidError::NotIndependent(i));
        }
        if i.contains(x) {
            return Err(MatroidError::ElementInSet { i, x });
        }
        let span = i.with(x);
        let mut found = self.circuits.iter().filter(|c| c.contains(x) && c.is_subset_of(span));
        let circuit = found.next().ok_or(MatroidError::StillIndependent { i, x })?;
        assert!(
            found.next().is_none(),
            "two circuits through {x} inside {span:?}; the circuit family violates elimination"
        );
        Ok(circuit)
    }

    pub fn fundamental_family(&self, i: SubsetMask, roots: SubsetMask) -> Result<FundamentalFamily, MatroidError> {
        let mut circuits = BTreeMap::new();
        if !self.is_independent(i) {
            return Err(MatroidError::NotIndependent(i));
        }
        for x in roots.iter() {
            circuits.insert(x, self.fundamental_circuit(i, x)?);
        }
        Ok(FundamentalFamily { base_independent: i, roots, circuits })
    }

    /// All cyclic sets, optionally only those of nullity `nullity_filter`.
    pub fn cyclic_sets(&self, nullity_filter: Option<usize>) -> Result<SetFamily, MatroidError> {
        let n = self.ground.len();
        if n > CYCLIC_ENUMERATION_CAP && nullity_filter.is_none() {
            return Err(MatroidError::GroundTooLarge { n, cap: CYCLIC_ENUMERATION_CAP });
        }
        Ok(subsets_of(self.ground.full())
            .filter(|&a| self.is_cyclic(a))
            .filter(|&a| nullity_filter.is_none_or(|k| self.nullity(a) == k))
            .collect())
    }

    /// Whether the dense subset table is in use.
    pub fn uses_table(&self) -> bool {
        self.ground.len() <= TABLE_LIMIT
    }

    /// Same circuits on a ground set with different labels.
    pub fn relabel(&self, ground: GroundSet) -> Result<Matroid, MatroidError> {
        if ground.len() != self.ground.len() {
            return Err(MatroidError::OutOfGround(self.ground.full()));
        }
        Ok(Matroid::from_circuits_unchecked(ground, self.circuits.clone()))
    }
}

fn check_within(ground: &GroundSet, family: &SetFamily) -> Result<(), MatroidError> {
    let full = ground.full();
    match family.iter().find(|m| !m.is_subset_of(full)) {
        Some(m) => Err(MatroidError::OutOfGround(m)),
        None => Ok(()),
    }
}

fn circuits_from_bases(full: SubsetMask, bases: &SetFamily) -> SetFamily {
    let mut out = SetFamily::new();
    for b in bases.iter() {
        for x in (full - b).iter() {
            let circuit = b
                .iter()
                .filter(|&y| bases.contains(b.without(y).with(x)))
                .fold(SubsetMask::singleton(x), |c, y| c.with(y));
            out.insert(circuit);
        }
    }
    out
}
