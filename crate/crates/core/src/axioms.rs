//! Exhaustive checkers for the circuit, independence and basis axiom systems.
//!
//! The checkers accept raw families (nothing is assumed about them) and report
//! every violation with a witness that [`Violation::replay`] can re-check
//! against the same family. Scans run in canonical family order, so the first
//! violation in a report is the least one in that order.

use std::fmt;
use std::ops::ControlFlow;

use crate::core_table::CoreOracle;
use crate::sets::{GroundSet, SetFamily, SubsetMask};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// AC0: the empty set is a member.
    EmptyMember,
    /// AC1: `smaller ⊊ larger`, both members.
    Containment { smaller: SubsetMask, larger: SubsetMask },
    /// AC2: no member inside `(c1 ∪ c2) - e`.
    Elimination { c1: SubsetMask, c2: SubsetMask, e: usize },
    /// AC2!: no member `c` with `d ∈ c ⊆ (c1 ∪ c2) - e`, where `d ∈ c1 \ c2`.
    StrongElimination { c1: SubsetMask, c2: SubsetMask, e: usize, d: usize },
    /// AI0: the empty set is missing.
    MissingEmpty,
    /// AI1: `set` is a member but `subset` is not.
    NotDownwardClosed { set: SubsetMask, subset: SubsetMask },
    /// AI2: `|x| < |y|` and no `y' ∈ y \ x` gives a member `x + y'`.
    Augmentation { x: SubsetMask, y: SubsetMask },
    /// The basis family is empty.
    NoBases,
    /// Two bases of different size.
    UnequalBases { b1: SubsetMask, b2: SubsetMask },
    /// `x ∈ b1 \ b2` has no replacement `y ∈ b2 \ b1` with `b1 - x + y` a basis.
    Exchange { b1: SubsetMask, b2: SubsetMask, x: usize },
    /// A lemma of the quotient theory failed on the listed sets.
    Lemma { lemma: &'static str, sets: Vec<SubsetMask>, detail: String },
}

impl Violation {
    pub fn axiom_id(&self) -> &'static str {
        match self {
            Violation::EmptyMember => "AC0",
            Violation::Containment { .. } => "AC1",
            Violation::Elimination { .. } => "AC2",
            Violation::StrongElimination { .. } => "AC2!",
            Violation::MissingEmpty => "AI0",
            Violation::NotDownwardClosed { .. } => "AI1",
            Violation::Augmentation { .. } => "AI2",
            Violation::NoBases => "B0",
            Violation::UnequalBases { .. } => "B1",
            Violation::Exchange { .. } => "BX",
            Violation::Lemma { lemma, .. } => lemma,
        }
    }

    /// Re-checks this violation against `family`; true if it still holds.
    ///
    /// Lemma violations depend on more than one family and always replay as
    /// true here; their own checkers re-derive them.
    pub fn replay(&self, family: &SetFamily) -> bool {
        let has = |m: SubsetMask| family.contains(m);
        let any_within = |s: SubsetMask| family.iter().any(|m| m.is_subset_of(s));
        match *self {
            Violation::EmptyMember => has(SubsetMask::EMPTY),
            Violation::Containment { smaller, larger } => {
                has(smaller) && has(larger) && smaller.is_proper_subset_of(larger)
            }
            Violation::Elimination { c1, c2, e } => {
                has(c1) && has(c2) && c1 != c2 && (c1 & c2).contains(e) && !any_within((c1 | c2).without(e))
            }
            Violation::StrongElimination { c1, c2, e, d } => {
                let u = (c1 | c2).without(e);
                has(c1)
                    && has(c2)
                    && c1 != c2
                    && (c1 & c2).contains(e)
                    && (c1 - c2).contains(d)
                    && !family.iter().any(|m| m.contains(d) && m.is_subset_of(u))
            }
            Violation::MissingEmpty => !has(SubsetMask::EMPTY),
            Violation::NotDownwardClosed { set, subset } => has(set) && subset.is_subset_of(set) && !has(subset),
            Violation::Augmentation { x, y } => {
                has(x) && has(y) && x.len() < y.len() && (y - x).iter().all(|e| !has(x.with(e)))
            }
            Violation::NoBases => family.is_empty(),
            Violation::UnequalBases { b1, b2 } => has(b1) && has(b2) && b1.len() != b2.len(),
            Violation::Exchange { b1, b2, x } => {
                has(b1) && has(b2) && (b1 - b2).contains(x) && (b2 - b1).iter().all(|y| !has(b1.without(x).with(y)))
            }
            Violation::Lemma { .. } => true,
        }
    }

    /// Human-readable rendering with ground labels.
    pub fn describe(&self, ground: &GroundSet) -> String {
        let f = |m: SubsetMask| ground.format_mask(m);
        let l = |i: usize| ground.labels().get(i).cloned().unwrap_or_else(|| i.to_string());
        match self {
            Violation::EmptyMember => "AC0: the empty set is a circuit".into(),
            Violation::Containment { smaller, larger } => {
                format!("AC1: {} is properly contained in {}", f(*smaller), f(*larger))
            }
            Violation::Elimination { c1, c2, e } => format!(
                "AC2: C1={} C2={} e={}: no circuit inside {}",
                f(*c1),
                f(*c2),
                l(*e),
                f((*c1 | *c2).without(*e))
            ),
            Violation::StrongElimination { c1, c2, e, d } => format!(
                "AC2!: C1={} C2={} e={} d={}: no circuit through d inside {}",
                f(*c1),
                f(*c2),
                l(*e),
                l(*d),
                f((*c1 | *c2).without(*e))
            ),
            Violation::MissingEmpty => "AI0: the empty set is not independent".into(),
            Violation::NotDownwardClosed { set, subset } => {
                format!("AI1: {} is independent but its subset {} is not", f(*set), f(*subset))
            }
            Violation::Augmentation { x, y } => {
                format!("AI2: X={} cannot be augmented from Y={}", f(*x), f(*y))
            }
            Violation::NoBases => "B0: no bases".into(),
            Violation::UnequalBases { b1, b2 } => format!("B1: bases {} and {} differ in size", f(*b1), f(*b2)),
            Violation::Exchange { b1, b2, x } => {
                format!("BX: B1={} B2={} x={}: no exchange partner in B2\\B1", f(*b1), f(*b2), l(*x))
            }
            Violation::Lemma { lemma, sets, detail } => {
                let sets: Vec<String> = sets.iter().map(|&s| f(s)).collect();
                format!("{lemma}: {} ({detail})", sets.join(" "))
            }
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {:?}", self.axiom_id(), self)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn describe(&self, ground: &GroundSet) -> String {
        if self.passed() {
            return "passed".into();
        }
        let lines: Vec<String> = self.violations.iter().map(|v| v.describe(ground)).collect();
        lines.join("\n")
    }
}

fn collect<F>(scan: F) -> AxiomReport
where
    F: FnOnce(&mut dyn FnMut(Violation) -> ControlFlow<()>),
{
    let mut violations = Vec::new();
    scan(&mut |v| {
        violations.push(v);
        ControlFlow::Continue(())
    });
    AxiomReport { violations }
}

pub(crate) fn scan_circuit_axioms(
    n: usize,
    family: &SetFamily,
    strong: bool,
    sink: &mut dyn FnMut(Violation) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let members = family.members();
    if family.contains(SubsetMask::EMPTY) {
        sink(Violation::EmptyMember)?;
    }
    for (j, &large) in members.iter().enumerate() {
        for &small in &members[..j] {
            if small.is_proper_subset_of(large) {
                sink(Violation::Containment { smaller: small, larger: large })?;
            }
        }
    }
    let oracle = CoreOracle::new(n, members);
    for (j, &c2) in members.iter().enumerate() {
        for &c1 in &members[..j] {
            let common = c1 & c2;
            if common.is_empty() {
                continue;
            }
            let union = c1 | c2;
            for e in common.iter() {
                let rest = union.without(e);
                let core = oracle.core(rest);
                if core.is_empty() {
                    sink(Violation::Elimination { c1, c2, e })?;
                    continue;
                }
                if strong {
                    for d in (c1 - c2).iter().filter(|&d| !core.contains(d)) {
                        sink(Violation::StrongElimination { c1, c2, e, d })?;
                    }
                    for d in (c2 - c1).iter().filter(|&d| !core.contains(d)) {
                        sink(Violation::StrongElimination { c1: c2, c2: c1, e, d })?;
                    }
                }
            }
        }
    }
    ControlFlow::Continue(())
}

/// AC0, AC1 and AC2 on `family`; with `strong`, also the strong elimination
/// axiom AC2!.
pub fn check_circuit_axioms(ground: &GroundSet, family: &SetFamily, strong: bool) -> AxiomReport {
    collect(|sink| {
        let _ = scan_circuit_axioms(ground.len(), family, strong, sink);
    })
}

/// AI0, AI1 and AI2 by exhaustive scan.
pub fn check_independence_axioms(_ground: &GroundSet, family: &SetFamily) -> AxiomReport {
    collect(|sink| {
        let _ = scan_independence_axioms(family, sink);
    })
}

fn scan_independence_axioms(family: &SetFamily, sink: &mut dyn FnMut(Violation) -> ControlFlow<()>) -> ControlFlow<()> {
    if !family.contains(SubsetMask::EMPTY) {
        sink(Violation::MissingEmpty)?;
    }
    for set in family.iter() {
        for i in set.iter() {
            let subset = set.without(i);
            if !family.contains(subset) {
                sink(Violation::NotDownwardClosed { set, subset })?;
            }
        }
    }
    for x in family.iter() {
        for y in family.iter() {
            if x.len() < y.len() && (y - x).iter().all(|e| !family.contains(x.with(e))) {
                sink(Violation::Augmentation { x, y })?;
            }
        }
    }
    ControlFlow::Continue(())
}

/// Non-emptiness, equal cardinality and the basis exchange axiom.
pub fn check_basis_exchange(_ground: &GroundSet, family: &SetFamily) -> AxiomReport {
    collect(|sink| {
        let _ = scan_basis_exchange(family.members(), &|m| family.contains(m), sink);
    })
}

pub(crate) fn scan_basis_exchange(
    bases: &[SubsetMask],
    is_basis: &dyn Fn(SubsetMask) -> bool,
    sink: &mut dyn FnMut(Violation) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let Some(&first) = bases.first() else {
        return sink(Violation::NoBases);
    };
    for &b in &bases[1..] {
        if b.len() != first.len() {
            sink(Violation::UnequalBases { b1: first, b2: b })?;
        }
    }
    for &b1 in bases {
        for &b2 in bases {
            if b1.len() != b2.len() {
                continue;
            }
            for x in (b1 - b2).iter() {
                let reduced = b1.without(x);
                if !(b2 - b1).iter().any(|y| is_basis(reduced.with(y))) {
                    sink(Violation::Exchange { b1, b2, x })?;
                }
            }
        }
    }
    ControlFlow::Continue(())
}

/// First violation of AC0–AC2 (or AC2! with `strong`), if any.
pub(crate) fn first_circuit_violation(n: usize, family: &SetFamily, strong: bool) -> Option<Violation> {
    let mut found = None;
    let _ = scan_circuit_axioms(n, family, strong, &mut |v| {
        found = Some(v);
        ControlFlow::Break(())
    });
    found
}

/// Fast exchange test used by the enumerator; `is_basis` is a dense lookup.
pub(crate) fn first_exchange_violation(
    bases: &[SubsetMask],
    is_basis: &dyn Fn(SubsetMask) -> bool,
) -> Option<Violation> {
    let mut found = None;
    let _ = scan_basis_exchange(bases, is_basis, &mut |v| {
        found = Some(v);
        ControlFlow::Break(())
    });
    found
}
