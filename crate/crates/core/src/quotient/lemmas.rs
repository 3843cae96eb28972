//! Constructive checkers for the lemmas on cyclic sets and fundamental
//! families. Each returns the witness it builds; a witness that fails its own
//! postcondition is reported as [`QuotientError::LemmaCounterexample`].

use crate::matroid::{FundamentalFamily, Matroid};
use crate::sets::{subsets_of, SubsetMask};

use super::{dump, QuotientError};

fn counterexample(lemma: &'static str, m: &Matroid, reason: String, sets: &[(&str, SubsetMask)]) -> QuotientError {
    let sets: Vec<_> = sets.iter().map(|&(n, s)| (n, m.ground(), s)).collect();
    QuotientError::LemmaCounterexample { lemma, reason, dump: dump(&[("M", m)], &sets) }
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<(), QuotientError> {
    if cond {
        Ok(())
    } else {
        Err(QuotientError::PreconditionFailure(msg()))
    }
}

fn require_within(m: &Matroid, sets: &[SubsetMask]) -> Result<(), QuotientError> {
    let full = m.ground().full();
    require(sets.iter().all(|s| s.is_subset_of(full)), || "set outside the ground set".into())
}

/// For dependent `a` and the greedy maximal independent `I ⊆ a`, the
/// fundamental circuits `C(x, I)`, `x ∈ a \ I`, cover exactly the circuits
/// inside `a`, and there are `c(a)` of them.
pub fn lemma_span_witness(m: &Matroid, a: SubsetMask) -> Result<FundamentalFamily, QuotientError> {
    require_within(m, &[a])?;
    if m.is_independent(a) {
        return Err(QuotientError::NotDependent(a));
    }
    let i = m.max_independent_in(a);
    let family = m.fundamental_family(i, a - i)?;
    let core = m.core_of(a);
    if family.union() != core {
        return Err(counterexample(
            "spanning property",
            m,
            "fundamental circuits do not cover the circuits inside A".into(),
            &[("A", a), ("I", i)],
        ));
    }
    if family.len() != m.nullity(a) {
        return Err(counterexample(
            "spanning property",
            m,
            format!("{} fundamental circuits but nullity {}", family.len(), m.nullity(a)),
            &[("A", a), ("I", i)],
        ));
    }
    Ok(family)
}

fn require_cyclic_pair(m: &Matroid, a1: SubsetMask, a2: SubsetMask) -> Result<(), QuotientError> {
    require_within(m, &[a1, a2])?;
    require(m.is_cyclic(a1), || format!("A1 = {} is not cyclic", m.ground().format_mask(a1)))?;
    require(m.is_cyclic(a2), || format!("A2 = {} is not cyclic", m.ground().format_mask(a2)))?;
    require(a1 != a2, || "A1 and A2 are not distinct".into())?;
    // Without this no set of larger nullity fits inside A1 ∪ A2 = A1.
    require(!a2.is_subset_of(a1), || "A2 is contained in A1".into())
}

/// A cyclic set inside `a1 ∪ a2` whose nullity is one more than that of `a1`.
///
/// A maximal independent `I` of `a1` is extended to a maximal independent
/// `I'` of `a1 ∪ a2`; some `q ∈ a2 \ a1` lies outside `I'`, and
/// `a1 ∪ C(q, I')` is the result.
pub fn cyclic_extension(m: &Matroid, a1: SubsetMask, a2: SubsetMask) -> Result<SubsetMask, QuotientError> {
    require_cyclic_pair(m, a1, a2)?;
    let union = a1 | a2;
    let i = m.max_independent_in(a1);
    let i_ext = m.extend_independent(i, union);
    let sets = [("A1", a1), ("A2", a2), ("I", i), ("I'", i_ext)];
    let Some(q) = ((a2 - a1) - i_ext).first() else {
        return Err(counterexample("cyclic extension", m, "A2 \\ A1 lies inside I'".into(), &sets));
    };
    let a = a1 | m.fundamental_circuit(i_ext, q)?;
    if !a.is_subset_of(union) || !m.is_cyclic(a) || m.nullity(a) != m.nullity(a1) + 1 {
        return Err(counterexample(
            "cyclic extension",
            m,
            format!("constructed {} is not a cyclic set of nullity c(A1) + 1", m.ground().format_mask(a)),
            &sets,
        ));
    }
    Ok(a)
}

/// A cyclic set avoiding `a` inside `a1 ∪ a2` with the nullity of `a1`.
///
/// Removing `a` from the cyclic set `a1 ∪ a2` lowers its nullity by one.
/// The cyclic core of the rest is then shrunk element by element, each step
/// dropping the nullity by exactly one, until it reaches `c(a1)`. If that
/// ever fails the remaining cyclic subsets are scanned exhaustively before a
/// counterexample is reported.
pub fn cyclic_elimination(m: &Matroid, a1: SubsetMask, a2: SubsetMask, a: usize) -> Result<SubsetMask, QuotientError> {
    require_cyclic_pair(m, a1, a2)?;
    require((a1 & a2).contains(a), || format!("{} is not in A1 ∩ A2", m.ground().label(a)))?;
    let target = m.nullity(a1);
    let rest = (a1 | a2).without(a);
    let mut core = m.core_of(rest);
    while m.nullity(core) > target {
        let e = core.first().expect("a set of positive nullity is non-empty");
        core = m.core_of(core.without(e));
    }
    if m.nullity(core) == target && !core.contains(a) {
        return Ok(core);
    }
    subsets_of(rest).find(|&s| m.is_cyclic(s) && m.nullity(s) == target).ok_or_else(|| {
        counterexample(
            "cyclic elimination",
            m,
            format!("no cyclic set of nullity {target} avoids {}", m.ground().label(a)),
            &[("A1", a1), ("A2", a2)],
        )
    })
}

/// A basis `B ⊇ D - d` and the fundamental family over `a \ I` (for a
/// maximal independent `I ⊆ a` containing `D - d`) that contains `D`, covers
/// `a`, and has `d ∉ B`.
pub fn base_family_witness(
    m: &Matroid,
    a: SubsetMask,
    d_circuit: SubsetMask,
    d: usize,
) -> Result<(SubsetMask, FundamentalFamily), QuotientError> {
    require_within(m, &[a, d_circuit])?;
    require(m.is_cyclic(a), || "A is not cyclic".into())?;
    require(m.is_circuit(d_circuit), || "D is not a circuit".into())?;
    require(d_circuit.contains(d) && d_circuit.is_subset_of(a), || "need d ∈ D ⊆ A".into())?;

    let i = m.extend_independent(d_circuit.without(d), a);
    let basis = m.extend_independent(i, m.ground().full());
    let family = m.fundamental_family(basis, a - i)?;
    let sets = [("A", a), ("D", d_circuit), ("B", basis)];
    if family.get(d) != Some(d_circuit) {
        return Err(counterexample("A-B-D", m, "D is not the fundamental circuit of d".into(), &sets));
    }
    if family.union() != a {
        return Err(counterexample("A-B-D", m, "family does not cover A".into(), &sets));
    }
    if basis.contains(d) || family.len() != m.nullity(a) {
        return Err(counterexample("A-B-D", m, "d lies in B or the family size is not c(A)".into(), &sets));
    }
    Ok((basis, family))
}
