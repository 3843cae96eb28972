use crate::axioms::{check_circuit_axioms, AxiomReport};
use crate::matroid::Matroid;
use crate::minors::{contract, delete};
use crate::sets::{SetFamily, SubsetMask};

use super::{certify_quotient, dump, lift_witness, require_quotient, QuotientError};

/// `L_0 = M, L_1, ..., L_k = L` with every consecutive pair a rank-one
/// quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopySequence {
    pub steps: Vec<Matroid>,
    pub x_order: Vec<String>,
}

impl HomotopySequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Factors `(M, L)` through the lift `N`: with `X = (x_1, ..., x_k)` in the
/// given order, `L_i = (N / {x_{i+1}, ..., x_k}) \ {x_1, ..., x_i}`.
pub fn factor_homotopy<S: AsRef<str>>(
    m: &Matroid,
    l: &Matroid,
    x_labels: &[S],
) -> Result<HomotopySequence, QuotientError> {
    let witness = lift_witness(m, l, x_labels)?;
    let n = &witness.n;
    let e_len = m.len();
    let k = x_labels.len();
    let x_at = |j: usize| e_len + j;

    let mut steps = Vec::with_capacity(k + 1);
    for i in 0..=k {
        let contracted: SubsetMask = (i..k).map(x_at).fold(SubsetMask::EMPTY, |s, j| s.with(j));
        let after = if contracted.is_empty() { n.clone() } else { contract(n, contracted)? };
        // The first i new elements keep their indices after contracting later ones.
        let deleted: SubsetMask = (0..i).map(x_at).fold(SubsetMask::EMPTY, |s, j| s.with(j));
        let step = if deleted.is_empty() { after } else { delete(&after, deleted)? };
        steps.push(step);
    }

    let fail = |step: usize, reason: String| QuotientError::FactorizationFailure {
        step,
        reason,
        dump: dump(&[("M", m), ("L", l), ("N", n)], &[]),
    };
    if steps[0] != *m {
        return Err(fail(0, "L_0 differs from M".into()));
    }
    if steps[k] != *l {
        return Err(fail(k, "L_k differs from L".into()));
    }
    for (i, step) in steps.iter().enumerate() {
        if step.rank() != m.rank() + i {
            return Err(fail(i, format!("rank(L_{i}) = {}, expected {}", step.rank(), m.rank() + i)));
        }
    }
    for i in 1..=k {
        match certify_quotient(&steps[i - 1], &steps[i])?.certificate() {
            Some(c) if c.step_s == 1 => {}
            Some(c) => return Err(fail(i, format!("(L_{}, L_{i}) has rank step {}", i - 1, c.step_s))),
            None => return Err(fail(i, format!("(L_{}, L_{i}) is not a quotient pair", i - 1))),
        }
    }
    Ok(HomotopySequence { steps, x_order: x_labels.iter().map(|s| s.as_ref().to_string()).collect() })
}

/// The family `{C ∈ C(L) : c_M(C) <= j} ∪ {A cyclic in M, independent in L,
/// c_M(A) = j}` together with its circuit-axiom report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemarkFamily {
    pub family: SetFamily,
    pub report: AxiomReport,
}

pub fn remark_circuits(m: &Matroid, l: &Matroid, j: usize) -> Result<RemarkFamily, QuotientError> {
    let cert = require_quotient(m, l)?;
    if j > cert.step_s + 1 {
        return Err(QuotientError::PreconditionFailure(format!("j = {j} exceeds s + 1 = {}", cert.step_s + 1)));
    }
    let mut family = l.circuits().filter(|c| m.nullity(c) <= j);
    for a in m.cyclic_sets(Some(j))?.iter() {
        if !a.is_empty() && l.is_independent(a) {
            family.insert(a);
        }
    }
    if family.minimal_members() != family {
        return Err(QuotientError::LemmaCounterexample {
            lemma: "remark antichain",
            reason: format!("family for j = {j} is not an antichain"),
            dump: dump(&[("M", m), ("L", l)], &[]),
        });
    }
    let report = check_circuit_axioms(m.ground(), &family, false);
    Ok(RemarkFamily { family, report })
}

/// Per-step comparison of the minor-based `C(L_i)` with the remark family
/// under both index readings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemarkComparison {
    pub i: usize,
    /// `remark_circuits(i + 1) == C(L_i)`.
    pub shifted_agrees: bool,
    /// `remark_circuits(i) == C(L_i)`.
    pub literal_agrees: bool,
}

pub fn remark_comparison<S: AsRef<str>>(
    m: &Matroid,
    l: &Matroid,
    x_labels: &[S],
) -> Result<Vec<RemarkComparison>, QuotientError> {
    let seq = factor_homotopy(m, l, x_labels)?;
    seq.steps
        .iter()
        .enumerate()
        .map(|(i, step)| {
            Ok(RemarkComparison {
                i,
                shifted_agrees: remark_circuits(m, l, i + 1)?.family == *step.circuits(),
                literal_agrees: remark_circuits(m, l, i)?.family == *step.circuits(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::GroundSet;

    fn u(r: usize, n: usize) -> Matroid {
        Matroid::uniform(GroundSet::letters(n).unwrap(), r)
    }

    fn f3() -> Matroid {
        Matroid::free(GroundSet::letters(3).unwrap())
    }

    #[test]
    fn factor_u13_f3() {
        let seq = factor_homotopy(&u(1, 3), &f3(), &["x1", "x2"]).unwrap();
        assert_eq!(seq.steps, vec![u(1, 3), u(2, 3), f3()]);
        let swapped = factor_homotopy(&u(1, 3), &f3(), &["x2", "x1"]).unwrap();
        assert_eq!(swapped.steps, seq.steps);
        assert_eq!(swapped.x_order, vec!["x2", "x1"]);
    }

    #[test]
    fn factor_single_step() {
        let seq = factor_homotopy(&u(1, 3), &u(2, 3), &["x"]).unwrap();
        assert_eq!(seq.steps, vec![u(1, 3), u(2, 3)]);
    }

    #[test]
    fn remark_examples() {
        let g = GroundSet::letters(3).unwrap();
        let r1 = remark_circuits(&u(1, 3), &f3(), 1).unwrap();
        assert_eq!(&r1.family, u(1, 3).circuits());
        assert!(r1.report.passed());
        let r2 = remark_circuits(&u(1, 3), &f3(), 2).unwrap();
        assert_eq!(r2.family, [g.full()].into_iter().collect());
        let r0 = remark_circuits(&u(1, 3), &u(2, 3), 0).unwrap();
        assert!(r0.family.is_empty());
        assert!(matches!(remark_circuits(&u(1, 3), &u(2, 3), 3), Err(QuotientError::PreconditionFailure(_))));
    }

    #[test]
    fn shifted_reading_matches_worked_examples() {
        for (m, l, xs) in [(u(1, 3), f3(), vec!["x1", "x2"]), (u(1, 3), u(2, 3), vec!["x"])] {
            let cmp = remark_comparison(&m, &l, &xs).unwrap();
            assert!(cmp.iter().all(|c| c.shifted_agrees), "{cmp:?}");
            assert!(!cmp[0].literal_agrees);
        }
    }
}
