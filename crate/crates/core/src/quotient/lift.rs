use crate::axioms::check_circuit_axioms;
use crate::matroid::Matroid;
use crate::minors::{contract, delete};
use crate::sets::{subsets_of, SetFamily, SubsetMask};

use super::{dump, require_quotient, QuotientCertificate, QuotientError};

/// A matroid `N` on `E ∪ X` with `N / X = M` and `N \ X = L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftWitness {
    pub m: Matroid,
    pub l: Matroid,
    pub n: Matroid,
    pub x_labels: Vec<String>,
    /// The circuits of `N` that meet `X`.
    pub x_family: SetFamily,
    pub verified: bool,
}

impl LiftWitness {
    /// `X` as a subset of the ground set of `N`.
    pub fn x_mask(&self) -> SubsetMask {
        self.n.ground().full() - SubsetMask::full(self.m.len())
    }

    pub fn step(&self) -> usize {
        self.x_labels.len()
    }
}

/// Builds `N` on `E ∪ X` (with `|X| = s = rank(L) - rank(M)`) whose circuits
/// are the circuits of `L` together with
///
/// `{A ∪ Z : A cyclic in M, A independent in L, ∅ ≠ Z ⊆ X, c_M(A) + |Z| = s + 1}`,
///
/// then checks the strong circuit axioms and both minors. Any failure there is
/// a [`QuotientError::ConstructionFailure`] carrying a replayable dump.
pub fn lift_witness<S: AsRef<str>>(m: &Matroid, l: &Matroid, x_labels: &[S]) -> Result<LiftWitness, QuotientError> {
    let cert = require_quotient(m, l)?;
    let s = cert.step_s;
    if s == 0 {
        return Err(QuotientError::ZeroStep);
    }
    if x_labels.len() != s {
        return Err(QuotientError::RankMismatch { expected: s, got: x_labels.len() });
    }
    let ground = m.ground().extend(x_labels)?;
    let e_len = m.len();
    let x_mask = ground.full() - SubsetMask::full(e_len);

    let mut x_family = SetFamily::new();
    for a in m.cyclic_sets(None)?.iter() {
        let c = m.nullity(a);
        if a.is_empty() || c > s || !l.is_independent(a) {
            continue;
        }
        let z_size = s + 1 - c;
        for z in subsets_of(x_mask).filter(|z| z.len() == z_size) {
            x_family.insert(a | z);
        }
    }

    let mut circuits = l.circuits().clone();
    for c in x_family.iter() {
        circuits.insert(c);
    }

    let failure = |reason: String, extra: Option<&Matroid>| {
        let mut parts: Vec<(&str, &Matroid)> = vec![("M", m), ("L", l)];
        if let Some(n) = extra {
            parts.push(("N", n));
        }
        QuotientError::ConstructionFailure { reason, dump: dump(&parts, &[]) }
    };

    if !circuits.is_antichain() {
        return Err(failure("circuits of L together with the X-family are not an antichain".into(), None));
    }
    let report = check_circuit_axioms(&ground, &circuits, true);
    if let Some(v) = report.first() {
        return Err(failure(v.describe(&ground), None));
    }
    let n = Matroid::from_circuits_unchecked(ground, circuits);
    if contract(&n, x_mask)? != *m {
        return Err(failure("N / X differs from M".into(), Some(&n)));
    }
    if delete(&n, x_mask)? != *l {
        return Err(failure("N \\ X differs from L".into(), Some(&n)));
    }
    Ok(LiftWitness {
        m: m.clone(),
        l: l.clone(),
        n,
        x_labels: x_labels.iter().map(|s| s.as_ref().to_string()).collect(),
        x_family,
        verified: true,
    })
}

/// Chains witnesses for `(M, L)` and `(L, K)` into one for `(M, K)` on the
/// concatenated labels, together with the composed covering certificate.
pub fn compose_witnesses(
    w1: &LiftWitness,
    w2: &LiftWitness,
) -> Result<(LiftWitness, QuotientCertificate), QuotientError> {
    if w1.l != w2.m {
        return Err(QuotientError::PreconditionFailure(
            "the lift of the first witness is not the quotient of the second".into(),
        ));
    }
    if let Some(clash) = w1.x_labels.iter().find(|x| w2.x_labels.contains(x)) {
        return Err(QuotientError::LabelClash(format!("label `{clash}` appears in both witnesses")));
    }
    let (m, l, k) = (&w1.m, &w1.l, &w2.l);
    let first = require_quotient(m, l)?;
    let second = require_quotient(l, k)?;

    let mut coverings = std::collections::BTreeMap::new();
    for (&d, via_l) in &second.coverings {
        let mut covering = SetFamily::new();
        for c in via_l.iter() {
            for b in first.coverings[&c].iter() {
                covering.insert(b);
            }
        }
        if covering.union() != d {
            return Err(QuotientError::LemmaCounterexample {
                lemma: "transitivity",
                reason: format!("composed covering of {} is not the whole circuit", k.ground().format_mask(d)),
                dump: dump(&[("M", m), ("L", l), ("K", k)], &[]),
            });
        }
        coverings.insert(d, covering);
    }
    let composed = QuotientCertificate { m: m.clone(), l: k.clone(), step_s: first.step_s + second.step_s, coverings };
    let labels: Vec<&str> = w1.x_labels.iter().chain(&w2.x_labels).map(String::as_str).collect();
    let witness = lift_witness(m, k, &labels)?;
    Ok((witness, composed))
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

    fn masks(g: &GroundSet, sets: &[&[&str]]) -> SetFamily {
        sets.iter().map(|s| g.mask_of(s.iter().copied()).unwrap()).collect()
    }

    #[test]
    fn lift_u13_u23() {
        let w = lift_witness(&u(1, 3), &u(2, 3), &["x"]).unwrap();
        assert!(w.verified);
        let g = w.n.ground().clone();
        let expected = masks(&g, &[&["a", "b", "c"], &["a", "b", "x"], &["a", "c", "x"], &["b", "c", "x"]]);
        assert_eq!(w.n.circuits(), &expected);
        assert_eq!(w.x_family, masks(&g, &[&["a", "b", "x"], &["a", "c", "x"], &["b", "c", "x"]]));
    }

    #[test]
    fn lift_u13_f3() {
        let w = lift_witness(&u(1, 3), &f3(), &["x1", "x2"]).unwrap();
        let g = w.n.ground().clone();
        let expected = masks(
            &g,
            &[
                &["a", "b", "x1", "x2"],
                &["a", "c", "x1", "x2"],
                &["b", "c", "x1", "x2"],
                &["a", "b", "c", "x1"],
                &["a", "b", "c", "x2"],
            ],
        );
        assert_eq!(w.n.circuits(), &expected);
    }

    #[test]
    fn lift_errors() {
        assert!(matches!(lift_witness(&u(2, 3), &u(1, 3), &["x"]), Err(QuotientError::QuotientViolation { .. })));
        assert_eq!(lift_witness(&u(1, 3), &u(1, 3), &[] as &[&str]), Err(QuotientError::ZeroStep));
        assert_eq!(lift_witness(&u(1, 3), &f3(), &["x"]), Err(QuotientError::RankMismatch { expected: 2, got: 1 }));
        assert!(matches!(lift_witness(&u(1, 3), &u(2, 3), &["a"]), Err(QuotientError::LabelClash(_))));
    }

    #[test]
    fn compose_examples() {
        let w1 = lift_witness(&u(1, 3), &u(2, 3), &["x"]).unwrap();
        let w2 = lift_witness(&u(2, 3), &f3(), &["y"]).unwrap();
        let (w, cert) = compose_witnesses(&w1, &w2).unwrap();
        assert!(w.verified);
        assert_eq!(w.n.len(), 5);
        assert_eq!(cert.step_s, 2);
        assert_eq!(w.x_labels, vec!["x", "y"]);

        let w2x = lift_witness(&u(2, 3), &f3(), &["x"]).unwrap();
        assert!(matches!(compose_witnesses(&w1, &w2x), Err(QuotientError::LabelClash(_))));
        assert!(matches!(compose_witnesses(&w2, &w1), Err(QuotientError::PreconditionFailure(_))));
    }
}
