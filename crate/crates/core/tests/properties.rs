use itertools::Itertools;
use proptest::prelude::*;

use matroid_lift::enumeration::{cached_catalog, enumerate_matroids, Method};
use matroid_lift::minors::contract_via_dual;
use matroid_lift::quotient::transitivity_check;
use matroid_lift::sets::subsets_of;
use matroid_lift::sweep::{loopify, truncation};
use matroid_lift::{
    certify_quotient, check_basis_exchange, check_circuit_axioms, contract, delete, lift_witness, Matroid, SetFamily,
    SubsetMask,
};

fn entries(n: usize) -> &'static [Matroid] {
    &cached_catalog(n).unwrap().entries
}

/// A catalog entry on 1..=5 elements.
fn matroid_strategy() -> impl Strategy<Value = Matroid> {
    (1usize..=5).prop_flat_map(|n| (0..entries(n).len()).prop_map(move |i| entries(n)[i].clone()))
}

fn matroid_and_subset() -> impl Strategy<Value = (Matroid, SubsetMask)> {
    matroid_strategy().prop_flat_map(|m| {
        let full = m.ground().full().bits();
        (Just(m), (0..=full).prop_map(SubsetMask))
    })
}

fn rank_by_bases(m: &Matroid, a: SubsetMask) -> usize {
    m.bases().iter().map(|b| (b & a).len()).max().unwrap()
}

#[test]
fn catalog_counts() {
    let counts: Vec<usize> = (1..=6).map(|n| enumerate_matroids(n, Method::BasisFilter).unwrap().len()).collect();
    assert_eq!(counts, [2, 5, 16, 68, 406, 3807]);
}

#[test]
fn strong_elimination_on_all_matroids_up_to_five() {
    for n in 1..=5 {
        for m in entries(n) {
            assert!(check_circuit_axioms(m.ground(), m.circuits(), true).passed(), "{m:?}");
            assert!(check_basis_exchange(m.ground(), &m.bases()).passed(), "{m:?}");
        }
    }
}

#[test]
fn nested_cyclic_sets_have_strictly_larger_nullity() {
    for n in 1..=5 {
        for m in entries(n) {
            let cyclic: Vec<SubsetMask> = m.cyclic_sets(None).unwrap().iter().collect();
            for (&a, &b) in cyclic.iter().cartesian_product(&cyclic) {
                if a.is_proper_subset_of(b) {
                    assert!(m.nullity(a) < m.nullity(b), "{m:?} {a:?} {b:?}");
                }
            }
        }
    }
}

#[test]
fn lift_family_is_already_an_antichain() {
    for n in 1..=4 {
        for (m, l) in entries(n).iter().cartesian_product(entries(n)) {
            let Some(cert) = certify_quotient(m, l).unwrap().certificate().cloned() else { continue };
            if cert.step_s == 0 {
                continue;
            }
            let labels: Vec<String> = (1..=cert.step_s).map(|i| format!("x{i}")).collect();
            let w = lift_witness(m, l, &labels).unwrap();
            let union: SetFamily =
                l.circuits().iter().map(|c| c.expand(SubsetMask::full(n))).chain(w.x_family.iter()).collect();
            assert_eq!(union.minimal_members(), union);
            assert_eq!(&union, w.n.circuits());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn greedy_rank_matches_bases((m, a) in matroid_and_subset()) {
        prop_assert_eq!(m.rank_of(a), rank_by_bases(&m, a));
    }

    #[test]
    fn dual_rank_identity(m in matroid_strategy()) {
        let d = m.dual();
        prop_assert_eq!(m.rank() + d.rank(), m.len());
        prop_assert_eq!(d.dual(), m);
    }

    #[test]
    fn contraction_agrees_with_dual_route((m, z) in matroid_and_subset()) {
        prop_assume!(z != m.ground().full());
        prop_assert_eq!(contract(&m, z).unwrap(), contract_via_dual(&m, z).unwrap());
        prop_assert_eq!(delete(&m.dual(), z).unwrap(), contract(&m, z).unwrap().dual());
    }

    #[test]
    fn disjoint_minors_commute((m, z, w) in matroid_and_subset().prop_flat_map(|(m, z)| {
        let rest = (m.ground().full() - z).bits();
        (Just(m), Just(z), (0..=rest).prop_map(move |b| SubsetMask(b & rest)))
    })) {
        prop_assume!((z | w) != m.ground().full());
        let keep = m.ground().full() - z;
        let w_after = w.compress(keep);
        let a = delete(&contract(&m, z).unwrap(), w_after).unwrap();
        let keep_w = m.ground().full() - w;
        let b = contract(&delete(&m, w).unwrap(), z.compress(keep_w)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn contraction_is_a_quotient_of_deletion((m, x) in matroid_and_subset()) {
        prop_assume!(!x.is_empty() && x != m.ground().full());
        let (c, d) = (contract(&m, x).unwrap(), delete(&m, x).unwrap());
        let cert = certify_quotient(&c, &d).unwrap().into_certificate().unwrap();
        prop_assert_eq!(cert.step_s, d.rank() - c.rank());
        prop_assert!(cert.step_s <= x.len());
    }

    #[test]
    fn quotients_compose((m, e1, e2) in (matroid_strategy(), 0usize..5, 0usize..5)) {
        let l = truncation(&m).unwrap_or_else(|| m.clone());
        let k = loopify(&l, e1 % m.len());
        let j = loopify(&k, e2 % m.len());
        prop_assert!(transitivity_check(&k, &l, &m).unwrap().passed());
        prop_assert!(transitivity_check(&j, &k, &l).unwrap().passed());
        prop_assert!(certify_quotient(&j, &m).unwrap().is_quotient());
    }

    #[test]
    fn independent_in_quotient_stays_independent((m, a) in matroid_and_subset(), e in 0usize..5) {
        let q = loopify(&m, e % m.len());
        if q.is_independent(a) {
            prop_assert!(m.is_independent(a));
        }
        prop_assert!(q.rank_of(a) <= m.rank_of(a));
    }
}

#[test]
fn every_subset_enumerated_once() {
    for bits in [0u32, 1, 0b1011, 0b11111] {
        let w = SubsetMask(bits);
        let subs: Vec<SubsetMask> = subsets_of(w).collect();
        assert_eq!(subs.len(), 1 << w.len());
        assert!(subs.iter().all_unique());
    }
}
