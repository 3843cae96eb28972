//! Deletion and contraction.
//!
//! Both minors live on `E \ Z` with the remaining elements re-indexed in
//! ground order. Contraction keeps the minimal non-empty traces of circuits;
//! in debug builds every contraction is cross-checked against the dual route
//! `(N* \ Z)*`.

use thiserror::Error;

use crate::matroid::Matroid;
use crate::sets::{SetFamily, SubsetMask};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinorError {
    #[error("cannot remove every element of the ground set")]
    DeletesEverything,
    #[error("set {0:?} has elements outside the ground set")]
    OutOfGround(SubsetMask),
}

fn remaining(n: &Matroid, z: SubsetMask) -> Result<SubsetMask, MinorError> {
    let full = n.ground().full();
    if !z.is_subset_of(full) {
        return Err(MinorError::OutOfGround(z));
    }
    if z == full {
        return Err(MinorError::DeletesEverything);
    }
    Ok(full - z)
}

/// `N \ Z`: the circuits of `N` that avoid `Z`.
pub fn delete(n: &Matroid, z: SubsetMask) -> Result<Matroid, MinorError> {
    let keep = remaining(n, z)?;
    let ground = n.ground().restrict(keep).expect("restriction of a valid ground set");
    let circuits: SetFamily = n.circuits().iter().filter(|c| c.is_subset_of(keep)).map(|c| c.compress(keep)).collect();
    Ok(Matroid::from_circuits_unchecked(ground, circuits))
}

/// `N / Z`: the minimal non-empty traces of circuits of `N` on `E \ Z`.
pub fn contract(n: &Matroid, z: SubsetMask) -> Result<Matroid, MinorError> {
    let keep = remaining(n, z)?;
    let ground = n.ground().restrict(keep).expect("restriction of a valid ground set");
    // Traces wholly inside Z are empty and can never be circuits.
    let traces: SetFamily =
        n.circuits().iter().map(|c| c & keep).filter(|t| !t.is_empty()).map(|t| t.compress(keep)).collect();
    let contracted = Matroid::from_circuits_unchecked(ground, traces.minimal_members());
    #[cfg(debug_assertions)]
    {
        let via_dual = contract_via_dual(n, z)?;
        assert_eq!(contracted, via_dual, "trace contraction disagrees with the dual route");
    }
    Ok(contracted)
}

/// `(N* \ Z)*`, the dual-route contraction.
pub fn contract_via_dual(n: &Matroid, z: SubsetMask) -> Result<Matroid, MinorError> {
    Ok(delete(&n.dual(), z)?.dual())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::{subsets_of, GroundSet};

    fn m(ground: &GroundSet, s: &str) -> SubsetMask {
        ground.mask_of(s.split("").filter(|c| !c.is_empty())).unwrap()
    }

    fn u(r: usize, n: usize) -> Matroid {
        Matroid::uniform(GroundSet::letters(n).unwrap(), r)
    }

    fn loop_matroid() -> Matroid {
        let g = GroundSet::letters(2).unwrap();
        Matroid::from_circuits(g.clone(), [m(&g, "a")].into_iter().collect()).unwrap()
    }

    #[test]
    fn delete_examples() {
        let u24 = u(2, 4);
        assert_eq!(delete(&u24, m(u24.ground(), "d")).unwrap(), u(2, 3));
        let u23 = u(2, 3);
        let f2 = Matroid::free(GroundSet::letters(2).unwrap());
        assert_eq!(delete(&u23, m(u23.ground(), "c")).unwrap(), f2);
        let lp = loop_matroid();
        let single = delete(&lp, m(lp.ground(), "b")).unwrap();
        assert_eq!(single.circuits().members(), &[SubsetMask(1)]);
        assert_eq!(delete(&lp, lp.ground().full()), Err(MinorError::DeletesEverything));
    }

    #[test]
    fn contract_examples() {
        let u24 = u(2, 4);
        assert_eq!(contract(&u24, m(u24.ground(), "d")).unwrap(), u(1, 3));
        let f3 = Matroid::free(GroundSet::letters(3).unwrap());
        let f2 = contract(&f3, m(f3.ground(), "a")).unwrap();
        assert_eq!(f2, Matroid::free(GroundSet::new(["b", "c"]).unwrap()));
        let lp = loop_matroid();
        let c = contract(&lp, m(lp.ground(), "a")).unwrap();
        assert_eq!(c, Matroid::free(GroundSet::new(["b"]).unwrap()));
        assert_eq!(c, contract_via_dual(&lp, m(lp.ground(), "a")).unwrap());
    }

    #[test]
    fn contracting_two_points_of_u24_gives_two_loops() {
        let u24 = u(2, 4);
        let c = contract(&u24, m(u24.ground(), "cd")).unwrap();
        let ab = GroundSet::new(["a", "b"]).unwrap();
        let loops = Matroid::from_circuits(ab, [SubsetMask(1), SubsetMask(2)].into_iter().collect()).unwrap();
        assert_eq!(c, loops);
    }

    #[test]
    fn contraction_rank_drop() {
        let u24 = u(2, 4);
        for z in subsets_of(u24.ground().full()).filter(|z| *z != u24.ground().full()) {
            let c = contract(&u24, z).unwrap();
            assert_eq!(c.rank(), u24.rank() - u24.rank_of(z));
        }
    }
}
