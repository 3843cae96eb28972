//! Lookup of "union of the members contained in S" for a fixed family.

use crate::sets::SubsetMask;

/// Ground sizes up to this use a dense `2^n` table.
pub(crate) const TABLE_LIMIT: usize = 16;

#[derive(Clone, Debug)]
pub(crate) enum CoreOracle {
    Table(Box<[u32]>),
    Scan(Vec<SubsetMask>),
}

impl CoreOracle {
    pub(crate) fn new(n: usize, members: &[SubsetMask]) -> Self {
        if n > TABLE_LIMIT {
            return CoreOracle::Scan(members.to_vec());
        }
        let size = 1usize << n;
        let mut table = vec![0u32; size].into_boxed_slice();
        let mut is_member = vec![false; size];
        for m in members {
            is_member[m.bits() as usize] = true;
        }
        for s in 1..size {
            let mut acc = if is_member[s] { s as u32 } else { 0 };
            let mut rest = s as u32;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                acc |= table[s & !(bit as usize)];
                rest &= rest - 1;
            }
            table[s] = acc;
        }
        CoreOracle::Table(table)
    }

    /// Union of the family members contained in `s`.
    #[inline]
    pub(crate) fn core(&self, s: SubsetMask) -> SubsetMask {
        match self {
            CoreOracle::Table(t) => SubsetMask(t[s.bits() as usize]),
            CoreOracle::Scan(members) => {
                members.iter().filter(|m| m.is_subset_of(s)).fold(SubsetMask::EMPTY, |a, &b| a | b)
            }
        }
    }

    /// Whether some non-empty member lies inside `s`.
    #[inline]
    pub(crate) fn has_member_within(&self, s: SubsetMask) -> bool {
        match self {
            CoreOracle::Table(t) => t[s.bits() as usize] != 0,
            CoreOracle::Scan(members) => members.iter().any(|m| !m.is_empty() && m.is_subset_of(s)),
        }
    }
}
