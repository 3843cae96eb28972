//! Ground sets, subset masks and families of subsets.
//!
//! Every subset of a ground set is a [`SubsetMask`]: bit `i` stands for the
//! `i`-th label of the [`GroundSet`]. Families are kept in canonical order
//! (cardinality first, then numeric mask value) so that anything printed from
//! them is deterministic.

use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use thiserror::Error;

/// Largest supported ground set; one `u32` mask holds any subset.
pub const MAX_GROUND: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroundError {
    #[error("ground set is empty")]
    Empty,
    #[error("ground set has {0} elements, the maximum is {MAX_GROUND}")]
    TooLarge(usize),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("empty label at position {0}")]
    EmptyLabel(usize),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
}

/// Subset of a ground set, one bit per element.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    /// The mask `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 32);
        if n >= 32 {
            SubsetMask(u32::MAX)
        } else {
            SubsetMask((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        SubsetMask(1 << i)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        SubsetMask(elements.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_proper_subset_of(self, other: SubsetMask) -> bool {
        self != other && self.is_subset_of(other)
    }

    #[inline]
    pub fn intersects(self, other: SubsetMask) -> bool {
        self.0 & other.0 != 0
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        SubsetMask(self.0 | 1 << i)
    }

    #[inline]
    pub fn without(self, i: usize) -> Self {
        SubsetMask(self.0 & !(1 << i))
    }

    /// Smallest element, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Elements in increasing order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// Packs the bits of `self` that lie in `keep` into consecutive low bits,
    /// preserving order. This re-indexes a subset onto the ground set `keep`.
    pub fn compress(self, keep: SubsetMask) -> SubsetMask {
        let mut out = 0u32;
        for (j, i) in keep.iter().enumerate() {
            if self.contains(i) {
                out |= 1 << j;
            }
        }
        SubsetMask(out)
    }

    /// Inverse of [`SubsetMask::compress`]: spreads the low bits of `self`
    /// onto the positions of `into`.
    pub fn expand(self, into: SubsetMask) -> SubsetMask {
        let mut out = 0u32;
        for (j, i) in into.iter().enumerate() {
            if self.contains(j) {
                out |= 1 << i;
            }
        }
        SubsetMask(out)
    }

    /// Key of the canonical family order.
    #[inline]
    fn canonical_key(self) -> (u32, u32) {
        (self.0.count_ones(), self.0)
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl BitOr for SubsetMask {
    type Output = SubsetMask;
    fn bitor(self, rhs: Self) -> Self {
        SubsetMask(self.0 | rhs.0)
    }
}

impl BitAnd for SubsetMask {
    type Output = SubsetMask;
    fn bitand(self, rhs: Self) -> Self {
        SubsetMask(self.0 & rhs.0)
    }
}

impl Sub for SubsetMask {
    type Output = SubsetMask;
    fn sub(self, rhs: Self) -> Self {
        SubsetMask(self.0 & !rhs.0)
    }
}

impl Ord for SubsetMask {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.canonical_key().cmp(&other.canonical_key())
    }
}

impl PartialOrd for SubsetMask {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// Ordered, labelled ground set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(labels: I) -> Result<Self, GroundError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(GroundError::Empty);
        }
        if labels.len() > MAX_GROUND {
            return Err(GroundError::TooLarge(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(GroundError::EmptyLabel(i));
            }
            if labels[..i].contains(l) {
                return Err(GroundError::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet { labels })
    }

    /// Ground set labelled `a`, `b`, `c`, ... (then `a1`, `b1`, ... past `z`).
    pub fn letters(n: usize) -> Result<Self, GroundError> {
        GroundSet::new((0..n).map(letter_label))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false for a constructed ground set; present for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full(&self) -> SubsetMask {
        SubsetMask::full(self.len())
    }

    pub fn mask_of<'a, I: IntoIterator<Item = &'a str>>(&self, labels: I) -> Result<SubsetMask, GroundError> {
        let mut m = SubsetMask::EMPTY;
        for l in labels {
            let i = self.index_of(l).ok_or_else(|| GroundError::UnknownLabel(l.to_string()))?;
            m = m.with(i);
        }
        Ok(m)
    }

    /// Restriction to the elements of `keep`, in ground order.
    pub fn restrict(&self, keep: SubsetMask) -> Result<GroundSet, GroundError> {
        GroundSet::new(keep.iter().map(|i| self.labels[i].clone()))
    }

    /// This ground set followed by `extra` labels.
    pub fn extend<S: AsRef<str>>(&self, extra: &[S]) -> Result<GroundSet, GroundError> {
        GroundSet::new(self.labels.iter().cloned().chain(extra.iter().map(|s| s.as_ref().to_string())))
    }

    /// `{a,b,c}` style rendering of a subset.
    pub fn format_mask(&self, mask: SubsetMask) -> String {
        let parts: Vec<&str> = mask.iter().map(|i| self.labels[i].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.labels).finish()
    }
}

fn letter_label(i: usize) -> String {
    let c = (b'a' + (i % 26) as u8) as char;
    if i < 26 {
        c.to_string()
    } else {
        format!("{c}{}", i / 26)
    }
}

/// A duplicate-free family of subsets in canonical order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SetFamily {
    members: Vec<SubsetMask>,
}

impl SetFamily {
    pub fn new() -> Self {
        SetFamily { members: Vec::new() }
    }

    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, m: SubsetMask) -> bool {
        self.members.binary_search(&m).is_ok()
    }

    /// Inserts `m`; returns false if it was already present.
    pub fn insert(&mut self, m: SubsetMask) -> bool {
        match self.members.binary_search(&m) {
            Ok(_) => false,
            Err(pos) => {
                self.members.insert(pos, m);
                true
            }
        }
    }

    pub fn remove(&mut self, m: SubsetMask) -> bool {
        match self.members.binary_search(&m) {
            Ok(pos) => {
                self.members.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    /// Union of all members.
    pub fn union(&self) -> SubsetMask {
        self.members.iter().fold(SubsetMask::EMPTY, |a, &b| a | b)
    }

    /// Union of the members contained in `within`.
    pub fn union_within(&self, within: SubsetMask) -> SubsetMask {
        self.members.iter().filter(|m| m.is_subset_of(within)).fold(SubsetMask::EMPTY, |a, &b| a | b)
    }

    pub fn has_member_within(&self, within: SubsetMask) -> bool {
        self.members.iter().any(|m| m.is_subset_of(within))
    }

    /// No member properly contains another.
    pub fn is_antichain(&self) -> bool {
        first_containment(&self.members).is_none()
    }

    /// Members with no proper subset in the family.
    pub fn minimal_members(&self) -> SetFamily {
        // Canonical order lists every proper subset before its supersets.
        let mut out: Vec<SubsetMask> = Vec::with_capacity(self.members.len());
        for &m in &self.members {
            if !out.iter().any(|k| k.is_subset_of(m)) {
                out.push(m);
            }
        }
        SetFamily { members: out }
    }

    /// Members with no proper superset in the family.
    pub fn maximal_members(&self) -> SetFamily {
        let mut out: Vec<SubsetMask> = Vec::new();
        for &m in self.members.iter().rev() {
            if !out.iter().any(|k| m.is_subset_of(*k)) {
                out.push(m);
            }
        }
        out.reverse();
        SetFamily { members: out }
    }

    pub fn filter<F: FnMut(SubsetMask) -> bool>(&self, mut keep: F) -> SetFamily {
        SetFamily { members: self.members.iter().copied().filter(|&m| keep(m)).collect() }
    }

    pub fn map_masks<F: FnMut(SubsetMask) -> SubsetMask>(&self, f: F) -> SetFamily {
        self.members.iter().copied().map(f).collect()
    }
}

impl FromIterator<SubsetMask> for SetFamily {
    fn from_iter<I: IntoIterator<Item = SubsetMask>>(iter: I) -> Self {
        let mut members: Vec<SubsetMask> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        SetFamily { members }
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = SubsetMask;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, SubsetMask>>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter().copied()
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.members).finish()
    }
}

/// First pair `(small, large)` in canonical order with `small ⊊ large`.
pub(crate) fn first_containment(sorted: &[SubsetMask]) -> Option<(SubsetMask, SubsetMask)> {
    for (j, &large) in sorted.iter().enumerate() {
        for &small in &sorted[..j] {
            if small.is_proper_subset_of(large) {
                return Some((small, large));
            }
        }
    }
    None
}

/// The trace of `z` in `y`, i.e. `y ∩ z`.
pub fn trace(y: SubsetMask, z: SubsetMask) -> SubsetMask {
    y & z
}

pub fn minimal_members(family: &SetFamily) -> SetFamily {
    family.minimal_members()
}

pub fn maximal_members(family: &SetFamily) -> SetFamily {
    family.maximal_members()
}

/// All subsets of `within`, in increasing numeric order.
pub fn subsets_of(within: SubsetMask) -> impl Iterator<Item = SubsetMask> {
    let w = within.0;
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == w { None } else { Some((cur.wrapping_sub(w)) & w) };
        Some(SubsetMask(cur))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fam(g: &GroundSet, sets: &[&str]) -> SetFamily {
        sets.iter().map(|s| g.mask_of(s.split("").filter(|c| !c.is_empty())).unwrap()).collect()
    }

    #[test]
    fn minimal_examples() {
        let g = GroundSet::letters(4).unwrap();
        assert_eq!(fam(&g, &["ab", "abc", "bc"]).minimal_members(), fam(&g, &["ab", "bc"]));
        assert_eq!(SetFamily::new().minimal_members(), SetFamily::new());
        let f = fam(&g, &["abc", "abd", "acd", "bcd"]);
        assert_eq!(f.minimal_members(), f);
    }

    #[test]
    fn maximal_examples() {
        let g = GroundSet::letters(4).unwrap();
        assert_eq!(fam(&g, &["ab", "abc", "bc"]).maximal_members(), fam(&g, &["abc"]));
        assert_eq!(fam(&g, &["a"]).maximal_members(), fam(&g, &["a"]));
        let f = fam(&g, &["ab", "cd"]);
        assert_eq!(f.maximal_members(), f);
    }

    #[test]
    fn trace_examples() {
        let g = GroundSet::letters(4).unwrap();
        let m = |s: &str| g.mask_of(s.split("").filter(|c| !c.is_empty())).unwrap();
        assert_eq!(trace(m("abc"), m("bcd")), m("bc"));
        assert_eq!(trace(m("ab"), m("cd")), SubsetMask::EMPTY);
        assert_eq!(trace(m("abc"), m("abc")), m("abc"));
    }

    #[test]
    fn ground_rejects_bad_labels() {
        assert_eq!(GroundSet::new(Vec::<String>::new()), Err(GroundError::Empty));
        assert_eq!(GroundSet::new(["a", "a"]), Err(GroundError::DuplicateLabel("a".into())));
        assert_eq!(GroundSet::new(["a", ""]), Err(GroundError::EmptyLabel(1)));
        assert_eq!(GroundSet::letters(25), Err(GroundError::TooLarge(25)));
        assert!(GroundSet::letters(24).is_ok());
    }

    #[test]
    fn compress_expand() {
        let keep = SubsetMask(0b10110);
        let s = SubsetMask(0b10010);
        let c = s.compress(keep);
        assert_eq!(c, SubsetMask(0b101));
        assert_eq!(c.expand(keep), s);
    }

    #[test]
    fn subsets_enumeration() {
        let all: Vec<_> = subsets_of(SubsetMask(0b101)).collect();
        assert_eq!(all, vec![SubsetMask(0), SubsetMask(1), SubsetMask(4), SubsetMask(5)]);
        assert_eq!(subsets_of(SubsetMask::EMPTY).count(), 1);
    }

    fn family_strategy() -> impl Strategy<Value = SetFamily> {
        prop::collection::vec(0u32..64, 0..12).prop_map(|v| v.into_iter().map(SubsetMask).collect())
    }

    proptest! {
        #[test]
        fn min_max_are_idempotent_antichains(f in family_strategy()) {
            let min = f.minimal_members();
            let max = f.maximal_members();
            prop_assert!(min.is_antichain());
            prop_assert!(max.is_antichain());
            prop_assert_eq!(min.minimal_members(), min.clone());
            prop_assert_eq!(max.maximal_members(), max.clone());
            prop_assert_eq!(f.is_antichain(), min == f);
        }

        #[test]
        fn minimal_members_cover_family(f in family_strategy()) {
            let min = f.minimal_members();
            prop_assert!(min.iter().all(|m| f.contains(m)));
            for m in f.iter() {
                prop_assert!(min.iter().any(|k| k.is_subset_of(m)));
            }
        }

        #[test]
        fn trace_is_symmetric(y in any::<u32>(), z in any::<u32>()) {
            prop_assert_eq!(trace(SubsetMask(y), SubsetMask(z)), trace(SubsetMask(z), SubsetMask(y)));
        }

        #[test]
        fn canonical_order_is_kept(f in family_strategy(), extra in 0u32..64) {
            let mut g = f.clone();
            g.insert(SubsetMask(extra));
            let v = g.members().to_vec();
            prop_assert!(v.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
