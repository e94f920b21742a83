//! Punctures in convex position on the boundary of a disc.
//!
//! Labels are `1..=n` read clockwise, so label `i` is followed by `i % n + 1`.
//! Every predicate here is decided from the cyclic order alone: two disjoint
//! sets have intersecting convex hulls exactly when they interleave.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported puncture count (sets are stored as `u32` bit masks).
pub const MAX_PUNCTURES: usize = 32;

/// A disc with `n` punctures in convex position and the standard clockwise labeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConvexDisc {
    n: u8,
}

impl ConvexDisc {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_PUNCTURES {
            return Err(Error::DiscSize(n));
        }
        Ok(Self { n: n as u8 })
    }

    pub fn size(self) -> usize {
        self.n as usize
    }

    pub fn labels(self) -> impl Iterator<Item = usize> {
        1..=self.size()
    }

    /// Clockwise successor of a label.
    pub fn successor(self, label: usize) -> usize {
        label % self.size() + 1
    }

    pub fn contains_label(self, label: usize) -> bool {
        (1..=self.size()).contains(&label)
    }

    /// The set of all punctures.
    pub fn full(self) -> PunctureSet {
        PunctureSet {
            n: self.n,
            bits: full_mask(self.size()),
        }
    }

    pub fn set(self, labels: &[usize]) -> Result<PunctureSet> {
        PunctureSet::new(self, labels)
    }

    pub fn singleton(self, label: usize) -> Result<PunctureSet> {
        PunctureSet::new(self, &[label])
    }

    /// Every nonempty subset, in lexicographic order of member lists.
    pub fn nonempty_subsets(self) -> Vec<PunctureSet> {
        let mut sets: Vec<PunctureSet> = (1..=full_mask(self.size()))
            .map(|bits| PunctureSet { n: self.n, bits })
            .collect();
        sets.sort();
        sets
    }
}

fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// A subset of the punctures of a [`ConvexDisc`].
///
/// Members are kept as a bit mask (bit `k - 1` for label `k`), so iteration
/// is always in increasing label order.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PunctureSet {
    n: u8,
    bits: u32,
}

impl PunctureSet {
    pub fn new(disc: ConvexDisc, labels: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        for &label in labels {
            if !disc.contains_label(label) {
                return Err(Error::LabelOutOfRange {
                    label,
                    n: disc.size(),
                });
            }
            bits |= 1 << (label - 1);
        }
        Ok(Self { n: disc.n, bits })
    }

    pub(crate) fn from_bits(disc: ConvexDisc, bits: u32) -> Self {
        debug_assert_eq!(bits & !full_mask(disc.size()), 0);
        Self { n: disc.n, bits }
    }

    pub fn disc(self) -> ConvexDisc {
        ConvexDisc { n: self.n }
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn contains(self, label: usize) -> bool {
        label >= 1 && label <= self.n as usize && self.bits & (1 << (label - 1)) != 0
    }

    /// Members in increasing label order.
    pub fn members(self) -> impl Iterator<Item = usize> + Clone {
        let bits = self.bits;
        (1..=self.n as usize).filter(move |&k| bits & (1 << (k - 1)) != 0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.members().collect()
    }

    pub fn min(self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize + 1)
    }

    pub fn is_subset(self, other: PunctureSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_disjoint(self, other: PunctureSet) -> bool {
        self.bits & other.bits == 0
    }

    pub fn union(self, other: PunctureSet) -> PunctureSet {
        debug_assert_eq!(self.n, other.n);
        PunctureSet {
            n: self.n,
            bits: self.bits | other.bits,
        }
    }

    pub fn difference(self, other: PunctureSet) -> PunctureSet {
        PunctureSet {
            n: self.n,
            bits: self.bits & !other.bits,
        }
    }

    fn same_disc(self, other: PunctureSet) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DiscMismatch(self.n as usize, other.n as usize));
        }
        Ok(())
    }
}

impl Ord for PunctureSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.members().cmp(other.members()))
    }
}

impl PartialOrd for PunctureSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PunctureSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, m) in self.members().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for PunctureSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn check_disjoint(b: PunctureSet, c: PunctureSet) -> Result<()> {
    b.same_disc(c)?;
    if !b.is_disjoint(c) {
        return Err(Error::Overlapping(b.to_string(), c.to_string()));
    }
    Ok(())
}

fn check_nonempty(sets: &[PunctureSet]) -> Result<()> {
    if sets.iter().any(|s| s.is_empty()) {
        return Err(Error::EmptySet);
    }
    Ok(())
}

/// Block index of every labelled puncture of the union, read clockwise from label 1.
fn block_sequence(sets: &[PunctureSet]) -> Vec<usize> {
    let n = sets.first().map_or(0, |s| s.n as usize);
    (1..=n)
        .filter_map(|label| sets.iter().position(|s| s.contains(label)))
        .collect()
}

/// Collapse a cyclic sequence into its maximal runs (cyclically).
fn cyclic_runs(seq: &[usize]) -> Vec<usize> {
    let mut runs: Vec<usize> = Vec::new();
    for &x in seq {
        if runs.last() != Some(&x) {
            runs.push(x);
        }
    }
    if runs.len() > 1 && runs.first() == runs.last() {
        runs.pop();
    }
    runs
}

fn interleaved(b: PunctureSet, c: PunctureSet) -> bool {
    cyclic_runs(&block_sequence(&[b, c])).len() > 2
}

/// Whether two disjoint sets interleave in the cyclic order (their hulls meet).
pub fn crossing(b: PunctureSet, c: PunctureSet) -> Result<bool> {
    check_disjoint(b, c)?;
    check_nonempty(&[b, c])?;
    Ok(interleaved(b, c))
}

pub fn non_crossing(b: PunctureSet, c: PunctureSet) -> Result<bool> {
    crossing(b, c).map(|x| !x)
}

/// Whether a family of pairwise disjoint sets is pairwise non-crossing.
///
/// Empty members are accepted and never cross anything.
pub fn non_crossing_family(sets: &[PunctureSet]) -> Result<bool> {
    for (k, &b) in sets.iter().enumerate() {
        for &c in &sets[k + 1..] {
            check_disjoint(b, c)?;
            if !b.is_empty() && !c.is_empty() && interleaved(b, c) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether the sets occupy contiguous clockwise blocks of their union, in the given order.
pub fn admissible(sequence: &[PunctureSet]) -> Result<bool> {
    check_nonempty(sequence)?;
    for (k, &b) in sequence.iter().enumerate() {
        for &c in &sequence[k + 1..] {
            check_disjoint(b, c)?;
        }
    }
    Ok(admissible_unchecked(sequence))
}

pub(crate) fn admissible_unchecked(sequence: &[PunctureSet]) -> bool {
    let k = sequence.len();
    if k <= 1 {
        return true;
    }
    let runs = cyclic_runs(&block_sequence(sequence));
    runs.len() == k && (0..k).all(|t| runs[(t + 1) % k] == (runs[t] + 1) % k)
}

/// Nested pairs: the union of one pair lies inside a single member of the other.
pub fn nested(
    pair1: (PunctureSet, PunctureSet),
    pair2: (PunctureSet, PunctureSet),
) -> Result<bool> {
    for (x, y) in [pair1, pair2] {
        check_nonempty(&[x, y])?;
        check_disjoint(x, y)?;
        if interleaved(x, y) {
            return Err(Error::Crossing(x.to_string(), y.to_string()));
        }
    }
    pair1.0.same_disc(pair2.0)?;
    Ok(nested_unchecked(pair1, pair2))
}

pub(crate) fn nested_unchecked(
    (b, c): (PunctureSet, PunctureSet),
    (d, e): (PunctureSet, PunctureSet),
) -> bool {
    let bc = b.union(c);
    let de = d.union(e);
    bc.is_subset(d) || bc.is_subset(e) || de.is_subset(b) || de.is_subset(c)
}

/// Containment either way, or disjoint and non-crossing.
pub fn compatible(b: PunctureSet, c: PunctureSet) -> Result<bool> {
    b.same_disc(c)?;
    check_nonempty(&[b, c])?;
    Ok(compatible_unchecked(b, c))
}

pub(crate) fn compatible_unchecked(b: PunctureSet, c: PunctureSet) -> bool {
    b.is_subset(c) || c.is_subset(b) || (b.is_disjoint(c) && !interleaved(b, c))
}

/// Members read clockwise starting from the smallest label.
pub fn canonical_admissible_order(b: PunctureSet) -> Result<Vec<usize>> {
    if b.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(b.to_vec())
}

/// All ordered tuples of `k` pairwise disjoint nonempty subsets, in a fixed order.
///
/// Each label is assigned to one of the `k` blocks or left out, so this visits
/// `(k + 1)^n` assignments; callers keep `n` small.
pub(crate) fn disjoint_tuples(disc: ConvexDisc, k: usize) -> Vec<Vec<PunctureSet>> {
    let n = disc.size();
    let total = (k + 1).pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut bits = vec![0u32; k];
        let mut c = code;
        for label in 0..n {
            let slot = c % (k + 1);
            c /= k + 1;
            if slot > 0 {
                bits[slot - 1] |= 1 << label;
            }
        }
        if bits.iter().all(|&b| b != 0) {
            out.push(
                bits.into_iter()
                    .map(|b| PunctureSet::from_bits(disc, b))
                    .collect(),
            );
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, xs: &[usize]) -> PunctureSet {
        ConvexDisc::new(n).unwrap().set(xs).unwrap()
    }

    #[test]
    fn crossing_examples() {
        assert!(crossing(set(8, &[1, 2, 3, 5]), set(8, &[4, 7, 8])).unwrap());
        assert!(!crossing(set(8, &[1, 2, 3, 4, 8]), set(8, &[5, 6, 7])).unwrap());
        for i in 1..=8 {
            let rest: Vec<usize> = (1..=8).filter(|&x| x != i).collect();
            assert!(!crossing(set(8, &[i]), set(8, &rest)).unwrap());
        }
    }

    #[test]
    fn crossing_rejects_bad_input() {
        assert!(matches!(
            crossing(set(8, &[1, 2]), set(8, &[2, 3])),
            Err(Error::Overlapping(..))
        ));
        assert!(matches!(
            crossing(set(8, &[1, 2]), set(7, &[3])),
            Err(Error::DiscMismatch(8, 7))
        ));
        assert_eq!(crossing(set(4, &[]), set(4, &[1])), Err(Error::EmptySet));
    }

    #[test]
    fn families() {
        let fam = [set(8, &[1, 2, 3]), set(8, &[4, 7, 8]), set(8, &[5, 6])];
        assert!(non_crossing_family(&fam).unwrap());
        assert!(!non_crossing_family(&[set(8, &[1, 2, 3, 5]), set(8, &[4, 7, 8])]).unwrap());
        assert!(non_crossing_family(&[set(8, &[3])]).unwrap());
        assert!(non_crossing_family(&[set(8, &[]), set(8, &[1, 2])]).unwrap());
    }

    #[test]
    fn admissible_examples() {
        let b = set(8, &[2, 3, 4]);
        let c = set(8, &[5, 6]);
        let d = set(8, &[7, 8, 1]);
        assert!(admissible(&[b, c, d]).unwrap());
        assert!(admissible(&[c, d, b]).unwrap());
        assert!(!admissible(&[c, b, d]).unwrap());
        assert!(admissible(&[b]).unwrap());

        let x = set(8, &[1, 2, 3]);
        let y = set(8, &[4, 7, 8]);
        let z = set(8, &[5, 6]);
        for perm in [
            [x, y, z],
            [x, z, y],
            [y, x, z],
            [y, z, x],
            [z, x, y],
            [z, y, x],
        ] {
            assert!(!admissible(&perm).unwrap());
        }
    }

    #[test]
    fn admissible_ignores_punctures_outside_the_union() {
        // ({4}, {6}, {1}) reads 1, 4, 6 clockwise within the union
        let seq = [set(8, &[4]), set(8, &[6]), set(8, &[1])];
        assert!(admissible(&seq).unwrap());
        let seq = [set(8, &[4]), set(8, &[1]), set(8, &[6])];
        assert!(!admissible(&seq).unwrap());
    }

    #[test]
    fn nested_examples() {
        let pair1 = (set(8, &[7, 8, 1, 2, 3]), set(8, &[4, 5, 6]));
        let pair2 = (set(8, &[7, 1]), set(8, &[2, 3]));
        assert!(nested(pair1, pair2).unwrap());
        assert!(nested(
            (set(4, &[1, 2]), set(4, &[3, 4])),
            (set(4, &[1]), set(4, &[2]))
        )
        .unwrap());
        assert!(!nested((set(4, &[1]), set(4, &[2])), (set(4, &[3]), set(4, &[4]))).unwrap());
        assert!(matches!(
            nested(
                (set(4, &[1, 3]), set(4, &[2, 4])),
                (set(4, &[1]), set(4, &[2]))
            ),
            Err(Error::Crossing(..))
        ));
    }

    #[test]
    fn compatible_examples() {
        assert!(compatible(set(8, &[1, 2]), set(8, &[1, 2, 3])).unwrap());
        assert!(!compatible(set(8, &[1, 2, 3, 5]), set(8, &[4, 7, 8])).unwrap());
        assert!(compatible(set(8, &[1, 2, 3, 4, 8]), set(8, &[5, 6, 7])).unwrap());
        assert!(!compatible(set(8, &[1, 2]), set(8, &[2, 3])).unwrap());
    }

    #[test]
    fn canonical_order() {
        assert_eq!(
            canonical_admissible_order(set(8, &[1, 2, 4, 5, 8])).unwrap(),
            vec![1, 2, 4, 5, 8]
        );
        assert_eq!(
            canonical_admissible_order(set(8, &[4, 5, 6, 7, 8, 1, 2, 3])).unwrap(),
            (1..=8).collect::<Vec<_>>()
        );
        assert_eq!(
            canonical_admissible_order(set(8, &[7, 8, 1])).unwrap(),
            vec![1, 7, 8]
        );
        assert_eq!(
            canonical_admissible_order(set(8, &[])),
            Err(Error::EmptySet)
        );
    }

    #[test]
    fn subsets_are_lexicographic() {
        let subs = ConvexDisc::new(3).unwrap().nonempty_subsets();
        let lists: Vec<Vec<usize>> = subs.iter().map(|s| s.to_vec()).collect();
        assert_eq!(
            lists,
            vec![
                vec![1],
                vec![1, 2],
                vec![1, 2, 3],
                vec![1, 3],
                vec![2],
                vec![2, 3],
                vec![3]
            ]
        );
    }

    #[test]
    fn label_validation() {
        let disc = ConvexDisc::new(4).unwrap();
        assert_eq!(
            disc.set(&[0]),
            Err(Error::LabelOutOfRange { label: 0, n: 4 })
        );
        assert!(ConvexDisc::new(0).is_err());
        assert_eq!(disc.successor(4), 1);
    }
}
