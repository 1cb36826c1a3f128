//! Nielsen numbers from class invariants, the minimum cover behind `N^G`,
//! and the bound and fixed-point-freeness verdicts.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ring::{ClassElement, Coefficient};

/// Default cap on the number of distinct candidate classes in the `N^G`
/// cover search.
pub const DEFAULT_COVER_SEARCH_CAP: usize = 4096;

/// Number of classes with non-zero coefficient.
pub fn count_essential<C: Coefficient>(c: &ClassElement<C>) -> usize {
    c.len()
}

/// Fixed-size bit set over essential classes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitSet(Vec<u64>);

impl BitSet {
    pub fn new(n: usize) -> Self {
        BitSet(alloc::vec![0; n.div_ceil(64)])
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn difference_len(&self, other: &BitSet) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a & !b).count_ones() as usize)
            .sum()
    }

    fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }
}

/// Smallest number of `candidates` whose union is `0..universe`, by branch
/// and bound. Candidates are deduplicated and dominated ones dropped before
/// the cap is applied. `None` when no cover exists.
pub fn minimum_cover(universe: usize, candidates: &[BitSet], cap: usize) -> Result<Option<usize>> {
    if universe == 0 {
        return Ok(Some(0));
    }
    let mut sets: Vec<BitSet> = candidates.iter().filter(|s| !s.is_empty()).cloned().collect();
    sets.sort_by_key(|s| core::cmp::Reverse(s.len()));
    sets.dedup();
    let mut kept: Vec<BitSet> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| s.is_subset(k)) {
            kept.push(s);
        }
    }
    if kept.len() > cap {
        return Err(Error::CoverSearchTooLarge {
            candidates: kept.len(),
            cap,
        });
    }
    let mut full = BitSet::new(universe);
    for s in &kept {
        full.union_with(s);
    }
    if full.len() < universe {
        return Ok(None);
    }
    let mut best = kept.len().min(universe);
    let mut covered = BitSet::new(universe);
    search(universe, &kept, &mut covered, 0, &mut best);
    Ok(Some(best))
}

fn search(universe: usize, sets: &[BitSet], covered: &mut BitSet, used: usize, best: &mut usize) {
    let remaining = universe - covered.len();
    if remaining == 0 {
        *best = (*best).min(used);
        return;
    }
    let largest = sets.iter().map(|s| s.difference_len(covered)).max().unwrap_or(0);
    if largest == 0 || used + remaining.div_ceil(largest) >= *best {
        return;
    }
    // branch on the uncovered element with the fewest covering sets
    let pivot = (0..universe)
        .filter(|&i| !covered.contains(i))
        .min_by_key(|&i| sets.iter().filter(|s| s.contains(i)).count())
        .expect("something is uncovered");
    for s in sets.iter().filter(|s| s.contains(pivot)) {
        let saved = covered.clone();
        covered.union_with(s);
        search(universe, sets, covered, used + 1, best);
        *covered = saved;
    }
}

/// Exhaustive minimum over all subsets; for cross-checking small instances.
pub fn minimum_cover_exhaustive(universe: usize, candidates: &[BitSet]) -> Option<usize> {
    assert!(candidates.len() <= 20, "exhaustive cover search is for small instances");
    let mut best: Option<usize> = None;
    for mask in 0u32..1 << candidates.len() {
        let mut covered = BitSet::new(universe);
        for (i, s) in candidates.iter().enumerate() {
            if mask >> i & 1 == 1 {
                covered.union_with(s);
            }
        }
        if covered.len() == universe {
            let k = mask.count_ones() as usize;
            best = Some(best.map_or(k, |b| b.min(k)));
        }
    }
    best
}

/// How a minimal fixed-point count relates to the Nielsen number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    /// The gap hypotheses hold: the minimum equals the Nielsen number.
    Exact(usize),
    /// Only the lower bound is known.
    AtLeast(usize),
}

impl Bound {
    pub fn new(n: usize, gap_holds: bool) -> Self {
        if gap_holds {
            Bound::Exact(n)
        } else {
            Bound::AtLeast(n)
        }
    }

    pub fn value(&self) -> usize {
        match *self {
            Bound::Exact(n) | Bound::AtLeast(n) => n,
        }
    }

    /// `"=n"` or `">=n"`.
    pub fn render(&self) -> String {
        match self {
            Bound::Exact(n) => alloc::format!("={n}"),
            Bound::AtLeast(n) => alloc::format!(">={n}"),
        }
    }
}

/// Outcome of the Lefschetz-type fixed-point-freeness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedPointVerdict {
    /// `lambda_G(f) = 0` and the gap hypotheses hold.
    HomotopicToFixedPointFree,
    /// `lambda_G(f) = 0`, but the listed objects fail the gap hypotheses.
    VanishesGapUnmet { objects: Vec<usize> },
    /// `lambda_G(f)` is non-zero at the listed objects.
    Obstruction { objects: Vec<usize> },
}

impl FixedPointVerdict {
    pub fn new(lambda_nonzero: &[usize], gap_failures: &[usize]) -> Self {
        if !lambda_nonzero.is_empty() {
            FixedPointVerdict::Obstruction {
                objects: lambda_nonzero.to_vec(),
            }
        } else if !gap_failures.is_empty() {
            FixedPointVerdict::VanishesGapUnmet {
                objects: gap_failures.to_vec(),
            }
        } else {
            FixedPointVerdict::HomotopicToFixedPointFree
        }
    }

    pub fn render(&self) -> String {
        match self {
            FixedPointVerdict::HomotopicToFixedPointFree => "G-homotopic to a fixed point free G-map".into(),
            FixedPointVerdict::VanishesGapUnmet { objects } => {
                alloc::format!("lambda vanishes; theorem hypotheses unmet (gap fails at objects {objects:?})")
            }
            FixedPointVerdict::Obstruction { objects } => {
                alloc::format!("has an essential fixed-point obstruction at objects {objects:?}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(universe: usize, items: &[usize]) -> BitSet {
        let mut s = BitSet::new(universe);
        for &i in items {
            s.insert(i);
        }
        s
    }

    #[test]
    fn cover_examples() {
        assert_eq!(minimum_cover(0, &[], 10).unwrap(), Some(0));
        let c = [set(3, &[0, 1]), set(3, &[1, 2]), set(3, &[2])];
        assert_eq!(minimum_cover(3, &c, 10).unwrap(), Some(2));
        assert_eq!(minimum_cover(3, &[set(3, &[0])], 10).unwrap(), None);
        let many: Vec<BitSet> = (0..5).map(|i| set(5, &[i])).collect();
        assert_eq!(
            minimum_cover(5, &many, 3).unwrap_err(),
            Error::CoverSearchTooLarge { candidates: 5, cap: 3 }
        );
    }

    proptest! {
        #[test]
        fn branch_and_bound_matches_exhaustive(
            universe in 1usize..9,
            raw in proptest::collection::vec(proptest::collection::vec(0usize..9, 0..5), 0..12),
        ) {
            let cands: Vec<BitSet> = raw
                .iter()
                .map(|items| set(universe, &items.iter().map(|i| i % universe).collect::<Vec<_>>()))
                .collect();
            prop_assert_eq!(minimum_cover(universe, &cands, 100).unwrap(), minimum_cover_exhaustive(universe, &cands));
        }
    }

    #[test]
    fn verdicts() {
        assert_eq!(
            FixedPointVerdict::new(&[], &[]).render(),
            "G-homotopic to a fixed point free G-map"
        );
        assert!(matches!(
            FixedPointVerdict::new(&[], &[0]),
            FixedPointVerdict::VanishesGapUnmet { .. }
        ));
        assert!(matches!(
            FixedPointVerdict::new(&[1], &[0]),
            FixedPointVerdict::Obstruction { .. }
        ));
        assert_eq!(Bound::new(2, false).render(), ">=2");
        assert_eq!(Bound::new(0, true).render(), "=0");
    }
}
