use alloc::vec::Vec;
use core::fmt;

/// A permutation of `0..n` stored as its image tuple.
///
/// Products follow function composition: `a.compose(&b)` applies `b` first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    /// Builds a permutation from its images, rejecting anything that is not a bijection.
    pub fn from_images(images: Vec<u32>) -> Option<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn compose(&self, first: &Perm) -> Perm {
        debug_assert_eq!(self.0.len(), first.0.len());
        Perm(first.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut r = alloc::vec![0u32; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            r[p as usize] = i as u32;
        }
        Perm(r)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    /// Sign of the permutation, `+1` for even and `-1` for odd.
    pub fn sign(&self) -> i64 {
        let mut seen = alloc::vec![false; self.0.len()];
        let mut parity = 0usize;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            parity += len - 1;
        }
        if parity.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Sign of the permutation that sorts `items` into increasing order.
/// Returns `None` when two items coincide.
pub fn sorting_sign<T: Ord>(items: &[T]) -> Option<i64> {
    let mut inversions = 0usize;
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            match items[i].cmp(&items[j]) {
                core::cmp::Ordering::Greater => inversions += 1,
                core::cmp::Ordering::Equal => return None,
                core::cmp::Ordering::Less => {}
            }
        }
    }
    Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn compose_applies_right_factor_first() {
        let a = Perm::from_images(vec![1, 2, 0]).unwrap();
        let b = Perm::from_images(vec![1, 0, 2]).unwrap();
        // b first: 0 -> 1 -> 2
        assert_eq!(a.compose(&b).apply(0), 2);
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0]).is_none());
        assert!(Perm::from_images(vec![0, 2]).is_none());
    }

    #[test]
    fn signs() {
        assert_eq!(Perm::from_images(vec![1, 2, 0]).unwrap().sign(), 1);
        assert_eq!(Perm::from_images(vec![1, 0, 2]).unwrap().sign(), -1);
        assert_eq!(sorting_sign(&[3, 1, 2]), Some(1));
        assert_eq!(sorting_sign(&[2, 1]), Some(-1));
        assert_eq!(sorting_sign(&[1, 1]), None);
    }
}
