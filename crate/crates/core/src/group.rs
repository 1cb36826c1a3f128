//! Finite permutation groups with fully enumerated, canonically ordered elements.
//!
//! Elements are sorted lexicographically by image tuple, so the identity is
//! always element `0` and every index is reproducible from the generators.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Default upper bound on the number of enumerated elements.
pub const DEFAULT_ORDER_LIMIT: usize = 100_000;

const TABLE_LIMIT: usize = 1024;

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Perm>,
    generator_indices: Vec<usize>,
    elements: Vec<Perm>,
    index: BTreeMap<Perm, usize>,
    inverses: Vec<usize>,
    table: Option<Vec<u32>>,
}

impl FiniteGroup {
    pub fn trivial() -> Self {
        Self::from_generators(1, Vec::new()).expect("trivial group")
    }

    pub fn from_generators(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        Self::from_generators_with_limit(degree, generators, DEFAULT_ORDER_LIMIT)
    }

    pub fn from_generators_with_limit(degree: usize, generators: Vec<Perm>, limit: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::input("group degree must be positive"));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::input(alloc::format!(
                "generator {g:?} does not have degree {degree}"
            )));
        }
        let id = Perm::identity(degree);
        let mut seen: BTreeSet<Perm> = BTreeSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(e) = queue.pop_front() {
            for s in &generators {
                let p = s.compose(&e);
                if !seen.contains(&p) {
                    if seen.len() >= limit {
                        return Err(Error::GroupTooLarge { limit });
                    }
                    seen.insert(p.clone());
                    queue.push_back(p);
                }
            }
        }
        let elements: Vec<Perm> = seen.into_iter().collect();
        let index: BTreeMap<Perm, usize> = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        let generator_indices = generators.iter().map(|g| index[g]).collect();
        let mut group = FiniteGroup {
            degree,
            generators,
            generator_indices,
            elements,
            index,
            inverses,
            table: None,
        };
        let n = group.order();
        if n <= TABLE_LIMIT {
            let mut table = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    table.push(group.mul_slow(a, b) as u32);
                }
            }
            group.table = Some(table);
        }
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub const IDENTITY: usize = 0;

    fn mul_slow(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    /// Product `a * b` (apply `b`, then `a`).
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.mul_slow(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generator_indices;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Element order of `a`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != Self::IDENTITY {
            x = self.mul(a, x);
            k += 1;
        }
        k
    }

    pub fn conjugate(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    /// Closure of a set of elements under multiplication.
    pub fn closure(&self, gens: impl IntoIterator<Item = usize>) -> Subgroup {
        let gens: Vec<usize> = gens.into_iter().collect();
        let mut member = alloc::vec![false; self.order()];
        member[Self::IDENTITY] = true;
        let mut members = alloc::vec![Self::IDENTITY];
        let mut i = 0;
        while i < members.len() {
            let e = members[i];
            for &s in &gens {
                let p = self.mul(s, e);
                if !member[p] {
                    member[p] = true;
                    members.push(p);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        Subgroup { members, member }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: (0..self.order()).collect(),
            member: alloc::vec![true; self.order()],
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.closure(core::iter::empty())
    }

    /// Conjugate subgroup `g S g^{-1}`.
    pub fn conjugate_subgroup(&self, g: usize, s: &Subgroup) -> Subgroup {
        let mut member = alloc::vec![false; self.order()];
        let mut members: Vec<usize> = s
            .members
            .iter()
            .map(|&h| {
                let c = self.conjugate(g, h);
                member[c] = true;
                c
            })
            .collect();
        members.sort_unstable();
        Subgroup { members, member }
    }

    /// `N_G(H)`.
    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let members: Vec<usize> = (0..self.order())
            .filter(|&g| h.members.iter().all(|&x| h.contains(self.conjugate(g, x))))
            .collect();
        let mut member = alloc::vec![false; self.order()];
        for &m in &members {
            member[m] = true;
        }
        Subgroup { members, member }
    }

    /// Is `g^{-1} H g` contained in `K`?
    pub fn conjugates_into(&self, g: usize, h: &Subgroup, k: &Subgroup) -> bool {
        let gi = self.inv(g);
        h.members.iter().all(|&x| k.contains(self.conjugate(gi, x)))
    }

    /// All subgroups, as joins of cyclic subgroups.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut cyclic: BTreeMap<Vec<usize>, Subgroup> = BTreeMap::new();
        for g in 0..self.order() {
            let c = self.closure([g]);
            cyclic.entry(c.members.clone()).or_insert(c);
        }
        let cyclic_gens: Vec<usize> = {
            let mut reps = Vec::new();
            let mut seen = BTreeSet::new();
            for g in 0..self.order() {
                let c = self.closure([g]);
                if seen.insert(c.members.clone()) {
                    reps.push(g);
                }
            }
            reps
        };
        let mut all: BTreeMap<Vec<usize>, Subgroup> = cyclic.clone();
        let mut frontier: Vec<Subgroup> = cyclic.into_values().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for &g in &cyclic_gens {
                    if s.contains(g) {
                        continue;
                    }
                    let j = self.closure(s.members.iter().copied().chain([g]));
                    if !all.contains_key(&j.members) {
                        all.insert(j.members.clone(), j.clone());
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        all.into_values().collect()
    }

    /// One representative per conjugacy class of subgroups, sorted by order and then
    /// by member list. Each representative is the minimal member of its class.
    pub fn subgroup_conjugacy_classes(&self) -> Vec<Subgroup> {
        let all = self.all_subgroups();
        let mut done: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut reps = Vec::new();
        let mut sorted = all;
        sorted.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
        for s in sorted {
            if done.contains(&s.members) {
                continue;
            }
            for g in 0..self.order() {
                done.insert(self.conjugate_subgroup(g, &s).members);
            }
            reps.push(s);
        }
        reps
    }

    /// Weyl group `N_G(H)/H`, realized as a permutation group on the left cosets of `H`
    /// in `N_G(H)`.
    pub fn weyl_group(&self, h: &Subgroup) -> WeylGroup {
        let normalizer = self.normalizer(h);
        // cosets nH keyed by their minimal element
        let mut coset_of = alloc::vec![usize::MAX; self.order()];
        let mut coset_reps: Vec<usize> = Vec::new();
        for &n in &normalizer.members {
            if coset_of[n] != usize::MAX {
                continue;
            }
            let c = coset_reps.len();
            coset_reps.push(n);
            for &x in &h.members {
                coset_of[self.mul(n, x)] = c;
            }
        }
        let k = coset_reps.len();
        let perm_of = |n: usize| -> Perm {
            Perm::from_images(coset_reps.iter().map(|&r| coset_of[self.mul(n, r)] as u32).collect())
                .expect("left multiplication permutes cosets")
        };
        let mut gens: BTreeSet<Perm> = BTreeSet::new();
        for &n in &normalizer.members {
            let p = perm_of(n);
            if !p.is_identity() {
                gens.insert(p);
            }
        }
        let group =
            FiniteGroup::from_generators(k.max(1), gens.into_iter().collect()).expect("Weyl group is no larger than G");
        let mut quotient = alloc::vec![usize::MAX; self.order()];
        for &n in &normalizer.members {
            let p = if k == 0 { Perm::identity(1) } else { perm_of(n) };
            quotient[n] = group.index_of(&p).expect("image lies in Weyl group");
        }
        WeylGroup {
            group,
            normalizer,
            quotient,
        }
    }
}

/// A subgroup of a [`FiniteGroup`], stored as sorted element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
    member: Vec<bool>,
}

impl Subgroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn contains(&self, g: usize) -> bool {
        self.member.get(g).copied().unwrap_or(false)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&g| other.contains(g))
    }

    /// Checks closure under products and inverses.
    pub fn is_valid_in(&self, group: &FiniteGroup) -> bool {
        self.contains(FiniteGroup::IDENTITY)
            && self
                .members
                .iter()
                .all(|&a| self.contains(group.inv(a)) && self.members.iter().all(|&b| self.contains(group.mul(a, b))))
    }
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub group: FiniteGroup,
    pub normalizer: Subgroup,
    /// `quotient[g]` is the image of `g` in `WH` for `g` in the normalizer,
    /// `usize::MAX` otherwise.
    pub quotient: Vec<usize>,
}

impl WeylGroup {
    pub fn image(&self, g: usize) -> Option<usize> {
        match self.quotient.get(g) {
            Some(&w) if w != usize::MAX => Some(w),
            _ => None,
        }
    }

    /// Some element of `N_G(H)` mapping to `w`.
    pub fn lift(&self, w: usize) -> usize {
        self.normalizer
            .members()
            .iter()
            .copied()
            .find(|&n| self.quotient[n] == w)
            .expect("quotient map is surjective")
    }
}

/// A homomorphism between finite groups, stored as the image of every source element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    images: Vec<usize>,
}

impl GroupHom {
    /// Extends generator images along the Cayley graph of `source`, rejecting
    /// assignments that do not define a homomorphism.
    pub fn from_generator_images(source: &FiniteGroup, target: &FiniteGroup, gen_images: &[usize]) -> Result<Self> {
        if gen_images.len() != source.generator_indices().len() {
            return Err(Error::input("wrong number of generator images"));
        }
        let images = extend_along_cayley_graph(source, gen_images, FiniteGroup::IDENTITY, |a, b| target.mul(a, b))
            .ok_or_else(|| Error::input("generator images do not define a homomorphism"))?;
        let hom = GroupHom { images };
        hom.check(source, target)?;
        Ok(hom)
    }

    /// Builds from a full image table, checking multiplicativity on all pairs.
    pub fn from_images(source: &FiniteGroup, target: &FiniteGroup, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.order() || images.iter().any(|&i| i >= target.order()) {
            return Err(Error::input("image table has the wrong shape"));
        }
        let hom = GroupHom { images };
        hom.check(source, target)?;
        Ok(hom)
    }

    /// Builds from the images of a generating list of source elements.
    pub fn from_element_images(
        source: &FiniteGroup,
        target: &FiniteGroup,
        elements: &[usize],
        images: &[usize],
    ) -> Result<Self> {
        if elements.len() != images.len() {
            return Err(Error::input("wrong number of element images"));
        }
        let images = extend_from_elements(source, elements, images, FiniteGroup::IDENTITY, |a, b| target.mul(a, b))
            .ok_or_else(|| Error::input("element images do not define a homomorphism"))?;
        let hom = GroupHom { images };
        hom.check(source, target)?;
        Ok(hom)
    }

    pub fn identity(group: &FiniteGroup) -> Self {
        GroupHom {
            images: (0..group.order()).collect(),
        }
    }

    fn check(&self, source: &FiniteGroup, target: &FiniteGroup) -> Result<()> {
        let n = source.order();
        for a in 0..n {
            for b in 0..n {
                if self.images[source.mul(a, b)] != target.mul(self.images[a], self.images[b]) {
                    return Err(Error::input("map is not multiplicative"));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.images[g]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.images.iter().all(|i| seen.insert(*i))
    }
}

/// Propagates a labelling of generators to every element: the value of `s * g`
/// is `combine(value(s), value(g))`. Returns `None` if two paths disagree.
pub(crate) fn extend_along_cayley_graph<T: Clone + PartialEq>(
    group: &FiniteGroup,
    gen_values: &[T],
    identity_value: T,
    combine: impl Fn(T, T) -> T,
) -> Option<Vec<T>> {
    extend_from_elements(group, group.generator_indices(), gen_values, identity_value, combine)
}

/// Like [`extend_along_cayley_graph`] but for an arbitrary list of elements,
/// which must generate the group. Returns `None` on disagreement or if some
/// element is not reached.
pub(crate) fn extend_from_elements<T: Clone + PartialEq>(
    group: &FiniteGroup,
    elements: &[usize],
    gen_values: &[T],
    identity_value: T,
    combine: impl Fn(T, T) -> T,
) -> Option<Vec<T>> {
    let n = group.order();
    let mut values: Vec<Option<T>> = alloc::vec![None; n];
    values[FiniteGroup::IDENTITY] = Some(identity_value);
    let mut queue = VecDeque::from([FiniteGroup::IDENTITY]);
    while let Some(e) = queue.pop_front() {
        let ve = values[e].clone().expect("visited");
        for (k, &s) in elements.iter().enumerate() {
            let p = group.mul(s, e);
            let vp = combine(gen_values[k].clone(), ve.clone());
            match &values[p] {
                Some(existing) => {
                    if *existing != vp {
                        return None;
                    }
                }
                None => {
                    values[p] = Some(vp);
                    queue.push_back(p);
                }
            }
        }
    }
    values.into_iter().collect()
}

/// Common small groups, handy for tests and catalog inputs.
pub mod small {
    use super::*;
    use alloc::vec;

    pub fn perm(images: &[u32]) -> Perm {
        Perm::from_images(images.to_vec()).expect("valid permutation")
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        let gen: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        let gens = if n > 1 { vec![perm(&gen)] } else { Vec::new() };
        FiniteGroup::from_generators(n, gens).unwrap()
    }

    pub fn symmetric(n: usize) -> FiniteGroup {
        let mut gens = Vec::new();
        if n > 1 {
            let mut t: Vec<u32> = (0..n as u32).collect();
            t.swap(0, 1);
            gens.push(perm(&t));
            let c: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
            gens.push(perm(&c));
        }
        FiniteGroup::from_generators(n, gens).unwrap()
    }

    pub fn dihedral(n: usize) -> FiniteGroup {
        let r: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        let s: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
        FiniteGroup::from_generators(n, vec![perm(&r), perm(&s)]).unwrap()
    }
}
