//! Group rings, twisted conjugacy classes and the trace projection onto them.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt::Debug;
use core::ops::{Add, Mul, Neg};

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};

/// Exact rational coefficients.
pub type Rational = Ratio<i64>;

/// Coefficient rings used by the engine: `i64` and [`Rational`].
pub trait Coefficient:
    Clone + Debug + PartialEq + Zero + One + Add<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Coefficient for T where
    T: Clone + Debug + PartialEq + Zero + One + Add<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// Finite formal sum of basis elements (group elements or classes) with
/// coefficients in `C`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combination<C> {
    terms: BTreeMap<usize, C>,
}

/// Element of a group ring, keyed by group element index.
pub type GroupRingElement<C> = Combination<C>;
/// Element of a free module on twisted classes, keyed by class representative.
pub type ClassElement<C> = Combination<C>;

impl<C: Coefficient> Default for Combination<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> Combination<C> {
    pub fn zero() -> Self {
        Combination { terms: BTreeMap::new() }
    }

    pub fn basis(key: usize) -> Self {
        Self::term(key, C::one())
    }

    pub fn term(key: usize, coeff: C) -> Self {
        let mut c = Self::zero();
        c.add_term(key, coeff);
        c
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, C)>) -> Self {
        let mut c = Self::zero();
        for (k, v) in terms {
            c.add_term(k, v);
        }
        c
    }

    pub fn add_term(&mut self, key: usize, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(C::zero);
        *entry = entry.clone() + coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, v) in &other.terms {
            self.add_term(*k, v.clone());
        }
    }

    pub fn scaled(&self, s: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v.clone() * s.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: usize) -> C {
        self.terms.get(&key).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &C)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Relabels every basis key; colliding keys are summed.
    pub fn map_keys(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (f(*k), v.clone())))
    }

    pub fn retain_keys(&self, keep: impl Fn(usize) -> bool) -> Self {
        Combination {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(**k))
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Group ring product.
    pub fn mul_in(&self, other: &Self, group: &FiniteGroup) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(group.mul(*a, *b), x.clone() * y.clone());
            }
        }
        out
    }
}

impl Combination<i64> {
    pub fn to_rational(&self) -> Combination<Rational> {
        Combination::from_terms(self.iter().map(|(k, v)| (k, Rational::from_integer(*v))))
    }
}

/// Sum of all coefficients.
pub fn augmentation<C: Coefficient>(r: &Combination<C>) -> C {
    r.terms.values().fold(C::zero(), |acc, v| acc + v.clone())
}

/// Partition of a normal subgroup `pi` of a group `gamma` into orbits of
/// `alpha -> twist(g) * alpha * g^{-1}`, `g` ranging over `gamma`.
///
/// Classes are indexed by position; each class is named by its minimal
/// element in `pi`'s canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedClassSet {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl TwistedClassSet {
    /// Classes of `pi` itself under an endomorphism.
    pub fn new(pi: &FiniteGroup, twist: &GroupHom) -> Self {
        let embed: Vec<usize> = (0..pi.order()).collect();
        Self::under_extension(pi, &embed, pi, twist)
    }

    /// Classes of `pi`, embedded in `gamma` via `pi_to_gamma`, under the action
    /// of all of `gamma` twisted by `twist` (an endomorphism of `gamma`).
    pub fn under_extension(pi: &FiniteGroup, pi_to_gamma: &[usize], gamma: &FiniteGroup, twist: &GroupHom) -> Self {
        let n = pi.order();
        let mut gamma_to_pi = alloc::vec![usize::MAX; gamma.order()];
        for (i, &g) in pi_to_gamma.iter().enumerate() {
            gamma_to_pi[g] = i;
        }
        let mut class_of = alloc::vec![usize::MAX; n];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let c = raw.len();
            class_of[start] = c;
            let mut orbit = alloc::vec![start];
            let mut i = 0;
            while i < orbit.len() {
                let a = pi_to_gamma[orbit[i]];
                for &g in gamma.generator_indices() {
                    let img = gamma.mul(gamma.mul(twist.apply(g), a), gamma.inv(g));
                    let p = gamma_to_pi[img];
                    assert!(p != usize::MAX, "twisted conjugate left the subgroup");
                    if class_of[p] == usize::MAX {
                        class_of[p] = c;
                        orbit.push(p);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            raw.push(orbit);
        }
        // discovery order already sorts classes by minimal element
        TwistedClassSet { class_of, classes: raw }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_index(&self, alpha: usize) -> usize {
        self.class_of[alpha]
    }

    /// Representative (minimal element) of the class containing `alpha`.
    pub fn representative(&self, alpha: usize) -> usize {
        self.classes[self.class_of[alpha]][0]
    }

    pub fn representatives(&self) -> impl Iterator<Item = usize> + '_ {
        self.classes.iter().map(|c| c[0])
    }

    /// Sum of all classes, each with coefficient one.
    pub fn sum_of_classes<C: Coefficient>(&self) -> ClassElement<C> {
        Combination::from_terms(self.representatives().map(|r| (r, C::one())))
    }
}

/// The trace map `Z Aut -> Z pi_{phi'}`: drops group elements outside `pi`
/// and sums the rest per twisted class.
pub fn trace_projection<C: Coefficient>(
    r: &GroupRingElement<C>,
    pi_to_aut: &[usize],
    aut_order: usize,
    classes: &TwistedClassSet,
) -> Result<ClassElement<C>> {
    let mut aut_to_pi = alloc::vec![usize::MAX; aut_order];
    for (i, &g) in pi_to_aut.iter().enumerate() {
        if g >= aut_order || aut_to_pi[g] != usize::MAX {
            return Err(Error::input("embedding of pi into Aut is not injective"));
        }
        aut_to_pi[g] = i;
    }
    let mut out = Combination::zero();
    for (g, c) in r.iter() {
        let p = aut_to_pi[g];
        if p != usize::MAX {
            out.add_term(classes.representative(p), c.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::small::*;

    #[test]
    fn twisted_classes_examples() {
        let z2 = cyclic(2);
        assert_eq!(TwistedClassSet::new(&z2, &GroupHom::identity(&z2)).len(), 2);
        let z3 = cyclic(3);
        let g = z3.generator_indices()[0];
        let inv = GroupHom::from_generator_images(&z3, &z3, &[z3.inv(g)]).unwrap();
        assert_eq!(TwistedClassSet::new(&z3, &inv).len(), 1);
        let t = FiniteGroup::trivial();
        assert_eq!(TwistedClassSet::new(&t, &GroupHom::identity(&t)).len(), 1);
    }

    #[test]
    fn brute_force_orbits_agree() {
        // brute force: union over all gamma, not just generators
        let s3 = symmetric(3);
        let id = GroupHom::identity(&s3);
        let cls = TwistedClassSet::new(&s3, &id);
        for a in 0..6 {
            for g in 0..6 {
                let b = s3.mul(s3.mul(g, a), s3.inv(g));
                assert_eq!(cls.class_index(a), cls.class_index(b));
            }
        }
        assert_eq!(cls.len(), 3);
    }

    #[test]
    fn trace_projection_examples() {
        let z4 = cyclic(4);
        let g = z4.generator_indices()[0];
        let g2 = z4.mul(g, g);
        let g3 = z4.mul(g2, g);
        let pi = z4.closure([g2]);
        // pi = {e, g^2}; classes under identity twist are singletons
        let pi_group = cyclic(2);
        let t = pi_group.generator_indices()[0];
        let mut embed = alloc::vec![0usize; 2];
        embed[t] = g2;
        assert_eq!(pi.order(), 2);
        let cls = TwistedClassSet::new(&pi_group, &GroupHom::identity(&pi_group));
        let r = Combination::from_terms([(g, 1i64), (g2, 2), (g3, 1)]);
        let tr = trace_projection(&r, &embed, 4, &cls).unwrap();
        assert_eq!(tr, Combination::term(t, 2));
        assert!(trace_projection(&Combination::<i64>::zero(), &embed, 4, &cls)
            .unwrap()
            .is_zero());

        let r = Combination::from_terms([(0, 3i64), (t, 5)]);
        let tr = trace_projection(&r, &[0, 1], 2, &cls).unwrap();
        assert_eq!(tr, r);
        assert_eq!(augmentation(&tr), 8);
        assert!(trace_projection(&r, &[0, 0], 2, &cls).is_err());
    }

    #[test]
    fn augmentation_examples() {
        let r: Combination<i64> = Combination::from_terms([(1, 2), (0, -1)]);
        assert_eq!(augmentation(&r), 1);
        assert_eq!(augmentation(&Combination::<i64>::zero()), 0);
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let mut r: Combination<i64> = Combination::term(3, 2);
        r.add_term(3, -2);
        assert!(r.is_zero());
    }
}
