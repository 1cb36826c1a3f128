//! Refined Lefschetz numbers of lifted maps, per object.

use alloc::vec::Vec;

use num_traits::One;

use crate::complex::{ElementMap, GComplex, PreparedMap};
use crate::cover::{ChainMode, EquivChainComplex, EquivChainMap, MapLift, ObjectCover};
use crate::error::{Error, Result};
use crate::fundamental::FundObject;
use crate::group::FiniteGroup;
use crate::ring::{augmentation, trace_projection, ClassElement, Coefficient, Combination, Rational, TwistedClassSet};

/// Everything computed for one object whose component the map preserves.
#[derive(Clone, Debug)]
pub struct ObjectLefschetz {
    pub cover: ObjectCover,
    pub lift: MapLift,
    pub classes: TwistedClassSet,
    /// `lambda_G(f)` at this object, keyed by class representative in `pi1`.
    pub lambda: ClassElement<i64>,
    /// `L^{Q Aut(x)}`, the absolute rational refined Lefschetz number.
    pub rational: ClassElement<Rational>,
}

impl ObjectLefschetz {
    /// `None` when `f` moves the component to another one.
    pub fn compute(x: &GComplex, object: &FundObject, f: &PreparedMap) -> Result<Option<Self>> {
        let cover = ObjectCover::new(x, object)?;
        Self::compute_on(cover, f, FiniteGroup::IDENTITY)
    }

    /// As [`ObjectLefschetz::compute`] on a prebuilt cover with the basepoint
    /// lift sent to sheet `anchor`.
    pub fn compute_on(cover: ObjectCover, f: &PreparedMap, anchor: usize) -> Result<Option<Self>> {
        let Some(lift) = cover.lift_map(f, anchor)? else {
            return Ok(None);
        };
        let aut = &cover.aut().group;
        let classes = TwistedClassSet::under_extension(cover.pi(), &cover.aut().pi_to_aut, aut, &lift.phi_prime);
        let relative = EquivChainComplex::new(&cover, ChainMode::Relative)?;
        let rel_map = EquivChainMap::new(&cover, &relative, f, &lift)?;
        let lambda = refined_trace(&cover, &relative, &rel_map, &classes)?;
        let lambda = to_integer(&lambda)?;
        let absolute = EquivChainComplex::new(&cover, ChainMode::Absolute)?;
        let abs_map = EquivChainMap::new(&cover, &absolute, f, &lift)?;
        let rational = refined_trace(&cover, &absolute, &abs_map, &classes)?;
        Ok(Some(ObjectLefschetz {
            cover,
            lift,
            classes,
            lambda,
            rational,
        }))
    }

    /// `L_G(f)` at this object.
    pub fn lefschetz_class(&self) -> i64 {
        augmentation(&self.lambda)
    }
}

/// `sum_p (-1)^p tr(F_p)`, projected to twisted classes.
pub fn refined_trace(
    cover: &ObjectCover,
    complex: &EquivChainComplex,
    map: &EquivChainMap,
    classes: &TwistedClassSet,
) -> Result<ClassElement<Rational>> {
    let aut = cover.aut();
    let mut out = Combination::zero();
    for p in 0..complex.basis.len() {
        let tr = trace_projection(&map.diagonal_sum(p), &aut.pi_to_aut, aut.order(), classes)?;
        let sign = if p % 2 == 0 { Rational::one() } else { -Rational::one() };
        out.add_assign(&tr.scaled(&sign));
    }
    Ok(out)
}

pub fn to_integer(c: &ClassElement<Rational>) -> Result<ClassElement<i64>> {
    let mut out = Combination::zero();
    for (k, v) in c.iter() {
        if !v.is_integer() {
            return Err(Error::inconsistency("relative refined trace is not integral"));
        }
        out.add_term(k, v.to_integer());
    }
    Ok(out)
}

/// `chi(WH_x \ X^H(x), WH_x \ X^{>H}(x))` by counting orbits of cells.
pub fn orbit_euler_characteristic(x: &GComplex, object: &FundObject) -> i64 {
    let lifts: Vec<usize> = object.whx.iter().map(|&w| object.weyl.lift(w)).collect();
    let mut seen = alloc::collections::BTreeSet::new();
    let mut chi = 0;
    for sigma in object.component.iter() {
        if object.singular.contains(sigma) || seen.contains(sigma) {
            continue;
        }
        for &n in &lifts {
            seen.insert(ElementMap { complex: x, element: n }.simplex_image(sigma));
        }
        chi += if sigma.len() % 2 == 1 { 1 } else { -1 };
    }
    chi
}

/// Whether a class element is `n` times the sum of all classes for some `n`.
pub fn is_constant_on_classes<C: Coefficient>(c: &ClassElement<C>, classes: &TwistedClassSet) -> bool {
    let mut coeffs = classes.representatives().map(|r| c.coefficient(r));
    match coeffs.next() {
        None => true,
        Some(first) => coeffs.all(|v| v == first),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::complex::GSimplicialMap;
    use crate::cover::{ChainMode, EquivChainComplex, EquivChainMap};
    use crate::fundamental::objects;
    use std::println;

    fn lambda_all(entry: &catalog::CatalogEntry, map: &GSimplicialMap, modulus: usize) -> Vec<Option<ObjectLefschetz>> {
        let x = &entry.complex;
        let f = PreparedMap::new(x, map.clone()).unwrap();
        objects(x, 10_000)
            .unwrap()
            .iter()
            .map(|o| ObjectLefschetz::compute(x, &o.realized(modulus), &f).unwrap())
            .collect()
    }

    #[test]
    fn identity_gives_orbit_euler_characteristic() {
        for entry in [
            catalog::tetrahedron(),
            catalog::reflection_s2(),
            catalog::rotation_s2(),
            catalog::rp2(),
            catalog::free_s3(),
        ] {
            let x = &entry.complex;
            let f = PreparedMap::new(x, GSimplicialMap::identity(x.vertex_count())).unwrap();
            for o in objects(x, 10_000).unwrap() {
                let o = o.realized(7);
                let res = ObjectLefschetz::compute(x, &o, &f).unwrap().unwrap();
                let chi = orbit_euler_characteristic(x, &o);
                println!(
                    "{} H={} lambda={:?} Lq={:?}",
                    entry.name,
                    o.isotropy.order(),
                    res.lambda,
                    res.rational
                );
                assert_eq!(
                    res.lambda,
                    Combination::term(res.classes.representative(0), chi).retain_keys(|_| chi != 0)
                );
            }
        }
    }

    #[test]
    fn chain_complexes_are_consistent() {
        for entry in [
            catalog::reflection_s2(),
            catalog::rotation_s2(),
            catalog::rp2(),
            catalog::octahedron(),
        ] {
            let x = &entry.complex;
            for m in &entry.maps {
                let f = PreparedMap::new(x, m.map.clone()).unwrap();
                for o in objects(x, 10_000).unwrap() {
                    let cover = ObjectCover::new(x, &o.realized(5)).unwrap();
                    let Some(lift) = cover.lift_map(&f, 0).unwrap() else {
                        continue;
                    };
                    for mode in [ChainMode::Relative, ChainMode::Absolute] {
                        let c = EquivChainComplex::new(&cover, mode).unwrap();
                        assert!(
                            c.boundary_squared_is_zero(&cover.aut().group),
                            "{} {mode:?}",
                            entry.name
                        );
                        let fm = EquivChainMap::new(&cover, &c, &f, &lift).unwrap();
                        assert!(
                            fm.commutes(&c, &cover.aut().group, &lift.phi_prime),
                            "{} {} {mode:?}",
                            entry.name,
                            m.name
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn classical_values() {
        let oct = catalog::octahedron();
        let l = |name: &str| {
            let r = lambda_all(&oct, oct.map(name).unwrap(), 1);
            r[0].as_ref().unwrap().lefschetz_class()
        };
        assert_eq!(l("identity"), 2);
        assert_eq!(l("antipodal"), 0);
        assert_eq!(l("quarter turn"), 2);
        assert_eq!(l("degree two"), 3);
        assert_eq!(l("degree three"), 4);
        let rp2 = catalog::rp2();
        let r = lambda_all(&rp2, rp2.map("constant").unwrap(), 1);
        let r = r[0].as_ref().unwrap();
        assert_eq!(r.lambda.len(), 1);
        assert_eq!(r.lefschetz_class(), 1);
        assert_eq!(r.classes.len(), 1);
    }

    #[test]
    fn rotation_sphere_rational() {
        let e = catalog::rotation_s2();
        let r = lambda_all(&e, e.map("identity").unwrap(), 1);
        assert_eq!(r.len(), 3);
        for o in &r {
            let o = o.as_ref().unwrap();
            assert_eq!(crate::ring::augmentation(&o.rational), Rational::one());
        }
    }
}
