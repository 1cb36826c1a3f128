//! Independent recomputations used to cross-check the engine: rational
//! homology Lefschetz numbers, a full-matrix Reidemeister trace over an
//! explicitly path-lifted cover, and assembly of the invariants from
//! hand-supplied smooth fixed-point data.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::analysis::Analysis;
use crate::complex::{GComplex, PreparedMap, Simplex, Subcomplex};
use crate::error::{Error, Result};
use crate::fundamental::FundObject;
use crate::lefschetz::ObjectLefschetz;
use crate::perm::sorting_sign;
use crate::ring::{ClassElement, Combination, Rational};

/// Default bound on `|pi1| * cells` for the brute-force trace.
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 5000;

type Sparse = BTreeMap<usize, Rational>;

/// Image of an oriented `p`-simplex of `x` under `f o Sd^k`, as a chain of
/// sorted simplices.
fn chain_image(f: &PreparedMap, sigma: &[usize]) -> BTreeMap<Simplex, i64> {
    let mut out: BTreeMap<Simplex, i64> = BTreeMap::new();
    for (tau, c) in f.subdivision().subdivide_chain(sigma) {
        let img: Vec<usize> = tau.iter().map(|&w| f.apply(w)).collect();
        let Some(sign) = sorting_sign(&img) else { continue };
        let mut sorted = img;
        sorted.sort_unstable();
        *out.entry(sorted).or_insert(0) += c * sign;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn top(v: &Sparse) -> Option<usize> {
    v.keys().next_back().copied()
}

fn add(v: &mut Sparse, k: usize, x: Rational) {
    let e = v.entry(k).or_insert_with(Rational::zero);
    *e += x;
    if e.is_zero() {
        v.remove(&k);
    }
}

/// `v += c * w`.
fn axpy(v: &mut Sparse, c: Rational, w: &Sparse) {
    for (&k, &x) in w {
        add(v, k, c * x);
    }
}

/// Column reduction: reduced non-zero columns keyed by their lowest entry
/// (largest row index), and for every column reducing to zero the
/// combination of original columns that produced it.
struct Reduction {
    pivots: BTreeMap<usize, Sparse>,
    cycles: Vec<(usize, Sparse)>,
}

fn reduce(columns: Vec<Sparse>) -> Reduction {
    let mut pivots: BTreeMap<usize, (Sparse, Sparse)> = BTreeMap::new();
    let mut cycles = Vec::new();
    for (j, mut r) in columns.into_iter().enumerate() {
        let mut v: Sparse = [(j, Rational::one())].into_iter().collect();
        loop {
            match top(&r) {
                None => {
                    cycles.push((j, v));
                    break;
                }
                Some(l) => match pivots.get(&l) {
                    Some((pr, pv)) => {
                        let c = -r[&l] / pr[&l];
                        axpy(&mut r, c, pr);
                        axpy(&mut v, c, pv);
                    }
                    None => {
                        pivots.insert(l, (r, v));
                        break;
                    }
                },
            }
        }
    }
    Reduction {
        pivots: pivots.into_iter().map(|(l, (r, _))| (l, r)).collect(),
        cycles,
    }
}

/// Lefschetz number of `f` on a subcomplex it maps into itself, from traces
/// on rational homology. Cycles and boundaries come from sparse column
/// reduction of the boundary matrices; every cycle has a unique expansion
/// in the basis made of one reduced boundary or essential cycle per lowest
/// index, and the trace on `H_p` reads the essential coefficients.
pub fn homology_lefschetz(k: &Subcomplex, f: &PreparedMap) -> Result<i64> {
    let Some(dim) = k.dim() else { return Ok(0) };
    let boundary = |p: usize| -> Vec<Sparse> {
        k.simplices(p)
            .iter()
            .map(|s| {
                let mut col = Sparse::new();
                if p > 0 {
                    for i in 0..s.len() {
                        let mut face = s.clone();
                        face.remove(i);
                        let r = k.position(&face).expect("subcomplexes are closed");
                        let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
                        add(&mut col, r, sign);
                    }
                }
                col
            })
            .collect()
    };
    let mut reductions: Vec<Reduction> = (0..=dim).map(|p| reduce(boundary(p))).collect();
    reductions.push(Reduction {
        pivots: BTreeMap::new(),
        cycles: Vec::new(),
    });
    let mut total = Rational::zero();
    for p in 0..=dim {
        let bounds = &reductions[p + 1].pivots;
        let cycles = &reductions[p].cycles;
        // basis of Z_p indexed by lowest entry
        let mut basis: BTreeMap<usize, &Sparse> = BTreeMap::new();
        let mut essential = BTreeSet::new();
        for (j, v) in cycles {
            match bounds.get(j) {
                Some(b) => basis.insert(*j, b),
                None => {
                    essential.insert(*j);
                    basis.insert(*j, v)
                }
            };
        }
        let mut tr = Rational::zero();
        for (j, v) in cycles.iter().filter(|(j, _)| essential.contains(j)) {
            let mut w = Sparse::new();
            for (&i, &c) in v {
                for (t, e) in chain_image(f, &k.simplices(p)[i]) {
                    let r = k
                        .position(&t)
                        .ok_or_else(|| Error::input("map does not preserve the subcomplex"))?;
                    add(&mut w, r, c * Rational::from_integer(e));
                }
            }
            while let Some(l) = top(&w) {
                let b = basis
                    .get(&l)
                    .ok_or_else(|| Error::inconsistency("image of a cycle is not a cycle"))?;
                let c = w[&l] / b[&l];
                if l == *j {
                    tr += c;
                }
                axpy(&mut w, -c, b);
            }
        }
        if p % 2 == 0 {
            total += tr;
        } else {
            total -= tr;
        }
    }
    if !total.is_integer() {
        return Err(Error::inconsistency("homology Lefschetz number is not an integer"));
    }
    Ok(total.to_integer())
}

/// `L_G(f)` at an object as the identity coefficient of the `Z[WH_x]`
/// trace on the pair `(X^H(x), X^{>H}(x))`, read off one cell per orbit with
/// no cover involved.
pub fn orbit_lefschetz(x: &GComplex, object: &FundObject, f: &PreparedMap) -> Result<i64> {
    let lifts: Vec<usize> = object.whx.iter().map(|&w| object.weyl.lift(w)).collect();
    let mut seen = BTreeSet::new();
    let mut total = 0i64;
    for sigma in object.component.iter() {
        if object.singular.contains(sigma) || seen.contains(sigma) {
            continue;
        }
        for &n in &lifts {
            seen.insert(x.act_simplex(n, sigma));
        }
        let c = chain_image(f, sigma).get(sigma).copied().unwrap_or(0);
        total += if sigma.len() % 2 == 1 { c } else { -c };
    }
    Ok(total)
}

/// `lambda_G(f)` at an object by brute force: the cover of the subdivided
/// component is built by path lifting, the lift of `f` by breadth-first
/// continuation from the basepoint, and the trace is read off the full
/// matrix on all relative cells before projecting to twisted classes.
pub fn brute_force_reidemeister(
    object: &FundObject,
    res: &ObjectLefschetz,
    f: &PreparedMap,
    cap: usize,
) -> Result<ClassElement<i64>> {
    let pi1 = &object.pi1;
    let pi = pi1.group();
    let cells: Vec<&Simplex> = object
        .component
        .iter()
        .filter(|s| !object.singular.contains(s))
        .collect();
    let size = pi.order() * cells.len();
    if size > cap {
        return Err(Error::OracleCapExceeded { size, cap });
    }
    let sd = f.subdivision();
    let low = |w: usize| sd.carrier(w)[0];
    let in_component = |w: usize| object.component.contains(sd.carrier(w));
    // lift of f on (sd vertex, sheet), continued along edges of the subdivision
    let mut neighbours: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in sd.complex().simplices(1) {
        if in_component(e[0]) && in_component(e[1]) {
            neighbours.entry(e[0]).or_default().push(e[1]);
            neighbours.entry(e[1]).or_default().push(e[0]);
        }
    }
    let start = sd.vertex_of(object.basepoint);
    let mut lift: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    lift.insert((start, 0), (f.apply(start), 0));
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some((w, g)) = queue.pop_front() {
        let (fw, h) = lift[&(w, g)];
        for &u in neighbours.get(&w).map(Vec::as_slice).unwrap_or(&[]) {
            let gu = pi.mul(g, pi1.edge(low(w), low(u)));
            let fu = f.apply(u);
            let image = (fu, pi.mul(h, pi1.edge(fw, fu)));
            match lift.get(&(u, gu)) {
                None => {
                    lift.insert((u, gu), image);
                    queue.push_back((u, gu));
                }
                Some(&prev) if prev != image => {
                    return Err(Error::inconsistency("path lifting of the map is not well defined"));
                }
                Some(_) => {}
            }
        }
    }
    let mut per_element: BTreeMap<usize, i64> = BTreeMap::new();
    for sigma in &cells {
        let chain = sd.subdivide_chain(sigma);
        for s in 0..pi.order() {
            let mut image: BTreeMap<(Simplex, usize), i64> = BTreeMap::new();
            for (tau, c) in &chain {
                let verts: Vec<(usize, usize)> = tau
                    .iter()
                    .map(|&w| {
                        let sheet = pi.mul(s, pi1.edge(sigma[0], low(w)));
                        lift.get(&(w, sheet))
                            .copied()
                            .ok_or_else(|| Error::inconsistency("cover of the subdivision is not connected"))
                    })
                    .collect::<Result<_>>()?;
                let base: Vec<usize> = verts.iter().map(|v| v.0).collect();
                let Some(sign) = sorting_sign(&base) else { continue };
                let mut sorted = verts.clone();
                sorted.sort_unstable();
                let rho: Simplex = sorted.iter().map(|v| v.0).collect();
                let sheet = sorted[0].1;
                if sorted.iter().any(|&(v, g)| g != pi.mul(sheet, pi1.edge(rho[0], v))) {
                    return Err(Error::inconsistency("lifted image is not a cover simplex"));
                }
                if object.singular.contains(&rho) {
                    continue;
                }
                *image.entry((rho, sheet)).or_insert(0) += c * sign;
            }
            for ((rho, h), c) in image {
                if rho == **sigma && c != 0 {
                    let parity = if sigma.len() % 2 == 1 { 1 } else { -1 };
                    *per_element.entry(pi.mul(h, pi.inv(s))).or_insert(0) += parity * c;
                }
            }
        }
    }
    let aut_order = (pi.order() * object.whx_order()) as i64;
    let mut out = Combination::zero();
    let mut per_class: BTreeMap<usize, i64> = BTreeMap::new();
    for (d, c) in per_element {
        *per_class.entry(res.classes.representative(d)).or_insert(0) += c;
    }
    for (rep, c) in per_class {
        if c % aut_order != 0 {
            return Err(Error::inconsistency("brute-force trace is not divisible by |Aut(x)|"));
        }
        out.add_term(rep, c / aut_order);
    }
    Ok(out)
}

/// A fixed point orbit of a smooth map in the homotopy class, as annotated
/// by hand. `sign` is the sign of `det(id - T_z f)` on the tangent space of
/// the fixed set of the object it is listed at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointDatum {
    pub label: String,
    /// `|G_z|`.
    pub isotropy: usize,
    pub object: usize,
    /// Closed vertex walk at the object's basepoint representing `alpha_z`.
    pub walk: Vec<usize>,
    pub sign: i64,
    /// `|(WH_x)_z|`.
    pub whz_order: usize,
}

fn datum_class(analysis: &Analysis, d: &FixedPointDatum) -> Result<(usize, usize)> {
    let o = analysis
        .objects
        .get(d.object)
        .ok_or_else(|| Error::input(alloc::format!("fixed point {}: no object {}", d.label, d.object)))?;
    let res = analysis.lefschetz[d.object].as_ref().ok_or_else(|| {
        Error::input(alloc::format!(
            "fixed point {}: the map does not preserve object {}",
            d.label,
            d.object
        ))
    })?;
    let closed = d.walk.is_empty() || (d.walk.first() == Some(&o.basepoint) && d.walk.last() == Some(&o.basepoint));
    if !closed {
        return Err(Error::input(alloc::format!(
            "fixed point {}: loop must start and end at vertex {}",
            d.label,
            o.basepoint
        )));
    }
    for p in d.walk.windows(2) {
        let mut e = alloc::vec![p[0], p[1]];
        e.sort_unstable();
        e.dedup();
        if !o.component.contains(&e) {
            return Err(Error::input(alloc::format!(
                "fixed point {}: step {} -> {} is not an edge of the component",
                d.label,
                p[0],
                p[1]
            )));
        }
    }
    Ok((d.object, res.classes.representative(o.pi1.walk(&d.walk))))
}

fn validate(analysis: &Analysis, data: &[FixedPointDatum]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for d in data {
        if !seen.insert(d.label.as_str()) {
            return Err(Error::input(alloc::format!("duplicate fixed point label {}", d.label)));
        }
        if d.sign != 1 && d.sign != -1 {
            return Err(Error::input(alloc::format!(
                "fixed point {}: sign must be +1 or -1",
                d.label
            )));
        }
        let o = analysis
            .objects
            .get(d.object)
            .ok_or_else(|| Error::input(alloc::format!("fixed point {}: no object {}", d.label, d.object)))?;
        if d.isotropy == 0 || d.isotropy % o.isotropy.order() != 0 {
            return Err(Error::input(alloc::format!(
                "fixed point {}: isotropy order {} is not a multiple of |H| = {}",
                d.label,
                d.isotropy,
                o.isotropy.order()
            )));
        }
        if d.whz_order == 0 || o.whx_order() % d.whz_order != 0 {
            return Err(Error::input(alloc::format!(
                "fixed point {}: |(WH_x)_z| = {} does not divide |WH_x| = {}",
                d.label,
                d.whz_order,
                o.whx_order()
            )));
        }
    }
    Ok(())
}

/// `sum s_z [alpha_z]` per object over fixed points whose isotropy is exactly
/// the object's, with classes hit from larger isotropy set to zero.
pub fn assemble_nu(analysis: &Analysis, data: &[FixedPointDatum]) -> Result<Vec<ClassElement<i64>>> {
    validate(analysis, data)?;
    let mut out = alloc::vec![Combination::zero(); analysis.objects.len()];
    for d in data {
        if d.isotropy != analysis.objects[d.object].isotropy.order() {
            continue;
        }
        let (i, rep) = datum_class(analysis, d)?;
        let res = analysis.lefschetz[i].as_ref().expect("checked by datum_class");
        if !analysis.removed_classes(i).contains(&res.classes.class_index(rep)) {
            out[i].add_term(rep, d.sign);
        }
    }
    Ok(out)
}

/// `sum |(WH_x)_z|^{-1} s_z [alpha_z]` per object over all listed fixed points.
pub fn assemble_lq(analysis: &Analysis, data: &[FixedPointDatum]) -> Result<Vec<ClassElement<Rational>>> {
    validate(analysis, data)?;
    let mut out = alloc::vec![Combination::zero(); analysis.objects.len()];
    for d in data {
        let (i, rep) = datum_class(analysis, d)?;
        out[i].add_term(rep, Rational::new(d.sign, d.whz_order as i64));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{analyze, Options, Sequential};
    use crate::catalog;
    use crate::complex::GComplex;
    use crate::fundamental::objects;

    #[test]
    fn homology_examples() {
        let oct = catalog::octahedron();
        let x = &oct.complex;
        let l = |name: &str| {
            homology_lefschetz(x.all(), &PreparedMap::new(x, oct.map(name).unwrap().clone()).unwrap()).unwrap()
        };
        assert_eq!(l("identity"), 2);
        assert_eq!(l("antipodal"), 0);
        assert_eq!(l("degree two"), 3);
        assert_eq!(l("degree three"), 4);
        let s3 = catalog::sixteen_cell();
        let f = PreparedMap::new(&s3.complex, s3.map("degree two").unwrap().clone()).unwrap();
        assert_eq!(homology_lefschetz(s3.complex.all(), &f).unwrap(), -1);
        let rp2 = catalog::rp2();
        let f = PreparedMap::new(&rp2.complex, rp2.map("identity").unwrap().clone()).unwrap();
        assert_eq!(homology_lefschetz(rp2.complex.all(), &f).unwrap(), 1);
    }

    #[test]
    fn brute_force_matches_engine_on_catalog() {
        for entry in catalog::all() {
            for m in &entry.maps {
                let a = analyze(&entry.complex, m.map.clone(), &Options::default(), &Sequential).unwrap();
                let f = PreparedMap::new(&entry.complex, m.map.clone()).unwrap();
                for (o, res) in a.objects.iter().zip(&a.lefschetz) {
                    let Some(res) = res else { continue };
                    match brute_force_reidemeister(o, res, &f, DEFAULT_BRUTE_FORCE_CAP) {
                        Ok(b) => assert_eq!(b, res.lambda, "{} {} object {}", entry.name, m.name, o.id),
                        Err(Error::OracleCapExceeded { .. }) => {}
                        Err(e) => panic!("{} {}: {e}", entry.name, m.name),
                    }
                }
            }
        }
    }

    #[test]
    fn orbit_lefschetz_is_augmentation() {
        for entry in catalog::all() {
            for m in &entry.maps {
                let a = analyze(&entry.complex, m.map.clone(), &Options::default(), &Sequential).unwrap();
                let f = PreparedMap::new(&entry.complex, m.map.clone()).unwrap();
                for (o, res) in a.objects.iter().zip(&a.lefschetz) {
                    let Some(res) = res else { continue };
                    let l = orbit_lefschetz(&entry.complex, o, &f).unwrap();
                    assert_eq!(l, res.lefschetz_class(), "{} {} object {}", entry.name, m.name, o.id);
                }
            }
        }
    }

    #[test]
    fn brute_force_cap() {
        let e = catalog::rp2();
        let x: &GComplex = &e.complex;
        let f = PreparedMap::new(x, e.map("identity").unwrap().clone()).unwrap();
        let o = &objects(x, 1000).unwrap()[0];
        let res = ObjectLefschetz::compute(x, o, &f).unwrap().unwrap();
        assert!(matches!(
            brute_force_reidemeister(o, &res, &f, 10),
            Err(Error::OracleCapExceeded { .. })
        ));
    }

    fn datum(label: &str, isotropy: usize, object: usize, sign: i64, whz_order: usize, base: usize) -> FixedPointDatum {
        FixedPointDatum {
            label: label.into(),
            isotropy,
            object,
            walk: alloc::vec![base],
            sign,
            whz_order,
        }
    }

    #[test]
    fn smooth_data_on_spheres() {
        // rotation about the axis through the two poles, perturbed by a small rotation
        let e = catalog::rotation_s2();
        let a = analyze(
            &e.complex,
            e.map("identity").unwrap().clone(),
            &Options::default(),
            &Sequential,
        )
        .unwrap();
        let b: Vec<usize> = a.objects.iter().map(|o| o.basepoint).collect();
        let data = [
            datum("N", 2, 0, 1, 1, b[0]),
            datum("S", 2, 1, 1, 1, b[1]),
            datum("N in S2", 2, 2, 1, 2, b[2]),
            datum("S in S2", 2, 2, 1, 2, b[2]),
        ];
        let lq = assemble_lq(&a, &data).unwrap();
        let nu = assemble_nu(&a, &data).unwrap();
        for (i, r) in a.lefschetz.iter().enumerate() {
            let r = r.as_ref().unwrap();
            assert_eq!(lq[i], r.rational);
            assert_eq!(nu[i].len(), a.summaries[i].invariants.as_ref().unwrap().n_lower);
        }
        let dup = [datum("N", 2, 0, 1, 1, b[0]), datum("N", 2, 1, 1, 1, b[1])];
        assert!(matches!(assemble_nu(&a, &dup), Err(Error::Input(_))));
    }
}
