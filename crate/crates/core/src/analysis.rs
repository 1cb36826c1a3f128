//! The full pipeline: objects, per-object Lefschetz data, class maps along
//! morphisms, Nielsen invariants, bounds, Jiang conclusions and verdicts.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::complex::{CellularMap, GComplex, GSimplicialMap, GapCheck, PreparedMap};
use crate::error::{Error, Result};
use crate::fundamental::{morphism_witnesses, objects, preserves_component, transport_elements, FundObject};
use crate::jiang::{
    dichotomy, jiang_status, ClassCount, ConverseVerdict, DichotomyOutcome, JiangAssessment, JiangDeclarations,
};
use crate::lefschetz::{is_constant_on_classes, ObjectLefschetz};
use crate::nielsen::{minimum_cover, BitSet, Bound, FixedPointVerdict, DEFAULT_COVER_SEARCH_CAP};
use crate::ring::{ClassElement, Rational};

pub const DEFAULT_COSET_CAP: usize = 50_000;

#[derive(Clone, Debug)]
pub struct Options {
    pub coset_cap: usize,
    pub cover_search_cap: usize,
    pub jiang: JiangDeclarations,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            coset_cap: DEFAULT_COSET_CAP,
            cover_search_cap: DEFAULT_COVER_SEARCH_CAP,
            jiang: JiangDeclarations::default(),
        }
    }
}

pub type ObjectJob<'a> = dyn Fn(usize) -> Result<Option<ObjectLefschetz>> + Sync + 'a;

/// Runs the independent per-object computations.
pub trait Executor {
    fn run(&self, count: usize, job: &ObjectJob<'_>) -> Vec<Result<Option<ObjectLefschetz>>>;
}

/// Runs jobs one after another.
pub struct Sequential;

impl Executor for Sequential {
    fn run(&self, count: usize, job: &ObjectJob<'_>) -> Vec<Result<Option<ObjectLefschetz>>> {
        (0..count).map(job).collect()
    }
}

/// Fundamental group of an object as reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pi1Kind {
    Finite(usize),
    InfiniteCyclic,
}

/// Invariants at an object whose component the map preserves. Classes are
/// named by labels: the representative element index for a finite `pi1`,
/// the exponent of least absolute value (positive on ties) for `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectInvariants {
    pub lambda: Vec<(i64, i64)>,
    pub nu: Vec<(i64, i64)>,
    pub lq: Vec<(i64, Rational)>,
    pub lefschetz: i64,
    pub classes: ClassCount,
    pub surviving: ClassCount,
    pub n_lower: usize,
    pub n_upper: usize,
    pub m_lower: Bound,
    pub m_upper: Bound,
    pub dichotomy: DichotomyOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectSummary {
    pub id: usize,
    pub isotropy_order: usize,
    pub isotropy_class: usize,
    pub component_index: usize,
    /// Cell counts of the component by dimension.
    pub f_vector: Vec<usize>,
    pub pi1: Pi1Kind,
    pub whx_order: usize,
    pub gap: GapCheck,
    pub jiang: JiangAssessment,
    /// `None` when the map moves the component to another one.
    pub invariants: Option<ObjectInvariants>,
}

#[derive(Clone, Debug)]
pub struct Analysis {
    /// The quotient `Z/m` used for infinite cyclic fundamental groups.
    pub modulus: Option<usize>,
    pub objects: Vec<FundObject>,
    pub lefschetz: Vec<Option<ObjectLefschetz>>,
    /// `above[z][y]`: a morphism `z -> y` exists.
    pub above: Vec<Vec<bool>>,
    /// `class_maps[z][y][b]`: the class of `z` that class `b` of `y` is
    /// carried to, for applicable `z <= y`.
    pub class_maps: Vec<Vec<Option<Vec<usize>>>>,
    pub summaries: Vec<ObjectSummary>,
    pub verdict: FixedPointVerdict,
    pub converse: ConverseVerdict,
}

impl Analysis {
    pub fn gap_holds_everywhere(&self) -> bool {
        self.summaries.iter().all(|s| s.gap.holds())
    }

    /// Classes of object `i` hit from objects of strictly larger isotropy.
    pub fn removed_classes(&self, i: usize) -> BTreeSet<usize> {
        removed_classes(i, &self.above, &self.class_maps)
    }
}

/// Validates the input and runs the pipeline.
pub fn analyze(x: &GComplex, map: GSimplicialMap, options: &Options, exec: &dyn Executor) -> Result<Analysis> {
    if let Some((g, s)) = x.regularity_violation() {
        return Err(Error::input(alloc::format!(
            "action is not regular: element {g} maps simplex {s:?} to itself without fixing it"
        )));
    }
    let f = PreparedMap::new(x, map)?;
    let objs = objects(x, options.coset_cap)?;
    if !objs.iter().any(|o| o.pi1.is_infinite_cyclic()) {
        return analyze_realized(x, &f, objs, None, options, exec);
    }
    // agreement between Z/m and Z/2m shows that no class wrapped around
    let mut m = base_modulus(x, &objs, &f)?;
    let mut current = analyze_realized(x, &f, objs.clone(), Some(m), options, exec)?;
    for _ in 0..4 {
        let doubled = analyze_realized(x, &f, objs.clone(), Some(2 * m), options, exec)?;
        if doubled.summaries == current.summaries {
            return Ok(current);
        }
        m *= 2;
        current = doubled;
    }
    Err(Error::inconsistency(
        "invariants of an infinite cyclic object did not stabilize under larger quotients",
    ))
}

/// Degree of `f` on an infinite cyclic object it preserves.
fn cyclic_degree(object: &FundObject, f: &dyn CellularMap) -> Option<i64> {
    if !object.pi1.is_infinite_cyclic() || !preserves_component(object, f) {
        return None;
    }
    let (_, lp) = object.pi1.generating_loops().into_iter().next()?;
    let e = object.pi1.integer_walk(&lp)?;
    let image = object.pi1.integer_walk(&f.walk_image(&lp))?;
    Some(image / e)
}

/// A modulus compatible with every degree and induced map, large enough
/// that supports of the traces fit in the window `(-m/2, m/2]`.
fn base_modulus(x: &GComplex, objs: &[FundObject], f: &PreparedMap) -> Result<usize> {
    let mut base = 1usize;
    let mut max_deg = 1i64;
    let mut size = 1usize;
    for o in objs {
        if let Some(d) = cyclic_degree(o, f) {
            if d != 1 {
                base = base.lcm(&((d - 1).unsigned_abs() as usize));
            }
            max_deg = max_deg.max(d.abs());
        }
        if o.pi1.is_infinite_cyclic() {
            size = size.max(o.component.simplices(0).len());
        }
    }
    for y in objs.iter().filter(|o| o.pi1.is_infinite_cyclic()) {
        for z in objs.iter().filter(|o| !o.pi1.is_infinite_cyclic()) {
            for g in morphism_witnesses(x, z, y) {
                for (_, lp) in y.pi1.generating_loops() {
                    let e = y.pi1.integer_walk(&lp).unwrap_or(1).unsigned_abs() as usize;
                    let walk: Vec<usize> = lp.iter().map(|&v| x.act_vertex(g, v)).collect();
                    let a = z.pi1.walk(&walk);
                    base = base.lcm(&(z.pi1.group().element_order(a) * e.max(1)));
                }
            }
        }
    }
    // exponents in a trace are bounded by the image length of a tree path
    let reach = (size + 2) * (1 << f.subdivision().depth()) + 2;
    let window = (4 * reach * (max_deg as usize + 1)).max(16);
    Ok(base * window.div_ceil(base))
}

fn analyze_realized(
    x: &GComplex,
    f: &PreparedMap,
    objs: Vec<FundObject>,
    modulus: Option<usize>,
    options: &Options,
    exec: &dyn Executor,
) -> Result<Analysis> {
    let objs: Vec<FundObject> = match modulus {
        Some(m) => objs.iter().map(|o| o.realized(m)).collect(),
        None => objs,
    };
    let n = objs.len();
    let job = |i: usize| ObjectLefschetz::compute(x, &objs[i], f);
    let lefschetz: Vec<Option<ObjectLefschetz>> = exec.run(n, &job).into_iter().collect::<Result<_>>()?;
    let above: Vec<Vec<bool>> = (0..n)
        .map(|z| {
            (0..n)
                .map(|y| !morphism_witnesses(x, &objs[z], &objs[y]).is_empty())
                .collect()
        })
        .collect();
    // class maps between applicable objects, indexed [z][y]
    let mut class_maps: Vec<Vec<Option<Vec<usize>>>> = alloc::vec![alloc::vec![None; n]; n];
    for z in 0..n {
        for y in 0..n {
            if !above[z][y] {
                continue;
            }
            if let (Some(rz), Some(ry)) = (&lefschetz[z], &lefschetz[y]) {
                class_maps[z][y] = Some(induced_class_map(x, &objs[z], rz, &objs[y], ry, f)?);
            }
        }
    }
    let jiang = jiang_status(x, &objs, &options.jiang);
    let gaps: Vec<GapCheck> = objs.iter().map(|o| o.gap()).collect();
    let gap_all = gaps.iter().all(|g| g.holds());

    let mut summaries = Vec::with_capacity(n);
    for (i, o) in objs.iter().enumerate() {
        let invariants = match &lefschetz[i] {
            None => None,
            Some(res) => Some(object_invariants(
                i,
                o,
                res,
                &objs,
                &lefschetz,
                &above,
                &class_maps,
                &jiang[i],
                f,
                gap_all,
                options,
            )?),
        };
        summaries.push(ObjectSummary {
            id: o.id,
            isotropy_order: o.isotropy.order(),
            isotropy_class: o.isotropy_class,
            component_index: o.component_index,
            f_vector: f_vector(o),
            pi1: if o.pi1.is_infinite_cyclic() {
                Pi1Kind::InfiniteCyclic
            } else {
                Pi1Kind::Finite(o.pi1.order())
            },
            whx_order: o.whx_order(),
            gap: gaps[i],
            jiang: jiang[i].clone(),
            invariants,
        });
    }
    let lambda_nonzero: Vec<usize> = summaries
        .iter()
        .filter(|s| s.invariants.as_ref().is_some_and(|v| !v.lambda.is_empty()))
        .map(|s| s.id)
        .collect();
    let gap_failures: Vec<usize> = summaries.iter().filter(|s| !s.gap.holds()).map(|s| s.id).collect();
    let l_nonzero: Vec<usize> = summaries
        .iter()
        .filter(|s| s.invariants.as_ref().is_some_and(|v| v.lefschetz != 0))
        .map(|s| s.id)
        .collect();
    let not_jiang: Vec<usize> = summaries
        .iter()
        .filter(|s| !s.jiang.status.is_jiang())
        .map(|s| s.id)
        .collect();
    Ok(Analysis {
        modulus,
        verdict: FixedPointVerdict::new(&lambda_nonzero, &gap_failures),
        converse: ConverseVerdict::new(l_nonzero, not_jiang, gap_failures),
        objects: objs,
        lefschetz,
        above,
        class_maps,
        summaries,
    })
}

fn f_vector(o: &FundObject) -> Vec<usize> {
    let dim = o.component.dim().map_or(0, |d| d + 1);
    (0..dim).map(|p| o.component.simplices(p).len()).collect()
}

/// For a morphism `z -> y`, the class of `z` each class of `y` is carried to.
/// Checks that the map is constant on classes and the same for every witness.
pub fn induced_class_map(
    x: &GComplex,
    z: &FundObject,
    rz: &ObjectLefschetz,
    y: &FundObject,
    ry: &ObjectLefschetz,
    f: &PreparedMap,
) -> Result<Vec<usize>> {
    let mut out: Option<Vec<usize>> = None;
    for g in morphism_witnesses(x, z, y) {
        let elements = transport_elements(x, z, y, g, f)?;
        let mut map = alloc::vec![usize::MAX; ry.classes.len()];
        for (b, &a) in elements.iter().enumerate() {
            let cb = ry.classes.class_index(b);
            let ca = rz.classes.class_index(a);
            if map[cb] == usize::MAX {
                map[cb] = ca;
            } else if map[cb] != ca {
                return Err(Error::inconsistency(alloc::format!(
                    "class map from object {} to object {} is not constant on classes",
                    y.id,
                    z.id
                )));
            }
        }
        match &out {
            None => out = Some(map),
            Some(prev) if *prev != map => {
                return Err(Error::inconsistency(alloc::format!(
                    "class map from object {} to object {} depends on the morphism representative",
                    y.id,
                    z.id
                )))
            }
            Some(_) => {}
        }
    }
    out.ok_or_else(|| Error::inconsistency("class map requested without a morphism"))
}

/// Whether the object's classes are infinite in number: `pi1 = Z` with
/// `f` of degree one.
fn has_infinitely_many_classes(o: &FundObject, f: &PreparedMap) -> bool {
    cyclic_degree(o, f) == Some(1)
}

/// Reporting label of the class with index `c`.
pub fn class_label(o: &FundObject, res: &ObjectLefschetz, c: usize) -> i64 {
    let class = &res.classes.classes()[c];
    if o.pi1.is_infinite_cyclic() {
        class
            .iter()
            .map(|&e| o.pi1.exponent(e).expect("realized cyclic group"))
            .min_by_key(|&k| (k.unsigned_abs(), k < 0))
            .expect("classes are non-empty")
    } else {
        class[0] as i64
    }
}

fn labeled<C: crate::ring::Coefficient>(o: &FundObject, res: &ObjectLefschetz, c: &ClassElement<C>) -> Vec<(i64, C)> {
    let mut v: Vec<(i64, C)> = c
        .iter()
        .map(|(rep, coeff)| (class_label(o, res, res.classes.class_index(rep)), coeff.clone()))
        .collect();
    v.sort_by_key(|(k, _)| *k);
    v
}

fn removed_classes(i: usize, above: &[Vec<bool>], class_maps: &[Vec<Option<Vec<usize>>>]) -> BTreeSet<usize> {
    let mut removed = BTreeSet::new();
    for y in 0..above.len() {
        if y != i && above[i][y] {
            if let Some(map) = &class_maps[i][y] {
                removed.extend(map.iter().copied());
            }
        }
    }
    removed
}

#[allow(clippy::too_many_arguments)]
fn object_invariants(
    i: usize,
    o: &FundObject,
    res: &ObjectLefschetz,
    objs: &[FundObject],
    lefschetz: &[Option<ObjectLefschetz>],
    above: &[Vec<bool>],
    class_maps: &[Vec<Option<Vec<usize>>>],
    jiang: &JiangAssessment,
    f: &PreparedMap,
    gap_all: bool,
    options: &Options,
) -> Result<ObjectInvariants> {
    let removed = removed_classes(i, above, class_maps);
    let nu = res
        .lambda
        .retain_keys(|rep| !removed.contains(&res.classes.class_index(rep)));
    let infinite = has_infinitely_many_classes(o, f);
    let classes = if infinite {
        ClassCount::Infinite
    } else {
        ClassCount::Finite(res.classes.len())
    };
    let surviving = if infinite {
        ClassCount::Infinite
    } else {
        ClassCount::Finite(res.classes.len() - removed.len())
    };
    let n_lower = nu.len();
    let n_upper = upper_nielsen(i, objs, lefschetz, above, class_maps, options.cover_search_cap)?;
    let lefschetz_number = res.lefschetz_class();
    let outcome = dichotomy(
        jiang,
        lefschetz_number,
        res.lambda.is_zero(),
        is_constant_on_classes(&res.lambda, &res.classes),
        surviving,
        n_lower,
    );
    Ok(ObjectInvariants {
        lambda: labeled(o, res, &res.lambda),
        nu: labeled(o, res, &nu),
        lq: labeled(o, res, &res.rational),
        lefschetz: lefschetz_number,
        classes,
        surviving,
        n_lower,
        n_upper,
        m_lower: Bound::new(n_lower, gap_all),
        m_upper: Bound::new(n_upper, gap_all),
        dichotomy: outcome,
    })
}

/// `N^G` at object `x`: the fewest classes at objects above `x` that reach
/// every essential rational class at every object above `x`.
fn upper_nielsen(
    x: usize,
    objs: &[FundObject],
    lefschetz: &[Option<ObjectLefschetz>],
    above: &[Vec<bool>],
    class_maps: &[Vec<Option<Vec<usize>>>],
    cap: usize,
) -> Result<usize> {
    let n = objs.len();
    let ups: Vec<usize> = (0..n).filter(|&z| above[x][z] && lefschetz[z].is_some()).collect();
    let mut targets: Vec<(usize, usize)> = Vec::new();
    for &z in &ups {
        let res = lefschetz[z].as_ref().unwrap();
        for (rep, _) in res.rational.iter() {
            targets.push((z, res.classes.class_index(rep)));
        }
    }
    let mut candidates = Vec::new();
    for &y in &ups {
        let count = lefschetz[y].as_ref().unwrap().classes.len();
        for beta in 0..count {
            let mut s = BitSet::new(targets.len());
            for (t, &(z, alpha)) in targets.iter().enumerate() {
                if let Some(map) = &class_maps[z][y] {
                    if map[beta] == alpha {
                        s.insert(t);
                    }
                }
            }
            candidates.push(s);
        }
    }
    minimum_cover(targets.len(), &candidates, cap)?
        .ok_or_else(|| Error::inconsistency("essential classes cannot be covered by their own classes"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use std::println;

    fn run(entry: &catalog::CatalogEntry, name: &str) -> Analysis {
        let options = Options {
            jiang: JiangDeclarations {
                quotient_is_jiang: entry.quotient_is_jiang,
                ..Default::default()
            },
            ..Default::default()
        };
        analyze(&entry.complex, entry.map(name).unwrap().clone(), &options, &Sequential).unwrap()
    }

    #[test]
    fn catalog_sweep() {
        for entry in catalog::all() {
            for m in &entry.maps {
                let a = run(&entry, &m.name);
                println!("== {} / {} modulus {:?}", entry.name, m.name, a.modulus);
                for s in &a.summaries {
                    match &s.invariants {
                        None => println!("  obj {} |H|={} n/a", s.id, s.isotropy_order),
                        Some(v) => println!(
                            "  obj {} |H|={} pi1={:?} lambda={:?} nu={:?} L={} Lq={:?} NG={} NU={} classes={:?} surv={:?} gap={} jiang={:?} dich={:?}",
                            s.id, s.isotropy_order, s.pi1, v.lambda, v.nu, v.lefschetz, v.lq, v.n_lower, v.n_upper,
                            v.classes, v.surviving, s.gap.holds(), s.jiang.status, v.dichotomy
                        ),
                    }
                }
                println!("  verdict: {}", a.verdict.render());
                println!("  converse: {}", a.converse.render());
            }
        }
    }
}
