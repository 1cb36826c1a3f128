//! Objects of the fundamental category: fixed-set components up to the Weyl
//! group action, their fundamental groups, and morphisms between them.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec::Vec;

use crate::complex::Simplex;
use crate::complex::{CellularMap, ElementMap, GComplex, GapCheck, Subcomplex};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom, Subgroup, WeylGroup};
use crate::todd_coxeter::{free_reduce, todd_coxeter, Presentation, Word};

/// The edge-path group of a connected complex, realized as a finite group.
///
/// Each oriented edge `u -> v` carries the element represented by the loop
/// `T_u * (u, v) * T_v^{-1}`, where `T_u` is the spanning-tree path from the
/// basepoint to `u`. A walk evaluates to the product of its edge values.
///
/// An infinite cyclic group is kept as integer edge values and realized
/// through a finite quotient `Z/m` (see [`EdgePathGroup::realized`]); every
/// `mZ` is characteristic, so deck, Weyl and map lifts all descend to it.
#[derive(Clone, Debug)]
pub struct EdgePathGroup {
    group: FiniteGroup,
    basepoint: usize,
    parent: BTreeMap<usize, usize>,
    edge_value: BTreeMap<(usize, usize), usize>,
    /// Non-tree edges `(u, v)`, `u < v`, in presentation order.
    generators: Vec<(usize, usize)>,
    /// Exponents of the edge values when the group is infinite cyclic.
    integer_edges: Option<BTreeMap<(usize, usize), i64>>,
    /// `Some(m)` when `group` is the quotient `Z/m` of an infinite cyclic group.
    modulus: Option<usize>,
}

impl EdgePathGroup {
    /// Fails with [`Error::CosetOverflow`] when the group does not close up
    /// within `cap` cosets and is not recognizably infinite cyclic. Infinite
    /// cyclic groups start out realized by the trivial quotient.
    pub fn new(component: &Subcomplex, coset_cap: usize) -> Result<Self> {
        let verts = component.vertices();
        let basepoint = *verts
            .first()
            .ok_or_else(|| Error::input("empty component has no fundamental group"))?;
        let mut adj: BTreeMap<usize, Vec<usize>> = verts.iter().map(|&v| (v, Vec::new())).collect();
        for e in component.simplices(1) {
            adj.get_mut(&e[0]).unwrap().push(e[1]);
            adj.get_mut(&e[1]).unwrap().push(e[0]);
        }
        let mut parent = BTreeMap::new();
        parent.insert(basepoint, basepoint);
        let mut queue = VecDeque::from([basepoint]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[&u] {
                if let alloc::collections::btree_map::Entry::Vacant(e) = parent.entry(v) {
                    e.insert(u);
                    queue.push_back(v);
                }
            }
        }
        if parent.len() != verts.len() {
            return Err(Error::input("component is not connected"));
        }
        let is_tree = |u: usize, v: usize| parent[&v] == u || parent[&u] == v;
        let mut generators = Vec::new();
        let mut letter: BTreeMap<(usize, usize), i32> = BTreeMap::new();
        for e in component.simplices(1) {
            if !is_tree(e[0], e[1]) {
                generators.push((e[0], e[1]));
                letter.insert((e[0], e[1]), generators.len() as i32);
            }
        }
        let word =
            |u: usize, v: usize| -> Vec<i32> { letter.get(&(u, v)).map(|&l| alloc::vec![l]).unwrap_or_default() };
        let relators = component
            .simplices(2)
            .iter()
            .map(|t| {
                let mut r = word(t[0], t[1]);
                r.extend(word(t[1], t[2]));
                r.extend(word(t[0], t[2]).iter().map(|l| -l));
                r
            })
            .filter(|r| !r.is_empty())
            .collect();
        let presentation = Presentation {
            generators: generators.len(),
            relators,
        };
        let (small, words) = presentation.simplify();
        let edge_word = |e: &Simplex| -> Option<&Word> { letter.get(&(e[0], e[1])).map(|&l| &words[(l - 1) as usize]) };
        let infinite_cyclic = small.generators == 1 && small.relators.iter().all(|r| free_reduce(r).is_empty());
        if infinite_cyclic {
            let integer_edges = component
                .simplices(1)
                .iter()
                .map(|e| {
                    let k = edge_word(e).map_or(0, |w| w.iter().map(|l| l.signum() as i64).sum());
                    ((e[0], e[1]), k)
                })
                .collect();
            let mut out = EdgePathGroup {
                group: FiniteGroup::trivial(),
                basepoint,
                parent,
                edge_value: BTreeMap::new(),
                generators,
                integer_edges: Some(integer_edges),
                modulus: None,
            };
            out.realize(1);
            return Ok(out);
        }
        let presented = todd_coxeter(&small, coset_cap)?;
        let edge_value = component
            .simplices(1)
            .iter()
            .map(|e| {
                let value = edge_word(e).map_or(FiniteGroup::IDENTITY, |w| presented.evaluate(w));
                ((e[0], e[1]), value)
            })
            .collect();
        Ok(EdgePathGroup {
            group: presented.group,
            basepoint,
            parent,
            edge_value,
            generators,
            integer_edges: None,
            modulus: None,
        })
    }

    fn realize(&mut self, modulus: usize) {
        let group = crate::group::small::cyclic(modulus);
        let mut powers = alloc::vec![FiniteGroup::IDENTITY; modulus];
        if modulus > 1 {
            let g = group.generator_indices()[0];
            for k in 1..modulus {
                powers[k] = group.mul(powers[k - 1], g);
            }
        }
        let ints = self.integer_edges.as_ref().expect("infinite cyclic");
        self.edge_value = ints
            .iter()
            .map(|(&e, &k)| (e, powers[k.rem_euclid(modulus as i64) as usize]))
            .collect();
        self.group = group;
        self.modulus = Some(modulus);
    }

    /// The quotient by `modulus * Z` of an infinite cyclic group; finite
    /// groups are returned unchanged.
    pub fn realized(&self, modulus: usize) -> Self {
        let mut out = self.clone();
        if self.integer_edges.is_some() {
            out.realize(modulus.max(1));
        }
        out
    }

    pub fn is_infinite_cyclic(&self) -> bool {
        self.integer_edges.is_some()
    }

    /// The modulus of the current quotient of an infinite cyclic group.
    pub fn modulus(&self) -> Option<usize> {
        self.modulus
    }

    /// Exponent of a walk in an infinite cyclic group.
    pub fn integer_walk(&self, walk: &[usize]) -> Option<i64> {
        let ints = self.integer_edges.as_ref()?;
        Some(
            walk.windows(2)
                .map(|p| match p[0].cmp(&p[1]) {
                    core::cmp::Ordering::Less => ints[&(p[0], p[1])],
                    core::cmp::Ordering::Greater => -ints[&(p[1], p[0])],
                    core::cmp::Ordering::Equal => 0,
                })
                .sum(),
        )
    }

    /// Signed exponent in `(-m/2, m/2]` of an element of a realized quotient `Z/m`.
    pub fn exponent(&self, element: usize) -> Option<i64> {
        let m = self.modulus? as i64;
        let p = self.group.element(element).apply(0) as i64;
        Some(if 2 * p > m { p - m } else { p })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    /// Value of the oriented edge `u -> v`; the identity when `u == v`.
    pub fn edge(&self, u: usize, v: usize) -> usize {
        if u == v {
            return FiniteGroup::IDENTITY;
        }
        if u < v {
            self.edge_value[&(u, v)]
        } else {
            self.group.inv(self.edge_value[&(v, u)])
        }
    }

    /// Product of the edge values along a walk.
    pub fn walk(&self, walk: &[usize]) -> usize {
        walk.windows(2).fold(FiniteGroup::IDENTITY, |acc, p| {
            self.group.mul(acc, self.edge(p[0], p[1]))
        })
    }

    /// The spanning-tree path from the basepoint to `v`.
    pub fn tree_path(&self, v: usize) -> Vec<usize> {
        let mut path = alloc::vec![v];
        let mut c = v;
        while c != self.basepoint {
            c = self.parent[&c];
            path.push(c);
        }
        path.reverse();
        path
    }

    /// A closed walk at the basepoint for each non-tree edge, paired with the
    /// element it represents. These elements generate the group.
    pub fn generating_loops(&self) -> Vec<(usize, Vec<usize>)> {
        self.generators
            .iter()
            .map(|&(u, v)| {
                let mut walk = self.tree_path(u);
                let mut back = self.tree_path(v);
                back.reverse();
                walk.extend(back);
                (self.edge(u, v), walk)
            })
            .collect()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.parent.keys().copied()
    }

    /// The homomorphism induced by a map of components: the loop of `a`
    /// in `self` goes to `target.walk(map(loop))`.
    pub fn induced_hom(&self, target: &EdgePathGroup, map: &dyn Fn(&[usize]) -> Vec<usize>) -> Result<GroupHom> {
        let loops = self.generating_loops();
        let elements: Vec<usize> = loops.iter().map(|(g, _)| *g).collect();
        let images: Vec<usize> = loops.iter().map(|(_, w)| target.walk(&map(w))).collect();
        GroupHom::from_element_images(&self.group, &target.group, &elements, &images)
            .map_err(|_| Error::inconsistency("loop transport is not a homomorphism"))
    }
}

/// An isomorphism class of objects of the fundamental category: a conjugacy
/// class of isotropy subgroups `H` and a Weyl-group orbit of components of
/// `X^H`.
#[derive(Clone, Debug)]
pub struct FundObject {
    pub id: usize,
    pub isotropy: Subgroup,
    /// Index of `H` among [`FiniteGroup::subgroup_conjugacy_classes`].
    pub isotropy_class: usize,
    /// Index of the component among the components of `X^H`.
    pub component_index: usize,
    pub component: Subcomplex,
    pub singular: Subcomplex,
    pub basepoint: usize,
    pub weyl: WeylGroup,
    /// Elements of the Weyl group mapping the component to itself, sorted.
    pub whx: Vec<usize>,
    pub pi1: EdgePathGroup,
}

impl FundObject {
    pub fn gap(&self) -> GapCheck {
        GapCheck::new(&self.component, &self.singular)
    }

    pub fn whx_order(&self) -> usize {
        self.whx.len()
    }

    /// Copy with an infinite cyclic fundamental group realized modulo `modulus`.
    pub fn realized(&self, modulus: usize) -> FundObject {
        FundObject {
            pi1: self.pi1.realized(modulus),
            ..self.clone()
        }
    }
}

/// All objects, ordered by decreasing isotropy order, then by subgroup class,
/// then by component.
pub fn objects(x: &GComplex, coset_cap: usize) -> Result<Vec<FundObject>> {
    let classes = x.group().subgroup_conjugacy_classes();
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by_key(|&i| core::cmp::Reverse(classes[i].order()));
    let mut out = Vec::new();
    for ci in order {
        let h = &classes[ci];
        let xh = x.fixed_subcomplex(h);
        if xh.is_empty() {
            continue;
        }
        let comps = xh.components();
        let orbits = x.component_orbits(h, &comps);
        let weyl = x.group().weyl_group(h);
        for orbit in orbits {
            let k = orbit[0];
            let component = comps[k].clone();
            let basepoint = component.vertices()[0];
            let whx: Vec<usize> = (0..weyl.group.order())
                .filter(|&w| component.contains_vertex(x.act_vertex(weyl.lift(w), basepoint)))
                .collect();
            let singular = x.singular_subcomplex(h, &component);
            let pi1 = EdgePathGroup::new(&component, coset_cap).map_err(|e| match e {
                Error::CosetOverflow { cap } => Error::Pi1NotFinite {
                    component: format!(
                        "isotropy of order {} at vertex {basepoint} ({} vertices)",
                        h.order(),
                        component.simplices(0).len()
                    ),
                    cap,
                },
                other => other,
            })?;
            out.push(FundObject {
                id: out.len(),
                isotropy: h.clone(),
                isotropy_class: ci,
                component_index: k,
                component,
                singular,
                basepoint,
                weyl: weyl.clone(),
                whx,
                pi1,
            });
        }
    }
    Ok(out)
}

/// Group elements `g` with `g^{-1} H g <= K` and `g * y0` in the component
/// of `src`, where `H, K` are the isotropy groups of `src, dst` and `y0` the
/// basepoint of `dst`. Each witnesses a morphism `src -> dst`.
pub fn morphism_witnesses(x: &GComplex, src: &FundObject, dst: &FundObject) -> Vec<usize> {
    (0..x.group().order())
        .filter(|&g| {
            x.group().conjugates_into(g, &src.isotropy, &dst.isotropy)
                && src.component.contains_vertex(x.act_vertex(g, dst.basepoint))
        })
        .collect()
}

pub fn morphism_exists(x: &GComplex, src: &FundObject, dst: &FundObject) -> bool {
    !morphism_witnesses(x, src, dst).is_empty()
}

/// A morphism `src -> dst` that is not an isomorphism, i.e. one with strictly
/// larger isotropy at the target.
pub fn is_strict(src: &FundObject, dst: &FundObject) -> bool {
    src.isotropy.order() < dst.isotropy.order()
}

/// Whether `f` maps the component of `obj` into itself.
pub fn preserves_component(obj: &FundObject, f: &dyn CellularMap) -> bool {
    obj.component.contains_vertex(f.vertex_image(obj.basepoint))
}

/// For a witness `g` of a morphism `src -> dst`, the element of `pi1(src)`
/// that each element of `pi1(dst)` is carried to when fixed-point data of
/// `f` on `dst` is read inside `src`.
///
/// With `y0` the basepoint of `dst`, `F` the map and `T` tree paths, an
/// element `b` goes to `W(F T_{g y0}) * W(g T_{F y0})^{-1} * W(g loop_b)`,
/// walks evaluated in `src`. Requires `f` to preserve both components.
pub fn transport_elements(
    x: &GComplex,
    src: &FundObject,
    dst: &FundObject,
    g: usize,
    f: &dyn CellularMap,
) -> Result<Vec<usize>> {
    let act = ElementMap { complex: x, element: g };
    let psi = dst.pi1.induced_hom(&src.pi1, &|w: &[usize]| act.walk_image(w))?;
    let y0 = dst.basepoint;
    let gy0 = x.act_vertex(g, y0);
    let t_f = src.pi1.walk(&f.walk_image(&src.pi1.tree_path(gy0)));
    let t_g = src.pi1.walk(&act.walk_image(&dst.pi1.tree_path(f.vertex_image(y0))));
    let pi = src.pi1.group();
    let d = pi.mul(t_f, pi.inv(t_g));
    Ok((0..dst.pi1.order()).map(|b| pi.mul(d, psi.apply(b))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::small::cyclic;
    use alloc::vec;

    fn octahedron_facets() -> Vec<Vec<usize>> {
        let mut f = Vec::new();
        for a in [0, 1] {
            for b in [2, 3] {
                for c in [4, 5] {
                    f.push(vec![a, b, c]);
                }
            }
        }
        f
    }

    fn rp2() -> GComplex {
        GComplex::with_trivial_action(
            6,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 3],
                vec![0, 3, 4],
                vec![0, 4, 5],
                vec![0, 5, 1],
                vec![1, 2, 4],
                vec![2, 3, 5],
                vec![3, 4, 1],
                vec![4, 5, 2],
                vec![5, 1, 3],
            ],
        )
        .unwrap()
    }

    #[test]
    fn fundamental_groups() {
        let s2 =
            GComplex::with_trivial_action(4, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap();
        assert_eq!(EdgePathGroup::new(s2.all(), 100).unwrap().order(), 1);
        let p = EdgePathGroup::new(rp2().all(), 100).unwrap();
        assert_eq!(p.order(), 2);
        let circle = GComplex::with_trivial_action(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert!(EdgePathGroup::new(circle.all(), 100).unwrap().is_infinite_cyclic());
        // torus-like presentation <a, b | [a, b]> is neither finite nor cyclic
        let torus = crate::todd_coxeter::Presentation {
            generators: 2,
            relators: vec![vec![1, 2, -1, -2]],
        };
        assert_eq!(
            todd_coxeter(&torus, 100).unwrap_err(),
            Error::CosetOverflow { cap: 100 }
        );
    }

    #[test]
    fn rp2_loops_and_triangles() {
        let x = rp2();
        let p = EdgePathGroup::new(x.all(), 100).unwrap();
        for t in x.simplices(2) {
            assert_eq!(p.walk(&[t[0], t[1], t[2], t[0]]), FiniteGroup::IDENTITY);
        }
        for (g, w) in p.generating_loops() {
            assert_eq!(p.walk(&w), g);
        }
        // a non-trivial loop exists
        assert!(p.generating_loops().iter().any(|(g, _)| *g != FiniteGroup::IDENTITY));
    }

    #[test]
    fn objects_of_sphere_actions() {
        let refl = GComplex::new(cyclic(2), 6, vec![vec![0, 1, 2, 3, 5, 4]], octahedron_facets()).unwrap();
        let obs = objects(&refl, 1000).unwrap();
        assert_eq!(obs.len(), 2);
        assert_eq!(obs[0].isotropy.order(), 2);
        assert_eq!(obs[0].component.dim(), Some(1));
        assert!(obs[0].pi1.is_infinite_cyclic());
        let q = obs[0].pi1.realized(5);
        assert_eq!(q.order(), 5);
        let (g, w) = &q.generating_loops()[0];
        assert_eq!(obs[0].pi1.integer_walk(w).unwrap().abs(), 1);
        assert_eq!(q.exponent(*g).unwrap().abs(), 1);
        assert_eq!(obs[1].isotropy.order(), 1);
        assert_eq!(obs[1].whx_order(), 2);
        assert!(morphism_exists(&refl, &obs[1], &obs[0]));
        assert!(!morphism_exists(&refl, &obs[0], &obs[1]));
        assert!(morphism_exists(&refl, &obs[0], &obs[0]));

        let rot = GComplex::new(cyclic(2), 6, vec![vec![1, 0, 3, 2, 4, 5]], octahedron_facets()).unwrap();
        let obs = objects(&rot, 1000).unwrap();
        assert_eq!(obs.len(), 3);
        assert!(!morphism_exists(&rot, &obs[0], &obs[1]));
        assert!(morphism_exists(&rot, &obs[2], &obs[0]));
        assert!(morphism_exists(&rot, &obs[2], &obs[1]));
        assert!(obs.iter().all(|o| o.pi1.order() == 1));
    }

    #[test]
    fn trivial_group_objects_are_components() {
        let eight = GComplex::with_trivial_action(
            5,
            vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![0, 3], vec![3, 4], vec![0, 4]],
        )
        .unwrap();
        assert!(matches!(objects(&eight, 100), Err(Error::Pi1NotFinite { .. })));
        let two = GComplex::with_trivial_action(6, vec![vec![0, 1], vec![2, 3, 4], vec![4, 5]]).unwrap();
        let obs = objects(&two, 100).unwrap();
        assert_eq!(obs.len(), 2);
        assert_eq!(obs[1].basepoint, 2);
    }
}
