//! Finite G-simplicial complexes, fixed and singular subcomplexes, and
//! equivariant simplicial self-maps.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{extend_along_cayley_graph, FiniteGroup, Subgroup};
use crate::perm::{sorting_sign, Perm};

/// A simplex as its strictly increasing vertex list.
pub type Simplex = Vec<usize>;

/// A face-closed set of simplices, stored per dimension in sorted order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Subcomplex {
    by_dim: Vec<Vec<Simplex>>,
}

impl Subcomplex {
    /// Face closure of the given simplices (each must be sorted and duplicate free).
    pub fn closure_of<'a>(simplices: impl IntoIterator<Item = &'a Simplex>) -> Self {
        let mut set: BTreeSet<Simplex> = BTreeSet::new();
        for s in simplices {
            add_with_faces(s, &mut set);
        }
        Self::from_closed_set(set)
    }

    fn from_closed_set(set: BTreeSet<Simplex>) -> Self {
        let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
        for s in set {
            let d = s.len() - 1;
            while by_dim.len() <= d {
                by_dim.push(Vec::new());
            }
            by_dim[d].push(s);
        }
        Subcomplex { by_dim }
    }

    /// Builds from a predicate over an already face-closed family; the
    /// predicate must itself be closed under taking faces.
    fn filtered(parent: &Subcomplex, keep: impl Fn(&Simplex) -> bool) -> Self {
        let mut by_dim: Vec<Vec<Simplex>> = parent
            .by_dim
            .iter()
            .map(|l| l.iter().filter(|s| keep(s)).cloned().collect())
            .collect();
        while by_dim.last().is_some_and(|l| l.is_empty()) {
            by_dim.pop();
        }
        Subcomplex { by_dim }
    }

    /// Maximal simplex dimension, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    pub fn simplices(&self, p: usize) -> &[Simplex] {
        self.by_dim.get(p).map_or(&[], |v| v.as_slice())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.by_dim.iter().map(|l| l.len()).sum()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.simplices(0).iter().map(|s| s[0]).collect()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        s.len()
            .checked_sub(1)
            .and_then(|d| self.by_dim.get(d))
            .is_some_and(|l| l.binary_search_by(|x| x.as_slice().cmp(s)).is_ok())
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.contains(&[v])
    }

    /// Position of `s` inside its dimension's sorted list.
    pub fn position(&self, s: &[usize]) -> Option<usize> {
        let d = s.len().checked_sub(1)?;
        self.by_dim.get(d)?.binary_search_by(|x| x.as_slice().cmp(s)).ok()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// Connected components, ordered by minimal vertex.
    pub fn components(&self) -> Vec<Subcomplex> {
        let verts = self.vertices();
        if verts.is_empty() {
            return Vec::new();
        }
        let pos: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for e in self.simplices(1) {
            let a = find(&mut parent, pos[&e[0]]);
            let b = find(&mut parent, pos[&e[1]]);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut comp_of_root: BTreeMap<usize, usize> = BTreeMap::new();
        let mut comp_of_vertex: Vec<usize> = Vec::with_capacity(verts.len());
        for i in 0..verts.len() {
            let r = find(&mut parent, i);
            let next = comp_of_root.len();
            comp_of_vertex.push(*comp_of_root.entry(r).or_insert(next));
        }
        let mut sets: Vec<BTreeSet<Simplex>> = alloc::vec![BTreeSet::new(); comp_of_root.len()];
        for s in self.iter() {
            sets[comp_of_vertex[pos[&s[0]]]].insert(s.clone());
        }
        sets.into_iter().map(Subcomplex::from_closed_set).collect()
    }

    /// The subcomplex of simplices of `self` lying in `other` as well.
    pub fn intersection(&self, other: &Subcomplex) -> Subcomplex {
        Subcomplex::filtered(self, |s| other.contains(s))
    }
}

fn add_with_faces(s: &[usize], set: &mut BTreeSet<Simplex>) {
    if s.is_empty() || set.contains(s) {
        return;
    }
    set.insert(s.to_vec());
    if s.len() > 1 {
        for i in 0..s.len() {
            let mut f = s.to_vec();
            f.remove(i);
            add_with_faces(&f, set);
        }
    }
}

/// A finite simplicial complex with a simplicial action of a finite group.
#[derive(Clone, Debug)]
pub struct GComplex {
    group: FiniteGroup,
    vertex_count: usize,
    /// Vertex permutation of every group element, indexed like the group.
    action: Vec<Perm>,
    generator_action: Vec<Perm>,
    simplices: Subcomplex,
}

impl GComplex {
    /// Builds the complex spanned by `facets` (faces are added automatically)
    /// with the action given by one vertex permutation per group generator.
    ///
    /// Every vertex must lie in some simplex. Regularity is not enforced here;
    /// see [`GComplex::regularity_violation`].
    pub fn new(
        group: FiniteGroup,
        vertex_count: usize,
        generator_action: Vec<Vec<usize>>,
        facets: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if generator_action.len() != group.generators().len() {
            return Err(Error::input(format!(
                "action lists {} permutations but the group has {} generators",
                generator_action.len(),
                group.generators().len()
            )));
        }
        let mut gens = Vec::with_capacity(generator_action.len());
        for (k, images) in generator_action.into_iter().enumerate() {
            if images.len() != vertex_count {
                return Err(Error::input(format!(
                    "action of generator {k} has {} entries, expected {vertex_count}",
                    images.len()
                )));
            }
            let p = Perm::from_images(images.iter().map(|&i| i as u32).collect())
                .ok_or_else(|| Error::input(format!("action of generator {k} is not a permutation")))?;
            gens.push(p);
        }
        let action = extend_along_cayley_graph(&group, &gens, Perm::identity(vertex_count), |s, g| s.compose(&g))
            .ok_or_else(|| Error::input("vertex action is not a group homomorphism"))?;

        let mut set = BTreeSet::new();
        for (i, f) in facets.iter().enumerate() {
            let mut s = f.clone();
            s.sort_unstable();
            if s.is_empty() {
                return Err(Error::input(format!("simplex {i} is empty")));
            }
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::input(format!("simplex {f:?} repeats a vertex")));
            }
            if let Some(v) = s.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::input(format!("simplex {f:?} uses vertex {v} out of range")));
            }
            add_with_faces(&s, &mut set);
        }
        for v in 0..vertex_count {
            if !set.contains(&alloc::vec![v]) {
                return Err(Error::input(format!("vertex {v} lies in no simplex")));
            }
        }
        let simplices = Subcomplex::from_closed_set(set);
        let cx = GComplex {
            group,
            vertex_count,
            action,
            generator_action: gens,
            simplices,
        };
        for (k, p) in cx.generator_action.iter().enumerate() {
            for s in cx.simplices.iter() {
                let img = sorted_image(p, s);
                if !cx.simplices.contains(&img) {
                    return Err(Error::input(format!(
                        "generator {k} maps simplex {s:?} to {img:?}, which is not a simplex"
                    )));
                }
            }
        }
        Ok(cx)
    }

    /// A complex with the trivial group acting.
    pub fn with_trivial_action(vertex_count: usize, facets: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(FiniteGroup::trivial(), vertex_count, Vec::new(), facets)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn generator_action(&self) -> &[Perm] {
        &self.generator_action
    }

    pub fn all(&self) -> &Subcomplex {
        &self.simplices
    }

    pub fn dim(&self) -> Option<usize> {
        self.simplices.dim()
    }

    pub fn simplices(&self, p: usize) -> &[Simplex] {
        self.simplices.simplices(p)
    }

    /// Maximal simplices, i.e. those that are not a proper face of another.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut covered: BTreeSet<&Simplex> = BTreeSet::new();
        let mut out = Vec::new();
        let top = self.dim().map_or(0, |d| d + 1);
        for d in (0..top).rev() {
            for s in self.simplices(d) {
                if !covered.contains(s) {
                    out.push(s.clone());
                }
            }
            if d > 0 {
                for s in self.simplices(d) {
                    for i in 0..s.len() {
                        let mut f = s.clone();
                        f.remove(i);
                        covered.insert(self.simplices(d - 1).iter().find(|x| **x == f).unwrap());
                    }
                }
            }
        }
        out.sort();
        out
    }

    #[inline]
    pub fn act_vertex(&self, g: usize, v: usize) -> usize {
        self.action[g].apply(v)
    }

    pub fn vertex_perm(&self, g: usize) -> &Perm {
        &self.action[g]
    }

    pub fn act_simplex(&self, g: usize, s: &[usize]) -> Simplex {
        sorted_image(&self.action[g], s)
    }

    /// Elements fixing every vertex of `s`.
    pub fn isotropy(&self, s: &[usize]) -> Subgroup {
        let members = (0..self.group.order())
            .filter(|&g| s.iter().all(|&v| self.act_vertex(g, v) == v))
            .collect::<Vec<_>>();
        self.group.closure(members)
    }

    /// A group element and simplex where the action fixes the simplex as a set
    /// without fixing it pointwise, if any.
    pub fn regularity_violation(&self) -> Option<(usize, Simplex)> {
        for g in 0..self.group.order() {
            for s in self.simplices.iter() {
                if s.len() > 1 && self.act_simplex(g, s) == *s && s.iter().any(|&v| self.act_vertex(g, v) != v) {
                    return Some((g, s.clone()));
                }
            }
        }
        None
    }

    pub fn is_regular(&self) -> bool {
        self.regularity_violation().is_none()
    }

    /// `X^H`: simplices all of whose vertices are fixed by every element of `h`.
    pub fn fixed_subcomplex(&self, h: &Subgroup) -> Subcomplex {
        Subcomplex::filtered(&self.simplices, |s| {
            s.iter()
                .all(|&v| h.members().iter().all(|&g| self.act_vertex(g, v) == v))
        })
    }

    /// `X^{>H}` inside `xh`: simplices of `xh` whose isotropy is strictly larger than `h`.
    pub fn singular_subcomplex(&self, h: &Subgroup, xh: &Subcomplex) -> Subcomplex {
        Subcomplex::filtered(xh, |s| self.isotropy(s).order() != h.order())
    }

    /// Groups the components of `X^H` into orbits under the normalizer of `h`.
    /// Returns orbits as lists of component indices, ordered by first member.
    pub fn component_orbits(&self, h: &Subgroup, components: &[Subcomplex]) -> Vec<Vec<usize>> {
        let normalizer = self.group.normalizer(h);
        let comp_of_vertex = |v: usize| components.iter().position(|c| c.contains_vertex(v));
        let mut orbit_of = alloc::vec![usize::MAX; components.len()];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for i in 0..components.len() {
            if orbit_of[i] != usize::MAX {
                continue;
            }
            let o = orbits.len();
            let base = components[i].vertices()[0];
            let mut members: Vec<usize> = normalizer
                .members()
                .iter()
                .filter_map(|&n| comp_of_vertex(self.act_vertex(n, base)))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            members.sort_unstable();
            for &m in &members {
                orbit_of[m] = o;
            }
            orbits.push(members);
        }
        orbits
    }

    /// Elements of `subgroup` (given as members of G) that map the component
    /// containing vertex `v` of `X^H` to itself.
    pub fn component_stabilizer(&self, candidates: &[usize], component: &Subcomplex) -> Vec<usize> {
        let base = component.vertices()[0];
        candidates
            .iter()
            .copied()
            .filter(|&g| component.contains_vertex(self.act_vertex(g, base)))
            .collect()
    }

    /// Barycentric subdivision. Vertex `i` of the result is the barycenter of
    /// the `i`-th entry of the returned list of simplices.
    pub fn barycentric_subdivision(&self) -> (GComplex, Vec<Simplex>) {
        let labels: Vec<Simplex> = self.simplices.iter().cloned().collect();
        let index: BTreeMap<&Simplex, usize> = labels.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut facets = Vec::new();
        for top in self.facets() {
            flags(&top, &mut Vec::new(), &index, &mut facets);
        }
        let gens = self
            .generator_action
            .iter()
            .map(|p| labels.iter().map(|s| index[&sorted_image(p, s)]).collect())
            .collect();
        let sd = GComplex::new(self.group.clone(), labels.len(), gens, facets)
            .expect("subdivision of a valid complex is valid");
        (sd, labels)
    }

    /// The same complex with vertex `v` renamed to `relabel[v]`.
    pub fn relabeled(&self, relabel: &[usize]) -> Result<GComplex> {
        let p = Perm::from_images(relabel.iter().map(|&i| i as u32).collect())
            .filter(|p| p.degree() == self.vertex_count)
            .ok_or_else(|| Error::input("relabelling is not a permutation of the vertices"))?;
        let pinv = p.inverse();
        let gens = self
            .generator_action
            .iter()
            .map(|g| {
                let c = p.compose(&g.compose(&pinv));
                c.images().iter().map(|&i| i as usize).collect()
            })
            .collect();
        let facets = self
            .facets()
            .iter()
            .map(|s| s.iter().map(|&v| relabel[v]).collect())
            .collect();
        GComplex::new(self.group.clone(), self.vertex_count, gens, facets)
    }
}

impl GComplex {
    /// The orbit complex `X/G` of a free action, with trivial group. Orbits
    /// are numbered by their minimal vertex. Fails when the quotient of the
    /// simplices is not a simplicial complex.
    pub fn quotient_by_free_action(&self) -> Result<GComplex> {
        let mut orbit = alloc::vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        for v in 0..self.vertex_count {
            if orbit[v] != usize::MAX {
                continue;
            }
            for g in 0..self.group.order() {
                orbit[self.act_vertex(g, v)] = next;
            }
            next += 1;
        }
        let mut quotient_cells = BTreeSet::new();
        for s in self.simplices.iter() {
            let mut img: Vec<usize> = s.iter().map(|&v| orbit[v]).collect();
            img.sort_unstable();
            img.dedup();
            if img.len() != s.len() {
                return Err(Error::input("the action identifies vertices of a simplex"));
            }
            quotient_cells.insert(img);
        }
        let per_orbit = self.group.order();
        if quotient_cells.len() * per_orbit != self.simplices.len() {
            return Err(Error::input("the action is not free or the quotient is not simplicial"));
        }
        let facets = self
            .facets()
            .iter()
            .map(|s| {
                let mut img: Vec<usize> = s.iter().map(|&v| orbit[v]).collect();
                img.sort_unstable();
                img
            })
            .collect();
        let q = GComplex::with_trivial_action(next, facets)?;
        if q.all().len() != quotient_cells.len() {
            return Err(Error::input("the quotient is not simplicial"));
        }
        Ok(q)
    }

    /// For a vertex relabelling of `self`, the induced relabelling of the
    /// vertices of the `depth`-fold subdivision.
    pub fn subdivision_relabeling(&self, relabel: &[usize], depth: usize) -> Result<Vec<usize>> {
        let mut old = self.clone();
        let mut new = self.relabeled(relabel)?;
        let mut rho = relabel.to_vec();
        for _ in 0..depth {
            let (old_sd, old_labels) = old.barycentric_subdivision();
            let (new_sd, new_labels) = new.barycentric_subdivision();
            let index: BTreeMap<&Simplex, usize> = new_labels.iter().enumerate().map(|(i, s)| (s, i)).collect();
            rho = old_labels
                .iter()
                .map(|s| {
                    let mut img: Vec<usize> = s.iter().map(|&v| rho[v]).collect();
                    img.sort_unstable();
                    index[&img]
                })
                .collect();
            old = old_sd;
            new = new_sd;
        }
        Ok(rho)
    }
}

/// Maximal flags `top ⊃ ... ⊃ vertex` as simplices of the subdivision.
fn flags(s: &Simplex, chain: &mut Vec<usize>, index: &BTreeMap<&Simplex, usize>, out: &mut Vec<Vec<usize>>) {
    chain.push(index[s]);
    if s.len() == 1 {
        out.push(chain.clone());
    } else {
        for i in 0..s.len() {
            let mut f = s.clone();
            f.remove(i);
            flags(&f, chain, index, out);
        }
    }
    chain.pop();
}

fn sorted_image(p: &Perm, s: &[usize]) -> Simplex {
    let mut img: Vec<usize> = s.iter().map(|&v| p.apply(v)).collect();
    img.sort_unstable();
    img
}

/// Problems found when validating a self-map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapViolation {
    WrongLength { expected: usize, found: usize },
    VertexOutOfRange { vertex: usize, image: usize },
    NotSimplicial { simplex: Simplex },
    NotEquivariant { group_element: usize, vertex: usize },
}

impl core::fmt::Display for MapViolation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            MapViolation::WrongLength { expected, found } => {
                write!(f, "map lists {found} vertex images, expected {expected}")
            }
            MapViolation::VertexOutOfRange { vertex, image } => {
                write!(f, "vertex {vertex} maps to {image}, which is out of range")
            }
            MapViolation::NotSimplicial { simplex } => write!(
                f,
                "image of simplex {simplex:?} is not a simplex; the map is not simplicial (try subdividing)"
            ),
            MapViolation::NotEquivariant { group_element, vertex } => write!(
                f,
                "map does not commute with group element {group_element} at vertex {vertex}"
            ),
        }
    }
}

/// The `depth`-fold barycentric subdivision of a complex, with the
/// bookkeeping needed to push chains and paths of the original into it.
#[derive(Clone, Debug)]
pub struct Subdivision {
    depth: usize,
    complex: GComplex,
    /// Smallest simplex of the original complex containing each vertex.
    carrier: Vec<Simplex>,
    /// Vertex of the subdivision sitting at each original vertex.
    vertex_of: Vec<usize>,
    /// Per level, the map from simplices of that level to barycenter vertices
    /// of the next.
    barycenter: Vec<BTreeMap<Simplex, usize>>,
    neighbours: Vec<Vec<usize>>,
}

impl Subdivision {
    pub fn new(x: &GComplex, depth: usize) -> Self {
        let mut complex = x.clone();
        let mut carrier: Vec<Simplex> = (0..x.vertex_count()).map(|v| alloc::vec![v]).collect();
        let mut vertex_of: Vec<usize> = (0..x.vertex_count()).collect();
        let mut barycenter = Vec::with_capacity(depth);
        for _ in 0..depth {
            let (sd, labels) = complex.barycentric_subdivision();
            let index: BTreeMap<Simplex, usize> = labels.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
            carrier = labels
                .iter()
                .map(|s| {
                    let mut c: Vec<usize> = s.iter().flat_map(|&w| carrier[w].iter().copied()).collect();
                    c.sort_unstable();
                    c.dedup();
                    c
                })
                .collect();
            vertex_of = vertex_of.iter().map(|&w| index[&alloc::vec![w]]).collect();
            barycenter.push(index);
            complex = sd;
        }
        let mut neighbours = alloc::vec![Vec::new(); complex.vertex_count()];
        for e in complex.simplices(1) {
            neighbours[e[0]].push(e[1]);
            neighbours[e[1]].push(e[0]);
        }
        Subdivision {
            depth,
            complex,
            carrier,
            vertex_of,
            barycenter,
            neighbours,
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn complex(&self) -> &GComplex {
        &self.complex
    }

    pub fn carrier(&self, w: usize) -> &Simplex {
        &self.carrier[w]
    }

    pub fn vertex_of(&self, v: usize) -> usize {
        self.vertex_of[v]
    }

    /// The subdivision of an oriented simplex as a chain of oriented simplices
    /// of the subdivided complex, each given sorted with its sign.
    pub fn subdivide_chain(&self, sigma: &[usize]) -> BTreeMap<Simplex, i64> {
        let mut chain: BTreeMap<Simplex, i64> = BTreeMap::new();
        chain.insert(sigma.to_vec(), 1);
        for index in &self.barycenter {
            let mut next: BTreeMap<Simplex, i64> = BTreeMap::new();
            for (tau, c) in chain {
                for (ordered, s) in cone_subdivision(&tau, index) {
                    let sign = sorting_sign(&ordered).expect("flag vertices are distinct");
                    let mut sorted = ordered;
                    sorted.sort_unstable();
                    let e = next.entry(sorted).or_insert(0);
                    *e += c * s * sign;
                }
            }
            next.retain(|_, c| *c != 0);
            chain = next;
        }
        chain
    }

    /// A shortest edge path from `from` to `to` using only vertices whose
    /// carriers lie in `within` (a simplex of the original complex).
    pub fn path_within(&self, from: usize, to: usize, within: &[usize]) -> Vec<usize> {
        let allowed = |w: usize| self.carrier[w].iter().all(|v| within.binary_search(v).is_ok());
        let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
        prev.insert(from, from);
        let mut queue = alloc::collections::VecDeque::from([from]);
        while let Some(a) = queue.pop_front() {
            if a == to {
                break;
            }
            for &b in &self.neighbours[a] {
                if !prev.contains_key(&b) && allowed(b) {
                    prev.insert(b, a);
                    queue.push_back(b);
                }
            }
        }
        let mut path = alloc::vec![to];
        let mut c = to;
        while c != from {
            c = *prev.get(&c).expect("subdivided simplex is connected");
            path.push(c);
        }
        path.reverse();
        path
    }

    /// The subdivided edge path running along the original edge `u -> v`.
    pub fn edge_path(&self, u: usize, v: usize) -> Vec<usize> {
        let mut within = alloc::vec![u, v];
        within.sort_unstable();
        self.path_within(self.vertex_of[u], self.vertex_of[v], &within)
    }
}

/// One level of barycentric subdivision of an oriented simplex as ordered
/// tuples `(b(sigma), ...)` with signs, via `Sd(s) = b(s) * Sd(boundary s)`.
fn cone_subdivision(sigma: &[usize], index: &BTreeMap<Simplex, usize>) -> Vec<(Vec<usize>, i64)> {
    let b = index[sigma];
    if sigma.len() == 1 {
        return alloc::vec![(alloc::vec![b], 1)];
    }
    let mut out = Vec::new();
    for i in 0..sigma.len() {
        let mut face = sigma.to_vec();
        face.remove(i);
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for (t, c) in cone_subdivision(&face, index) {
            let mut ordered = alloc::vec![b];
            ordered.extend(t);
            out.push((ordered, c * sign));
        }
    }
    out
}

/// A self-map of a [`GComplex`] `X`, given by the image in `X` of every
/// vertex of the `depth`-fold barycentric subdivision of `X`. Depth zero is
/// an ordinary simplicial self-map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSimplicialMap {
    depth: usize,
    images: Vec<usize>,
}

impl GSimplicialMap {
    pub fn new(images: Vec<usize>) -> Self {
        GSimplicialMap { depth: 0, images }
    }

    /// A map defined on the `depth`-fold subdivision of the domain.
    pub fn on_subdivision(depth: usize, images: Vec<usize>) -> Self {
        GSimplicialMap { depth, images }
    }

    pub fn identity(n: usize) -> Self {
        GSimplicialMap::new((0..n).collect())
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Image of vertex `w` of the subdivided domain.
    #[inline]
    pub fn apply(&self, w: usize) -> usize {
        self.images[w]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of a simplex of the subdivided domain with repeated vertices
    /// removed, sorted.
    pub fn image_simplex(&self, s: &[usize]) -> Simplex {
        let mut img: Vec<usize> = s.iter().map(|&v| self.images[v]).collect();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// Exhaustive check of simpliciality and equivariance.
    pub fn check(&self, x: &GComplex) -> core::result::Result<(), MapViolation> {
        self.check_with(x, &Subdivision::new(x, self.depth))
    }

    /// As [`GSimplicialMap::check`] with a prebuilt subdivision of matching depth.
    pub fn check_with(&self, x: &GComplex, sd: &Subdivision) -> core::result::Result<(), MapViolation> {
        let domain = sd.complex();
        if self.images.len() != domain.vertex_count() {
            return Err(MapViolation::WrongLength {
                expected: domain.vertex_count(),
                found: self.images.len(),
            });
        }
        for (v, &w) in self.images.iter().enumerate() {
            if w >= x.vertex_count() {
                return Err(MapViolation::VertexOutOfRange { vertex: v, image: w });
            }
        }
        for s in domain.all().iter() {
            if !x.all().contains(&self.image_simplex(s)) {
                return Err(MapViolation::NotSimplicial { simplex: s.clone() });
            }
        }
        for g in 0..x.group().order() {
            for v in 0..domain.vertex_count() {
                if self.apply(domain.act_vertex(g, v)) != x.act_vertex(g, self.apply(v)) {
                    return Err(MapViolation::NotEquivariant {
                        group_element: g,
                        vertex: v,
                    });
                }
            }
        }
        Ok(())
    }

    /// The same map with its domain subdivided once more, for `labels` as
    /// returned by [`GComplex::barycentric_subdivision`] of the current domain.
    /// Vertices of the new domain go to the image of the minimal vertex of
    /// their label; this is simplicial and cellularly homotopic to the original.
    pub fn refined(&self, labels: &[Simplex]) -> GSimplicialMap {
        GSimplicialMap {
            depth: self.depth + 1,
            images: labels.iter().map(|s| self.images[s[0]]).collect(),
        }
    }

    /// The induced map on the barycentric subdivision of both domain and
    /// target, for depth-zero maps. `labels` as returned by
    /// [`GComplex::barycentric_subdivision`].
    pub fn subdivided(&self, labels: &[Simplex]) -> GSimplicialMap {
        assert_eq!(self.depth, 0, "only depth-zero maps can be subdivided on both sides");
        let index: BTreeMap<&Simplex, usize> = labels.iter().enumerate().map(|(i, s)| (s, i)).collect();
        GSimplicialMap::new(labels.iter().map(|s| index[&self.image_simplex(s)]).collect())
    }

    /// Relabels a depth-zero map along a vertex relabelling of its complex.
    pub fn relabeled(&self, relabel: &[usize]) -> GSimplicialMap {
        assert_eq!(self.depth, 0, "relabelling applies to depth-zero maps");
        let mut images = alloc::vec![0; self.images.len()];
        for (v, &w) in self.images.iter().enumerate() {
            images[relabel[v]] = relabel[w];
        }
        GSimplicialMap::new(images)
    }

    /// Relabels a map of any depth along a vertex relabelling of `x`.
    pub fn relabeled_on(&self, x: &GComplex, relabel: &[usize]) -> Result<GSimplicialMap> {
        let rho = x.subdivision_relabeling(relabel, self.depth)?;
        let mut images = alloc::vec![0; self.images.len()];
        for (w, &v) in self.images.iter().enumerate() {
            images[rho[w]] = relabel[v];
        }
        Ok(GSimplicialMap {
            depth: self.depth,
            images,
        })
    }

    /// `self` after `first`, both depth zero.
    pub fn compose(&self, first: &GSimplicialMap) -> GSimplicialMap {
        assert!(self.depth == 0 && first.depth == 0);
        GSimplicialMap::new(first.images.iter().map(|&v| self.images[v]).collect())
    }
}

/// A continuous self-map of the realization of a complex, seen through its
/// action on vertices and on edge paths.
pub trait CellularMap {
    /// Image of a vertex of the (unsubdivided) complex.
    fn vertex_image(&self, v: usize) -> usize;
    /// Image of an edge path as an edge path, possibly with repeated vertices.
    fn walk_image(&self, walk: &[usize]) -> Vec<usize>;
}

/// A group element acting as a simplicial automorphism.
pub struct ElementMap<'a> {
    pub complex: &'a GComplex,
    pub element: usize,
}

impl ElementMap<'_> {
    pub fn simplex_image(&self, s: &[usize]) -> Simplex {
        self.complex.act_simplex(self.element, s)
    }
}

impl CellularMap for ElementMap<'_> {
    fn vertex_image(&self, v: usize) -> usize {
        self.complex.act_vertex(self.element, v)
    }

    fn walk_image(&self, walk: &[usize]) -> Vec<usize> {
        walk.iter().map(|&v| self.vertex_image(v)).collect()
    }
}

/// A validated [`GSimplicialMap`] together with the subdivision of its domain.
#[derive(Clone, Debug)]
pub struct PreparedMap {
    map: GSimplicialMap,
    subdivision: Subdivision,
}

impl PreparedMap {
    pub fn new(x: &GComplex, map: GSimplicialMap) -> Result<Self> {
        let subdivision = Subdivision::new(x, map.depth());
        map.check_with(x, &subdivision)
            .map_err(|v| Error::input(format!("{v}")))?;
        Ok(PreparedMap { map, subdivision })
    }

    pub fn map(&self) -> &GSimplicialMap {
        &self.map
    }

    pub fn subdivision(&self) -> &Subdivision {
        &self.subdivision
    }

    /// Image of a vertex of the subdivided domain.
    pub fn apply(&self, w: usize) -> usize {
        self.map.apply(w)
    }
}

impl CellularMap for PreparedMap {
    fn vertex_image(&self, v: usize) -> usize {
        self.map.apply(self.subdivision.vertex_of(v))
    }

    fn walk_image(&self, walk: &[usize]) -> Vec<usize> {
        let mut out = Vec::new();
        if let Some(&first) = walk.first() {
            out.push(self.vertex_image(first));
        }
        for pair in walk.windows(2) {
            if pair[0] == pair[1] {
                continue;
            }
            let path = self.subdivision.edge_path(pair[0], pair[1]);
            out.extend(path[1..].iter().map(|&w| self.map.apply(w)));
        }
        out
    }
}

/// Dimension data for the gap hypotheses of one fixed-set component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GapCheck {
    pub dim: Option<usize>,
    pub singular_dim: Option<usize>,
    pub dimension_ok: bool,
    pub codimension_ok: bool,
}

impl GapCheck {
    pub fn new(component: &Subcomplex, singular: &Subcomplex) -> Self {
        let dim = component.dim();
        let singular_dim = singular.dim();
        let dimension_ok = dim.is_some_and(|d| d >= 3);
        let codimension_ok = match (dim, singular_dim) {
            (_, None) => true,
            (Some(d), Some(s)) => d >= s + 2,
            (None, Some(_)) => false,
        };
        GapCheck {
            dim,
            singular_dim,
            dimension_ok,
            codimension_ok,
        }
    }

    pub fn holds(&self) -> bool {
        self.dimension_ok && self.codimension_ok
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::small::*;
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

    fn reflection() -> GComplex {
        GComplex::new(cyclic(2), 6, vec![vec![0, 1, 2, 3, 5, 4]], octahedron_facets()).unwrap()
    }

    #[test]
    fn faces_are_closed() {
        let x = GComplex::with_trivial_action(6, octahedron_facets()).unwrap();
        assert_eq!(x.simplices(0).len(), 6);
        assert_eq!(x.simplices(1).len(), 12);
        assert_eq!(x.simplices(2).len(), 8);
        assert_eq!(x.all().euler_characteristic(), 2);
        assert_eq!(x.facets().len(), 8);
    }

    #[test]
    fn reflection_fixed_and_singular_sets() {
        let x = reflection();
        assert!(x.is_regular());
        let g = x.group();
        let whole = g.whole();
        let xg = x.fixed_subcomplex(&whole);
        assert_eq!(xg.vertices(), vec![0, 1, 2, 3]);
        assert_eq!(xg.dim(), Some(1));
        assert_eq!(xg.euler_characteristic(), 0);
        let one = g.trivial_subgroup();
        let x1 = x.fixed_subcomplex(&one);
        assert_eq!(x1, *x.all());
        let sing = x.singular_subcomplex(&one, &x1);
        assert_eq!(sing, xg);
        assert!(x.singular_subcomplex(&whole, &xg).is_empty());
        assert_eq!(x.isotropy(&[0, 2]).order(), 2);
        assert_eq!(x.isotropy(&[0, 4]).order(), 1);
    }

    #[test]
    fn rotation_poles_are_separate_orbits() {
        let x = GComplex::new(cyclic(2), 6, vec![vec![1, 0, 3, 2, 4, 5]], octahedron_facets()).unwrap();
        let xg = x.fixed_subcomplex(&x.group().whole());
        let comps = xg.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(x.component_orbits(&x.group().whole(), &comps), vec![vec![0], vec![1]]);
        assert!(x.components_consistent());
    }

    impl GComplex {
        fn components_consistent(&self) -> bool {
            self.group().all_subgroups().iter().all(|h| {
                let c = self.fixed_subcomplex(h).components();
                let orbits = self.component_orbits(h, &c);
                orbits.iter().map(|o| o.len()).sum::<usize>() == c.len()
            })
        }
    }

    #[test]
    fn free_antipodal_action_has_empty_fixed_set() {
        let x = GComplex::new(cyclic(2), 6, vec![vec![1, 0, 3, 2, 5, 4]], octahedron_facets()).unwrap();
        assert!(x.fixed_subcomplex(&x.group().whole()).is_empty());
        assert_eq!(x.isotropy(&[0, 2, 4]).order(), 1);
        assert!(x.is_regular());
    }

    #[test]
    fn rotation_of_a_triangle_needs_subdivision() {
        // Z/3 rotating a filled triangle fixes it setwise only
        let x = GComplex::new(cyclic(3), 3, vec![vec![1, 2, 0]], vec![vec![0, 1, 2]]).unwrap();
        assert!(!x.is_regular());
        let (sd, labels) = x.barycentric_subdivision();
        assert!(sd.is_regular());
        assert_eq!(labels.len(), 7);
        assert_eq!(sd.simplices(2).len(), 6);
        let f = GSimplicialMap::identity(3).subdivided(&labels);
        assert_eq!(f, GSimplicialMap::identity(7));
    }

    #[test]
    fn map_checks() {
        let x = reflection();
        assert!(GSimplicialMap::identity(6).check(&x).is_ok());
        assert!(GSimplicialMap::new(vec![1, 0, 3, 2, 5, 4]).check(&x).is_ok());
        assert_eq!(
            GSimplicialMap::new(vec![0, 1, 2, 3, 0, 5]).check(&x),
            Err(MapViolation::NotSimplicial { simplex: vec![1, 4] })
        );
        assert_eq!(
            GSimplicialMap::new(vec![0, 1, 2, 3, 4, 4]).check(&x),
            Err(MapViolation::NotEquivariant {
                group_element: 1,
                vertex: 4
            })
        );
        assert!(matches!(
            GSimplicialMap::new(vec![0; 5]).check(&x),
            Err(MapViolation::WrongLength { .. })
        ));
    }

    #[test]
    fn gap_check() {
        let x = GComplex::with_trivial_action(1, vec![vec![0]]).unwrap();
        let g = GapCheck::new(x.all(), &Subcomplex::default());
        assert!(!g.holds());
        assert!(g.codimension_ok);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(GComplex::with_trivial_action(3, vec![vec![0, 1]]).is_err());
        assert!(GComplex::with_trivial_action(2, vec![vec![0, 0]]).is_err());
        assert!(GComplex::new(cyclic(2), 3, vec![vec![1, 2, 0]], vec![vec![0, 1, 2]]).is_err());
        assert!(GComplex::new(cyclic(2), 3, vec![vec![1, 0, 2]], vec![vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn relabelling_preserves_structure() {
        let x = reflection();
        let r = [5, 3, 1, 0, 2, 4];
        let y = x.relabeled(&r).unwrap();
        assert_eq!(y.fixed_subcomplex(&y.group().whole()).vertices(), vec![0, 1, 3, 5]);
    }

    fn boundary(chain: &BTreeMap<Simplex, i64>) -> BTreeMap<Simplex, i64> {
        let mut out = BTreeMap::new();
        for (s, c) in chain {
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                *out.entry(f).or_insert(0) += c * sign;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    #[test]
    fn subdivision_commutes_with_boundary() {
        let x = GComplex::with_trivial_action(4, vec![vec![0, 1, 2, 3]]).unwrap();
        for depth in 1..=2 {
            let sd = Subdivision::new(&x, depth);
            let sigma = vec![0, 1, 2, 3];
            let lhs = boundary(&sd.subdivide_chain(&sigma));
            let mut rhs = BTreeMap::new();
            for (f, c) in boundary(&BTreeMap::from([(sigma.clone(), 1)])) {
                for (t, d) in sd.subdivide_chain(&f) {
                    *rhs.entry(t).or_insert(0) += c * d;
                }
            }
            rhs.retain(|_, c| *c != 0);
            assert_eq!(lhs, rhs);
            assert_eq!(sd.subdivide_chain(&sigma).len(), if depth == 1 { 24 } else { 576 });
            let p = sd.edge_path(1, 3);
            assert_eq!(*p.first().unwrap(), sd.vertex_of(1));
            assert_eq!(*p.last().unwrap(), sd.vertex_of(3));
            assert!(p.iter().all(|&w| sd.carrier(w).iter().all(|v| *v == 1 || *v == 3)));
        }
    }
}
