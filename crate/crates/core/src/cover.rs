//! Universal covers of fixed-set components, the lifted `Aut(x)` action, lifts
//! of self-maps, and the free chain complexes over `Z Aut(x)` they produce.
//!
//! A cover vertex is a pair `(v, g)`: the endpoint of the lift of the loop
//! `g` followed by the tree path `T_v`. Deck transformations act by
//! `h (v, g) = (v, h g)`. A cover simplex is named by its base simplex and the
//! sheet of its minimal vertex.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::complex::{CellularMap, ElementMap, GComplex, PreparedMap, Simplex};
use crate::error::{Error, Result};
use crate::fundamental::FundObject;
use crate::group::{FiniteGroup, GroupHom};
use crate::perm::{sorting_sign, Perm};
use crate::ring::{Combination, Rational};

const NONE: usize = usize::MAX;

/// The cover of one object's component with the `Aut(x)` action on it.
#[derive(Clone, Debug)]
pub struct ObjectCover {
    object: FundObject,
    vertices: Vec<usize>,
    position: Vec<usize>,
    sheets: usize,
    aut: AutExtension,
}

/// `1 -> pi1 -> Aut(x) -> WH_x -> 1`, realized as a permutation group on the
/// cover vertices plus a regular block for `WH_x`.
#[derive(Clone, Debug)]
pub struct AutExtension {
    pub group: FiniteGroup,
    /// Image of each `pi1` element (deck transformation).
    pub pi_to_aut: Vec<usize>,
    /// Position in `whx` of the image of each element in `WH_x`.
    pub weyl_part: Vec<usize>,
    /// Chosen lift of each `WH_x` element (the one fixing the sheet of the
    /// basepoint's orbit representative).
    pub section: Vec<usize>,
}

impl AutExtension {
    pub fn order(&self) -> usize {
        self.group.order()
    }
}

impl ObjectCover {
    pub fn new(x: &GComplex, object: &FundObject) -> Result<Self> {
        let object = object.clone();
        let vertices = object.component.vertices();
        let mut position = alloc::vec![NONE; x.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            position[v] = i;
        }
        let sheets = object.pi1.order();
        let mut cover = ObjectCover {
            object,
            vertices,
            position,
            sheets,
            aut: AutExtension {
                group: FiniteGroup::trivial(),
                pi_to_aut: Vec::new(),
                weyl_part: Vec::new(),
                section: Vec::new(),
            },
        };
        cover.aut = cover.build_aut(x)?;
        Ok(cover)
    }

    pub fn object(&self) -> &FundObject {
        &self.object
    }

    pub fn pi(&self) -> &FiniteGroup {
        self.object.pi1.group()
    }

    pub fn aut(&self) -> &AutExtension {
        &self.aut
    }

    pub fn sheets(&self) -> usize {
        self.sheets
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len() * self.sheets
    }

    pub fn vertex_index(&self, v: usize, g: usize) -> usize {
        debug_assert!(self.position[v] != NONE);
        self.position[v] * self.sheets + g
    }

    pub fn decode(&self, i: usize) -> (usize, usize) {
        (self.vertices[i / self.sheets], i % self.sheets)
    }

    /// Cover vertices of the cell `(sigma, sheet)`, in the order of `sigma`.
    pub fn cell_vertices(&self, sigma: &[usize], sheet: usize) -> Vec<usize> {
        let pi = self.pi();
        let ev = |a, b| self.object.pi1.edge(a, b);
        sigma
            .iter()
            .map(|&v| self.vertex_index(v, pi.mul(sheet, ev(sigma[0], v))))
            .collect()
    }

    /// The cell spanned by distinct cover vertices, with the sign of the
    /// given ordering relative to the sorted one. Fails if the vertices do
    /// not span a cover simplex.
    pub fn cell_of(&self, verts: &[usize]) -> Result<(Simplex, usize, i64)> {
        let decoded: Vec<(usize, usize)> = verts.iter().map(|&i| self.decode(i)).collect();
        let base: Vec<usize> = decoded.iter().map(|d| d.0).collect();
        let sign = sorting_sign(&base).ok_or_else(|| Error::inconsistency("degenerate cover simplex"))?;
        let mut sorted = decoded.clone();
        sorted.sort_unstable();
        let sigma: Simplex = sorted.iter().map(|d| d.0).collect();
        let sheet = sorted[0].1;
        if !self.object.component.contains(&sigma) {
            return Err(Error::inconsistency("image is not a simplex of the component"));
        }
        let pi = self.pi();
        for &(v, g) in &sorted {
            if g != pi.mul(sheet, self.object.pi1.edge(sigma[0], v)) {
                return Err(Error::inconsistency("lifted vertices lie on different sheets"));
            }
        }
        Ok((sigma, sheet, sign))
    }

    /// Action of an `Aut(x)` element on a cover cell, with orientation sign.
    pub fn act_cell(&self, a: usize, sigma: &[usize], sheet: usize) -> (Simplex, usize, i64) {
        let p = self.aut.group.element(a);
        let img: Vec<usize> = self
            .cell_vertices(sigma, sheet)
            .into_iter()
            .map(|i| p.apply(i))
            .collect();
        self.cell_of(&img).expect("Aut(x) acts simplicially on the cover")
    }

    /// Lift of a map of the component fixing nothing in particular: the
    /// induced homomorphism (loops read through tree paths at both ends) and
    /// the image of every cover vertex, with the basepoint going to sheet
    /// `anchor` over its image.
    pub fn lift_vertices(&self, f: &dyn CellularMap, anchor: usize) -> Result<(GroupHom, Vec<usize>)> {
        let pi1 = &self.object.pi1;
        let pi = pi1.group();
        let phi = pi1.induced_hom(pi1, &|w: &[usize]| f.walk_image(w))?;
        let mut images = alloc::vec![0; self.vertex_count()];
        for &v in &self.vertices {
            let fv = f.vertex_image(v);
            if self.position.get(fv).copied().unwrap_or(NONE) == NONE {
                return Err(Error::inconsistency("map leaves the component"));
            }
            let t = pi1.walk(&f.walk_image(&pi1.tree_path(v)));
            for g in 0..self.sheets {
                let sheet = pi.mul(pi.mul(anchor, phi.apply(g)), t);
                images[self.vertex_index(v, g)] = self.vertex_index(fv, sheet);
            }
        }
        Ok((phi, images))
    }

    fn build_aut(&self, x: &GComplex) -> Result<AutExtension> {
        let n = self.vertex_count();
        let whx = &self.object.whx;
        let weyl = &self.object.weyl;
        let degree = n + whx.len();
        let pi = self.pi();
        let deck_perm = |h: usize| -> Perm {
            let mut img: Vec<u32> = (0..degree as u32).collect();
            for (i, slot) in img.iter_mut().enumerate().take(n) {
                let (v, g) = self.decode(i);
                *slot = self.vertex_index(v, pi.mul(h, g)) as u32;
            }
            Perm::from_images(img).expect("deck transformation is a permutation")
        };
        let whx_pos: BTreeMap<usize, usize> = whx.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        let mut lifts = Vec::with_capacity(whx.len());
        for &w in whx {
            let act = ElementMap {
                complex: x,
                element: weyl.lift(w),
            };
            let (_, images) = self.lift_vertices(&act, FiniteGroup::IDENTITY)?;
            let mut img: Vec<u32> = images.iter().map(|&i| i as u32).collect();
            for &u in whx {
                img.push((n + whx_pos[&weyl.group.mul(w, u)]) as u32);
            }
            lifts.push(
                Perm::from_images(img).ok_or_else(|| Error::inconsistency("lifted Weyl element is not a bijection"))?,
            );
        }
        let mut gens: Vec<Perm> = pi.generator_indices().iter().map(|&h| deck_perm(h)).collect();
        gens.extend(lifts.iter().skip(1).cloned());
        let group = FiniteGroup::from_generators(degree, gens)?;
        if group.order() != pi.order() * whx.len() {
            return Err(Error::inconsistency("|Aut(x)| differs from |pi1| * |WH_x|"));
        }
        let pi_to_aut = (0..pi.order())
            .map(|h| {
                group
                    .index_of(&deck_perm(h))
                    .expect("deck transformations lie in Aut(x)")
            })
            .collect();
        let weyl_part = group.elements().iter().map(|p| p.apply(n) - n).collect();
        let section = lifts
            .iter()
            .map(|p| group.index_of(p).expect("lifts lie in Aut(x)"))
            .collect();
        Ok(AutExtension {
            group,
            pi_to_aut,
            weyl_part,
            section,
        })
    }
}

/// A lift of a self-map to the cover of a preserved component.
#[derive(Clone, Debug)]
pub struct MapLift {
    pub anchor: usize,
    /// `phi_F` on `pi1`, reading image loops through tree paths.
    pub phi: GroupHom,
    /// Sheet offset of each vertex of the subdivided domain whose carrier lies
    /// in the component; `NONE` elsewhere.
    offset: Vec<usize>,
    /// `phi'`, with `f~ a = phi'(a) f~` for `a` in `Aut(x)`.
    pub phi_prime: GroupHom,
}

impl MapLift {
    /// The cover vertex over `f(w)` hit by the vertex `w` of the subdivided
    /// domain in sheet `t`.
    pub fn lift_vertex(&self, cover: &ObjectCover, f: &PreparedMap, w: usize, t: usize) -> usize {
        let pi = cover.pi();
        let sheet = pi.mul(pi.mul(self.anchor, self.phi.apply(t)), self.offset[w]);
        cover.vertex_index(f.apply(w), sheet)
    }
}

impl ObjectCover {
    /// Lifts `f`; `None` when `f` moves the component elsewhere.
    pub fn lift_map(&self, f: &PreparedMap, anchor: usize) -> Result<Option<MapLift>> {
        let obj = &self.object;
        if !obj.component.contains_vertex(f.vertex_image(obj.basepoint)) {
            return Ok(None);
        }
        let pi1 = &obj.pi1;
        let pi = pi1.group();
        let phi = pi1.induced_hom(pi1, &|w: &[usize]| f.walk_image(w))?;
        let sd = f.subdivision();
        let mut offset = alloc::vec![NONE; sd.complex().vertex_count()];
        for (w, slot) in offset.iter_mut().enumerate() {
            let carrier = sd.carrier(w);
            if !obj.component.contains(carrier) {
                continue;
            }
            let m = carrier[0];
            let t = pi1.walk(&f.walk_image(&pi1.tree_path(m)));
            let path = sd.path_within(sd.vertex_of(m), w, carrier);
            let image: Vec<usize> = path.iter().map(|&u| f.apply(u)).collect();
            *slot = pi.mul(t, pi1.walk(&image));
        }
        let mut lift = MapLift {
            anchor,
            phi,
            offset,
            phi_prime: GroupHom::identity(pi),
        };
        lift.phi_prime = self.phi_prime(f, &lift)?;
        Ok(Some(lift))
    }

    /// Image of a cover vertex of the unsubdivided component.
    pub fn lift_image(&self, f: &PreparedMap, lift: &MapLift, i: usize) -> usize {
        let (v, g) = self.decode(i);
        lift.lift_vertex(self, f, f.subdivision().vertex_of(v), g)
    }

    fn phi_prime(&self, f: &PreparedMap, lift: &MapLift) -> Result<GroupHom> {
        let aut = &self.aut.group;
        let x0 = self.object.basepoint;
        let base = self.vertex_index(x0, FiniteGroup::IDENTITY);
        let fbase = self.lift_image(f, lift, base);
        let mut table: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for d in 0..aut.order() {
            table.insert((self.aut.weyl_part[d], aut.element(d).apply(fbase)), d);
        }
        let images = (0..aut.order())
            .map(|a| {
                let moved = aut.element(a).apply(base);
                table[&(self.aut.weyl_part[a], self.lift_image(f, lift, moved))]
            })
            .collect();
        GroupHom::from_images(aut, aut, images)
            .map_err(|_| Error::inconsistency("phi' is not a homomorphism of Aut(x)"))
    }
}

/// Which cells the chain complex is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainMode {
    /// Cells not over the singular set; `Aut(x)` acts freely.
    Relative,
    /// All cells, with cosets of cell stabilizers averaged.
    Absolute,
}

/// Sparse column: row index to group ring entry.
pub type Column = BTreeMap<usize, Combination<Rational>>;

#[derive(Clone, Debug)]
struct Located {
    basis: usize,
    element: usize,
    sign: i64,
}

/// Cellular chains of the cover as free (relative) or permutation (absolute)
/// modules over `Q Aut(x)`. Entries act on the left:
/// `d b = sum_j D[j][b] b_j`.
#[derive(Clone, Debug)]
pub struct EquivChainComplex {
    pub mode: ChainMode,
    /// Orbit representatives per dimension, each taken at the identity sheet.
    pub basis: Vec<Vec<Simplex>>,
    /// `Aut(x)` elements fixing each basis cell.
    pub stabilizers: Vec<Vec<Vec<usize>>>,
    lookup: BTreeMap<(Simplex, usize), Located>,
    /// `boundary[p][b]` is the column of the basis cell `b` of dimension `p`.
    pub boundary: Vec<Vec<Column>>,
}

impl EquivChainComplex {
    pub fn new(cover: &ObjectCover, mode: ChainMode) -> Result<Self> {
        let obj = cover.object();
        let aut = &cover.aut().group;
        let dim = obj.component.dim().unwrap_or(0);
        let mut basis = alloc::vec![Vec::new(); dim + 1];
        let mut stabilizers = alloc::vec![Vec::new(); dim + 1];
        let mut lookup = BTreeMap::new();
        for sigma in obj.component.iter() {
            if mode == ChainMode::Relative && obj.singular.contains(sigma) {
                continue;
            }
            if lookup.contains_key(&(sigma.clone(), FiniteGroup::IDENTITY)) {
                continue;
            }
            let p = sigma.len() - 1;
            let b = basis[p].len();
            let mut stab = Vec::new();
            for a in 0..aut.order() {
                let (tau, sheet, sign) = cover.act_cell(a, sigma, FiniteGroup::IDENTITY);
                if tau == *sigma && sheet == FiniteGroup::IDENTITY {
                    if sign != 1 {
                        return Err(Error::input(
                            "a cell stabilizer reverses orientation; subdivide the complex",
                        ));
                    }
                    stab.push(a);
                }
                lookup.entry((tau, sheet)).or_insert(Located {
                    basis: b,
                    element: a,
                    sign,
                });
            }
            if mode == ChainMode::Relative && stab.len() != 1 {
                return Err(Error::inconsistency("Aut(x) does not act freely off the singular set"));
            }
            basis[p].push(sigma.clone());
            stabilizers[p].push(stab);
        }
        let mut complex = EquivChainComplex {
            mode,
            basis,
            stabilizers,
            lookup,
            boundary: Vec::new(),
        };
        let mut boundary = alloc::vec![Vec::new(); dim + 1];
        for (p, out) in boundary.iter_mut().enumerate() {
            for sigma in &complex.basis[p] {
                let mut col = Column::new();
                if p > 0 {
                    for i in 0..sigma.len() {
                        let mut face = sigma.clone();
                        face.remove(i);
                        let sheet = if i == 0 {
                            obj.pi1.edge(sigma[0], sigma[1])
                        } else {
                            FiniteGroup::IDENTITY
                        };
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        complex.accumulate(&mut col, &face, sheet, sign, aut);
                    }
                }
                out.push(col);
            }
        }
        complex.boundary = boundary;
        Ok(complex)
    }

    pub fn dim(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn rank(&self, p: usize) -> usize {
        self.basis.get(p).map_or(0, |b| b.len())
    }

    /// Adds `coeff * (cell at sheet)` to a column; cells outside the complex
    /// are ignored.
    fn accumulate(&self, col: &mut Column, sigma: &[usize], sheet: usize, coeff: i64, aut: &FiniteGroup) {
        let Some(loc) = self.lookup.get(&(sigma.to_vec(), sheet)) else {
            return;
        };
        let p = sigma.len() - 1;
        let stab = &self.stabilizers[p][loc.basis];
        let weight = Rational::new(coeff * loc.sign, stab.len() as i64);
        let entry = col.entry(loc.basis).or_default();
        for &s in stab {
            entry.add_term(aut.mul(loc.element, s), weight);
        }
        if entry.is_zero() {
            col.remove(&loc.basis);
        }
    }

    /// `d o d`, which must vanish.
    pub fn boundary_squared_is_zero(&self, aut: &FiniteGroup) -> bool {
        (2..=self.dim()).all(|p| {
            self.boundary[p].iter().all(|col| {
                let mut total: BTreeMap<usize, Combination<Rational>> = BTreeMap::new();
                for (&j, m) in col {
                    for (&l, n) in &self.boundary[p - 1][j] {
                        total.entry(l).or_default().add_assign(&m.mul_in(n, aut));
                    }
                }
                total.values().all(|c| c.is_zero())
            })
        })
    }
}

/// The lifted map on an [`EquivChainComplex`]: `f~ b = sum_j F[j][b] b_j`,
/// semilinear along `phi'`.
#[derive(Clone, Debug)]
pub struct EquivChainMap {
    pub matrices: Vec<Vec<Column>>,
}

impl EquivChainMap {
    pub fn new(cover: &ObjectCover, complex: &EquivChainComplex, f: &PreparedMap, lift: &MapLift) -> Result<Self> {
        let obj = cover.object();
        let aut = &cover.aut().group;
        let pi = cover.pi();
        let sd = f.subdivision();
        let mut matrices = Vec::with_capacity(complex.basis.len());
        for cells in &complex.basis {
            let mut cols = Vec::with_capacity(cells.len());
            for sigma in cells {
                let mut col = Column::new();
                for (tau, c) in sd.subdivide_chain(sigma) {
                    let lifted: Vec<usize> = tau
                        .iter()
                        .map(|&w| {
                            let t = pi.mul(FiniteGroup::IDENTITY, obj.pi1.edge(sigma[0], sd.carrier(w)[0]));
                            lift.lift_vertex(cover, f, w, t)
                        })
                        .collect();
                    let mut distinct = lifted.clone();
                    distinct.sort_unstable();
                    distinct.dedup();
                    if distinct.len() < lifted.len() {
                        if !Self::degenerate_is_consistent(cover, &lifted) {
                            return Err(Error::inconsistency(
                                "lift identifies distinct cover vertices over one point",
                            ));
                        }
                        continue;
                    }
                    let (rho, sheet, sign) = cover.cell_of(&lifted)?;
                    complex.accumulate(&mut col, &rho, sheet, c * sign, aut);
                }
                cols.push(col);
            }
            matrices.push(cols);
        }
        Ok(EquivChainMap { matrices })
    }

    fn degenerate_is_consistent(cover: &ObjectCover, lifted: &[usize]) -> bool {
        lifted
            .iter()
            .all(|&a| lifted.iter().all(|&b| cover.decode(a).0 != cover.decode(b).0 || a == b))
    }

    /// Checks `d f~ = f~ d` over the group ring.
    pub fn commutes(&self, complex: &EquivChainComplex, aut: &FiniteGroup, phi_prime: &GroupHom) -> bool {
        for p in 1..=complex.dim() {
            for b in 0..complex.rank(p) {
                let mut lhs: BTreeMap<usize, Combination<Rational>> = BTreeMap::new();
                for (&j, fj) in &self.matrices[p][b] {
                    for (&l, d) in &complex.boundary[p][j] {
                        lhs.entry(l).or_default().add_assign(&fj.mul_in(d, aut));
                    }
                }
                let mut rhs: BTreeMap<usize, Combination<Rational>> = BTreeMap::new();
                for (&j, d) in &complex.boundary[p][b] {
                    let twisted = d.map_keys(|a| phi_prime.apply(a));
                    for (&l, fl) in &self.matrices[p - 1][j] {
                        rhs.entry(l).or_default().add_assign(&twisted.mul_in(fl, aut));
                    }
                }
                lhs.retain(|_, c| !c.is_zero());
                rhs.retain(|_, c| !c.is_zero());
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Sum of the diagonal entries in dimension `p`.
    pub fn diagonal_sum(&self, p: usize) -> Combination<Rational> {
        let mut out = Combination::zero();
        for (b, col) in self.matrices[p].iter().enumerate() {
            if let Some(e) = col.get(&b) {
                out.add_assign(e);
            }
        }
        out
    }
}
