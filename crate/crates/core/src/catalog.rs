//! Small triangulated G-spaces with equivariant self-maps, used by tests, the
//! acceptance suite and the CLI examples.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::{GComplex, GSimplicialMap};
use crate::group::small::cyclic;
use crate::group::FiniteGroup;

#[derive(Clone, Debug)]
pub struct CatalogMap {
    pub name: String,
    pub map: GSimplicialMap,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub complex: GComplex,
    pub maps: Vec<CatalogMap>,
    /// The orbit space is known to be a Jiang space (lens spaces, simply
    /// connected quotients).
    pub quotient_is_jiang: bool,
}

impl CatalogEntry {
    fn new(name: &str, complex: GComplex) -> Self {
        let n = complex.vertex_count();
        CatalogEntry {
            name: name.to_string(),
            complex,
            maps: vec![CatalogMap {
                name: "identity".to_string(),
                map: GSimplicialMap::identity(n),
            }],
            quotient_is_jiang: false,
        }
    }

    fn with_map(mut self, name: &str, map: GSimplicialMap) -> Self {
        self.maps.push(CatalogMap {
            name: name.to_string(),
            map,
        });
        self
    }

    fn with_vertex_map(self, name: &str, images: &[usize]) -> Self {
        self.with_map(name, GSimplicialMap::new(images.to_vec()))
    }

    pub fn map(&self, name: &str) -> Option<&GSimplicialMap> {
        self.maps.iter().find(|m| m.name == name).map(|m| &m.map)
    }
}

const DEGREE_TWO_S2: [usize; 26] = [
    0, 0, 1, 1, 4, 5, 2, 3, 0, 0, 3, 2, 0, 0, 1, 1, 1, 1, 2, 2, 3, 3, 3, 3, 2, 2,
];
const DEGREE_TWO_S3: [usize; 80] = [
    0, 0, 1, 1, 4, 5, 6, 7, 2, 3, 0, 0, 0, 0, 3, 2, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 4, 4, 5, 5, 2, 2, 2, 2, 3, 3,
    3, 3, 0, 0, 0, 0, 3, 3, 3, 3, 2, 2, 2, 2, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3,
    2, 2, 2, 2,
];
const DEGREE_THREE_S2: [usize; 146] = [
    0, 1, 3, 2, 4, 5, 2, 3, 0, 0, 0, 0, 1, 1, 3, 3, 2, 2, 2, 2, 3, 3, 0, 0, 0, 0, 2, 3, 0, 0, 0, 0, 0, 0, 2, 3, 1, 1,
    2, 2, 3, 3, 1, 0, 3, 3, 1, 1, 3, 3, 1, 0, 2, 2, 1, 1, 2, 2, 4, 4, 4, 4, 4, 4, 4, 4, 5, 5, 5, 5, 5, 5, 5, 5, 2, 2,
    3, 3, 4, 4, 5, 5, 0, 0, 0, 0, 4, 4, 5, 5, 4, 4, 5, 5, 4, 4, 5, 5, 2, 2, 3, 3, 0, 0, 0, 0, 2, 2, 3, 3, 2, 3, 2, 3,
    1, 1, 0, 0, 1, 3, 1, 3, 1, 1, 0, 0, 1, 2, 1, 2, 4, 4, 4, 4, 4, 4, 4, 4, 5, 5, 5, 5, 5, 5, 5, 5,
];

/// Boundary of the `(dim + 1)`-dimensional cross-polytope: vertex `2i` is
/// `+e_i`, `2i + 1` is `-e_i`.
pub fn cross_polytope_facets(dim: usize) -> Vec<Vec<usize>> {
    (0..1usize << (dim + 1))
        .map(|mask| (0..=dim).map(|i| 2 * i + (mask >> i & 1)).collect())
        .collect()
}

/// Swaps `+e_i` and `-e_i` for every `i` in `coords`.
pub fn coordinate_flip(dim: usize, coords: &[usize]) -> Vec<usize> {
    (0..2 * (dim + 1))
        .map(|v| if coords.contains(&(v / 2)) { v ^ 1 } else { v })
        .collect()
}

fn antipodal(dim: usize) -> Vec<usize> {
    coordinate_flip(dim, &(0..=dim).collect::<Vec<_>>())
}

fn sphere(dim: usize, group: FiniteGroup, action: Vec<Vec<usize>>) -> GComplex {
    GComplex::new(group, 2 * (dim + 1), action, cross_polytope_facets(dim)).expect("cross-polytope")
}

fn trivial_sphere(dim: usize) -> GComplex {
    GComplex::with_trivial_action(2 * (dim + 1), cross_polytope_facets(dim)).expect("cross-polytope")
}

pub fn tetrahedron() -> CatalogEntry {
    let x = GComplex::with_trivial_action(4, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
        .expect("tetrahedron");
    CatalogEntry::new("tetrahedral S2", x)
        .with_vertex_map("transposition", &[1, 0, 2, 3])
        .with_vertex_map("three-cycle", &[1, 2, 0, 3])
        .with_vertex_map("constant", &[0, 0, 0, 0])
}

/// Octahedral S2 with trivial group, carrying the suspension-type maps of
/// degree two and three.
pub fn octahedron() -> CatalogEntry {
    CatalogEntry::new("octahedral S2", trivial_sphere(2))
        .with_vertex_map("antipodal", &antipodal(2))
        .with_vertex_map("quarter turn", &[2, 3, 1, 0, 4, 5])
        .with_map("degree two", GSimplicialMap::on_subdivision(1, DEGREE_TWO_S2.to_vec()))
        .with_map(
            "degree three",
            GSimplicialMap::on_subdivision(2, DEGREE_THREE_S2.to_vec()),
        )
}

/// Z/2 acting on the octahedron by the reflection in the equatorial plane.
pub fn reflection_s2() -> CatalogEntry {
    let r = coordinate_flip(2, &[2]);
    let a = antipodal(2);
    let ra: Vec<usize> = a.iter().map(|&v| r[v]).collect();
    CatalogEntry::new("reflection S2", sphere(2, cyclic(2), vec![r.clone()]))
        .with_vertex_map("reflection", &r)
        .with_vertex_map("antipodal", &a)
        .with_vertex_map("half turn", &ra)
        .with_map("degree two", GSimplicialMap::on_subdivision(1, DEGREE_TWO_S2.to_vec()))
}

/// Z/2 acting on the octahedron by the half turn about the polar axis.
pub fn rotation_s2() -> CatalogEntry {
    let t = coordinate_flip(2, &[0, 1]);
    CatalogEntry::new("rotation S2", sphere(2, cyclic(2), vec![t.clone()]))
        .with_vertex_map("half turn", &t)
        .with_vertex_map("reflection", &coordinate_flip(2, &[2]))
        .with_vertex_map("antipodal", &antipodal(2))
}

/// The antipodal Z/2 action on the 16-cell S3; the orbit space is RP3.
pub fn free_s3() -> CatalogEntry {
    let mut e = CatalogEntry::new("free Z/2 on S3", sphere(3, cyclic(2), vec![antipodal(3)]))
        .with_vertex_map("antipodal", &antipodal(3))
        .with_vertex_map("flip", &coordinate_flip(3, &[0]));
    e.quotient_is_jiang = true;
    e
}

/// The 16-cell S3 with trivial group and a degree-two map.
pub fn sixteen_cell() -> CatalogEntry {
    CatalogEntry::new("16-cell S3", trivial_sphere(3))
        .with_map("degree two", GSimplicialMap::on_subdivision(1, DEGREE_TWO_S3.to_vec()))
}

/// Z/2 reflecting the 16-cell S3 across the equatorial S2.
pub fn reflection_s3() -> CatalogEntry {
    let r = coordinate_flip(3, &[3]);
    CatalogEntry::new("reflection S3", sphere(3, cyclic(2), vec![r]))
        .with_map("degree two", GSimplicialMap::on_subdivision(1, DEGREE_TWO_S3.to_vec()))
}

/// Z/2 reflecting S4 (boundary of the 5-dimensional cross-polytope) across an
/// equatorial S3.
pub fn reflection_s4() -> CatalogEntry {
    let r = coordinate_flip(4, &[4]);
    CatalogEntry::new("reflection S4", sphere(4, cyclic(2), vec![r])).with_vertex_map("antipodal", &antipodal(4))
}

/// The 6-vertex real projective plane.
pub fn rp2() -> CatalogEntry {
    let x = GComplex::with_trivial_action(
        6,
        vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 5],
            vec![0, 1, 5],
            vec![1, 2, 4],
            vec![2, 3, 5],
            vec![1, 3, 4],
            vec![2, 4, 5],
            vec![1, 3, 5],
        ],
    )
    .expect("RP2");
    CatalogEntry::new("RP2", x).with_vertex_map("constant", &[0; 6])
}

/// RP3 as the orbit space of the subdivided 16-cell under the antipodal map.
pub fn rp3() -> CatalogEntry {
    let (sd, labels) = sphere(3, cyclic(2), vec![antipodal(3)]).barycentric_subdivision();
    let x = sd
        .quotient_by_free_action()
        .expect("free action on the subdivided 16-cell");
    let flip = descend(&sd, &labels, &coordinate_flip(3, &[0]));
    let mut e = CatalogEntry::new("RP3", x).with_vertex_map("flip", &flip);
    e.quotient_is_jiang = true;
    e
}

/// The self-map of a free orbit complex induced by a vertex map of the
/// unsubdivided complex that commutes with the action. Orbits are numbered
/// as in [`GComplex::quotient_by_free_action`].
fn descend(sd: &GComplex, labels: &[Vec<usize>], images: &[usize]) -> Vec<usize> {
    let mut orbit = vec![usize::MAX; sd.vertex_count()];
    let mut next = 0;
    for v in 0..sd.vertex_count() {
        if orbit[v] == usize::MAX {
            for g in 0..sd.group().order() {
                orbit[sd.act_vertex(g, v)] = next;
            }
            next += 1;
        }
    }
    let mut out = vec![usize::MAX; next];
    for (v, s) in labels.iter().enumerate() {
        let mut img: Vec<usize> = s.iter().map(|&u| images[u]).collect();
        img.sort_unstable();
        let w = labels
            .iter()
            .position(|t| *t == img)
            .expect("vertex map sends simplices to simplices");
        out[orbit[v]] = orbit[w];
    }
    out
}

/// The lens space L(3, 1) as the orbit space of the twice subdivided join of
/// two triangles under the diagonal Z/3 rotation.
pub fn lens_3() -> CatalogEntry {
    let mut facets = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            facets.push(vec![i, (i + 1) % 3, 3 + j, 3 + (j + 1) % 3]);
        }
    }
    let join = GComplex::new(cyclic(3), 6, vec![vec![1, 2, 0, 4, 5, 3]], facets).expect("join of triangles");
    let (sd, _) = join.barycentric_subdivision();
    let (sd2, _) = sd.barycentric_subdivision();
    let x = sd2
        .quotient_by_free_action()
        .expect("free action on the subdivided join");
    let mut e = CatalogEntry::new("lens L(3,1)", x);
    e.quotient_is_jiang = true;
    e
}

pub fn point() -> CatalogEntry {
    CatalogEntry::new("point", GComplex::with_trivial_action(1, vec![vec![0]]).expect("point"))
}

/// Every catalog entry, smallest first.
pub fn all() -> Vec<CatalogEntry> {
    vec![
        point(),
        tetrahedron(),
        octahedron(),
        reflection_s2(),
        rotation_s2(),
        rp2(),
        free_s3(),
        sixteen_cell(),
        reflection_s3(),
        reflection_s4(),
        rp3(),
        lens_3(),
    ]
}
