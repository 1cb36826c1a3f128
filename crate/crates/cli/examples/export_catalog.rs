//! Writes one problem file per catalog map into the given directory
//! (default `problems`), with hand-derived fixed-point data on the spheres.

use std::path::PathBuf;

use eqnielsen::problem::{FixedPointSpec, JiangSpec, ProblemFile};
use eqnielsen_core::catalog;

fn point(label: &str, isotropy: usize, object: usize, sign: i64, whz_order: usize) -> FixedPointSpec {
    FixedPointSpec {
        label: label.into(),
        isotropy,
        object,
        walk: Vec::new(),
        sign,
        whz_order,
    }
}

/// Fixed points of a generic equivariant perturbation of the identity.
fn identity_data(entry: &str) -> Option<Vec<FixedPointSpec>> {
    match entry {
        // gradient flow of the height: both poles fixed by the rotation
        "rotation S2" => Some(vec![
            point("N", 2, 0, 1, 1),
            point("S", 2, 1, 1, 1),
            point("N in S2", 2, 2, 1, 2),
            point("S in S2", 2, 2, 1, 2),
        ]),
        // flow towards one pole; the poles form a single free orbit
        "reflection S2" => Some(vec![point("poles", 1, 1, 1, 1)]),
        // height along e0: a source and a sink on the equator, both with
        // isotropy Z/2, seen in the equator and in the whole sphere
        "reflection S4" => Some(vec![
            point("+e0", 2, 0, 1, 1),
            point("-e0", 2, 0, -1, 1),
            point("+e0 in S4", 2, 1, 1, 2),
            point("-e0 in S4", 2, 1, 1, 2),
        ]),
        _ => None,
    }
}

fn slug(s: &str) -> String {
    s.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() {
                c.to_ascii_lowercase()
            } else {
                '_'
            }
        })
        .collect::<String>()
        .split('_')
        .filter(|p| !p.is_empty())
        .collect::<Vec<_>>()
        .join("_")
}

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "problems".into()));
    std::fs::create_dir_all(&dir).expect("output directory");
    for entry in catalog::all() {
        for m in &entry.maps {
            let mut file = ProblemFile::from_parts(&entry.complex, &m.map);
            if entry.quotient_is_jiang {
                file.jiang = Some(JiangSpec {
                    quotient_is_jiang: true,
                    ..Default::default()
                });
            }
            if m.name == "identity" {
                file.fixed_points = identity_data(&entry.name);
            }
            let path = dir.join(format!("{}__{}.json", slug(&entry.name), slug(&m.name)));
            std::fs::write(&path, file.to_json() + "\n").expect("write problem file");
            println!("{}", path.display());
        }
    }
}
