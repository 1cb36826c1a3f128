//! The JSON problem file: a G-complex, a self-map and optional declarations.

use std::collections::BTreeMap;
use std::path::Path;

use eqnielsen_core::analysis::Options;
use eqnielsen_core::complex::{GComplex, GSimplicialMap};
use eqnielsen_core::group::small::{cyclic, dihedral, symmetric};
use eqnielsen_core::group::FiniteGroup;
use eqnielsen_core::jiang::{JiangDeclarations, JiangFamily};
use eqnielsen_core::oracle::FixedPointDatum;
use eqnielsen_core::perm::Perm;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub group: GroupSpec,
    pub complex: ComplexSpec,
    pub map: MapSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jiang: Option<JiangSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_points: Option<Vec<FixedPointSpec>>,
    #[serde(default, skip_serializing_if = "OptionsSpec::is_empty")]
    pub options: OptionsSpec,
    /// Reserved for inputs given as quotients of a larger group; rejected.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_is_quotient_of: Option<serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    Trivial,
    Cyclic {
        order: usize,
    },
    Dihedral {
        n: usize,
    },
    Symmetric {
        n: usize,
    },
    /// Generated by permutations of `0..degree` given as image lists.
    Permutation {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub vertices: usize,
    pub facets: Vec<Vec<usize>>,
    /// One vertex image list per group generator.
    #[serde(default)]
    pub action: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    /// Number of barycentric subdivisions of the domain the images refer to.
    #[serde(default)]
    pub domain_subdivisions: usize,
    pub images: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JiangSpec {
    #[serde(default)]
    pub quotient_is_jiang: bool,
    /// Object id (as a string key) to one of `lens`, `H-space`, `homogeneous`.
    #[serde(default)]
    pub families: BTreeMap<String, String>,
    #[serde(default)]
    pub assert_objects: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedPointSpec {
    pub label: String,
    pub isotropy: usize,
    pub object: usize,
    /// Closed vertex walk at the object's basepoint; empty for the trivial loop.
    #[serde(rename = "loop", default)]
    pub walk: Vec<usize>,
    pub sign: i64,
    #[serde(rename = "WHz_order")]
    pub whz_order: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coset_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover_search_cap: Option<usize>,
}

impl OptionsSpec {
    fn is_empty(&self) -> bool {
        self.coset_cap.is_none() && self.cover_search_cap.is_none()
    }
}

/// A problem file turned into engine inputs.
#[derive(Clone, Debug)]
pub struct Problem {
    pub complex: GComplex,
    pub map: GSimplicialMap,
    pub options: Options,
    pub fixed_points: Option<Vec<FixedPointDatum>>,
}

impl ProblemFile {
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files serialize")
    }

    /// Builds a problem file from engine inputs, with the group given by its
    /// generating permutations.
    pub fn from_parts(x: &GComplex, map: &GSimplicialMap) -> Self {
        let group = if x.group().order() == 1 {
            GroupSpec::Trivial
        } else {
            GroupSpec::Permutation {
                degree: x.group().degree(),
                generators: x.group().generators().iter().map(perm_images).collect(),
            }
        };
        let generator_action = if x.group().order() == 1 {
            Vec::new()
        } else {
            x.generator_action().iter().map(perm_images).collect()
        };
        ProblemFile {
            group,
            complex: ComplexSpec {
                vertices: x.vertex_count(),
                facets: x.facets(),
                action: generator_action,
            },
            map: MapSpec {
                domain_subdivisions: map.depth(),
                images: map.images().to_vec(),
            },
            jiang: None,
            fixed_points: None,
            options: OptionsSpec::default(),
            group_is_quotient_of: None,
        }
    }

    pub fn build(&self) -> Result<Problem> {
        if self.group_is_quotient_of.is_some() {
            return Err(CliError::Schema(
                "group_is_quotient_of is reserved and not supported".into(),
            ));
        }
        let group = self.group.build()?;
        let complex = GComplex::new(
            group,
            self.complex.vertices,
            self.complex.action.clone(),
            self.complex.facets.clone(),
        )?;
        let map = GSimplicialMap::on_subdivision(self.map.domain_subdivisions, self.map.images.clone());
        if let Some(v) = map.images().iter().find(|&&v| v >= complex.vertex_count()) {
            return Err(CliError::Schema(format!("map image {v} is not a vertex")));
        }
        let mut options = Options::default();
        if let Some(c) = self.options.coset_cap {
            options.coset_cap = c;
        }
        if let Some(c) = self.options.cover_search_cap {
            options.cover_search_cap = c;
        }
        if let Some(j) = &self.jiang {
            options.jiang = j.build()?;
        }
        let fixed_points = self.fixed_points.as_ref().map(|data| {
            data.iter()
                .map(|d| FixedPointDatum {
                    label: d.label.clone(),
                    isotropy: d.isotropy,
                    object: d.object,
                    walk: d.walk.clone(),
                    sign: d.sign,
                    whz_order: d.whz_order,
                })
                .collect()
        });
        Ok(Problem {
            complex,
            map,
            options,
            fixed_points,
        })
    }
}

fn perm_images(p: &Perm) -> Vec<usize> {
    p.images().iter().map(|&i| i as usize).collect()
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        let positive = |n: usize, what: &str| {
            if n == 0 {
                Err(CliError::Schema(format!("{what} must be positive")))
            } else {
                Ok(n)
            }
        };
        Ok(match self {
            GroupSpec::Trivial => FiniteGroup::trivial(),
            GroupSpec::Cyclic { order } => cyclic(positive(*order, "cyclic order")?),
            GroupSpec::Dihedral { n } => dihedral(positive(*n, "dihedral n")?),
            GroupSpec::Symmetric { n } => symmetric(positive(*n, "symmetric n")?),
            GroupSpec::Permutation { degree, generators } => {
                let mut gens = Vec::with_capacity(generators.len());
                for (k, g) in generators.iter().enumerate() {
                    if g.len() != *degree {
                        return Err(CliError::Schema(format!(
                            "group generator {k} has {} entries, expected {degree}",
                            g.len()
                        )));
                    }
                    let p = Perm::from_images(g.iter().map(|&i| i as u32).collect())
                        .ok_or_else(|| CliError::Schema(format!("group generator {k} is not a permutation")))?;
                    gens.push(p);
                }
                FiniteGroup::from_generators(*degree, gens)?
            }
        })
    }
}

impl JiangSpec {
    pub fn build(&self) -> Result<JiangDeclarations> {
        let mut families = BTreeMap::new();
        for (k, v) in &self.families {
            let id: usize = k
                .parse()
                .map_err(|_| CliError::Schema(format!("jiang family key {k:?} is not an object id")))?;
            let f = JiangFamily::parse(v).ok_or_else(|| {
                CliError::Schema(format!(
                    "unknown Jiang family {v:?}; expected lens, H-space or homogeneous"
                ))
            })?;
            families.insert(id, f);
        }
        Ok(JiangDeclarations {
            quotient_is_jiang: self.quotient_is_jiang,
            families,
            assert_objects: self.assert_objects.iter().copied().collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use eqnielsen_core::catalog;

    #[test]
    fn round_trip_through_parts() {
        for entry in catalog::all() {
            for m in &entry.maps {
                let file = ProblemFile::from_parts(&entry.complex, &m.map);
                let again = ProblemFile::parse(&file.to_json()).unwrap();
                assert_eq!(file, again);
                let p = again.build().unwrap();
                assert_eq!(p.complex.facets(), entry.complex.facets());
                assert_eq!(p.map, m.map);
            }
        }
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(ProblemFile::parse("{}"), Err(CliError::Schema(_))));
        let text = r#"{"group":{"kind":"cyclic","order":2},"complex":{"vertices":2,"facets":[[0],[1]],"action":[[1,0]]},
            "map":{"images":[0,1]},"extra":1}"#;
        assert!(matches!(ProblemFile::parse(text), Err(CliError::Schema(_))));
        let text = r#"{"group":{"kind":"cyclic","order":2},"complex":{"vertices":2,"facets":[[0],[1]],"action":[[1,0]]},
            "map":{"images":[0,1]},"group_is_quotient_of":{}}"#;
        assert!(matches!(
            ProblemFile::parse(text).unwrap().build(),
            Err(CliError::Schema(_))
        ));
        let text = r#"{"group":{"kind":"cyclic","order":2},"complex":{"vertices":2,"facets":[[0],[1]],"action":[[1,0]]},
            "map":{"images":[0,1]},"jiang":{"families":{"0":"torus"}}}"#;
        assert!(matches!(
            ProblemFile::parse(text).unwrap().build(),
            Err(CliError::Schema(_))
        ));
    }
}
