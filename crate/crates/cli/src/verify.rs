//! Cross-checks of an analysis against the independent oracles.

use std::fmt::Write as _;

use eqnielsen_core::analysis::Analysis;
use eqnielsen_core::complex::PreparedMap;
use eqnielsen_core::lefschetz::{is_constant_on_classes, orbit_euler_characteristic};
use eqnielsen_core::oracle::{
    assemble_lq, assemble_nu, brute_force_reidemeister, homology_lefschetz, orbit_lefschetz, DEFAULT_BRUTE_FORCE_CAP,
};
use eqnielsen_core::ring::{augmentation, Combination};
use eqnielsen_core::Error as CoreError;

use crate::error::{CliError, Result};
use crate::problem::Problem;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn new(name: String, ok: bool, detail: String) -> Self {
        Check {
            name,
            status: if ok { Status::Pass } else { Status::Fail },
            detail,
        }
    }

    fn skip(name: String, detail: impl Into<String>) -> Self {
        Check {
            name,
            status: Status::Skip,
            detail: detail.into(),
        }
    }
}

pub struct VerifyOptions {
    pub brute_force_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            brute_force_cap: DEFAULT_BRUTE_FORCE_CAP,
        }
    }
}

fn is_identity(problem: &Problem) -> bool {
    problem.map.depth() == 0 && problem.map.images().iter().enumerate().all(|(i, &v)| i == v)
}

/// Runs every applicable oracle. Errors other than oracle caps propagate.
pub fn checks(problem: &Problem, analysis: &Analysis, opts: &VerifyOptions) -> Result<Vec<Check>> {
    let x = &problem.complex;
    let f = PreparedMap::new(x, problem.map.clone())?;
    let trivial_group = x.group().order() == 1;
    let mut out = Vec::new();
    for (o, res) in analysis.objects.iter().zip(&analysis.lefschetz) {
        let i = o.id;
        let Some(res) = res else {
            out.push(Check::skip(format!("object {i}"), "map moves the component"));
            continue;
        };
        let l = res.lefschetz_class();

        let name = format!("brute-force trace, object {i}");
        match brute_force_reidemeister(o, res, &f, opts.brute_force_cap) {
            Ok(b) => out.push(Check::new(
                name,
                b == res.lambda,
                format!("engine {:?}, brute force {:?}", res.lambda, b),
            )),
            Err(CoreError::OracleCapExceeded { size, cap }) => {
                out.push(Check::skip(name, format!("instance size {size} exceeds cap {cap}")))
            }
            Err(e) => return Err(e.into()),
        }

        let orbit = orbit_lefschetz(x, o, &f)?;
        out.push(Check::new(
            format!("augmentation, object {i}"),
            orbit == augmentation(&res.lambda) && orbit == l,
            format!(
                "augmentation of lambda {}, orbit-cell trace {orbit}",
                augmentation(&res.lambda)
            ),
        ));

        if trivial_group {
            let h = homology_lefschetz(&o.component, &f)?;
            out.push(Check::new(
                format!("homology Lefschetz, object {i}"),
                h == l,
                format!("L {l}, homology trace {h}"),
            ));
        }

        if is_identity(problem) {
            let chi = orbit_euler_characteristic(x, o);
            let expected = if chi == 0 {
                Combination::zero()
            } else {
                Combination::term(res.classes.representative(0), chi)
            };
            out.push(Check::new(
                format!("Euler characteristic, object {i}"),
                res.lambda == expected,
                format!("lambda {:?}, chi {chi}", res.lambda),
            ));
        }

        let summary = &analysis.summaries[i];
        if let Some(v) = &summary.invariants {
            if summary.jiang.status.is_jiang() {
                let constant = is_constant_on_classes(&res.lambda, &res.classes);
                out.push(Check::new(
                    format!("dichotomy, object {i}"),
                    v.dichotomy.consistent && constant,
                    format!(
                        "predicted N_G {:?}, computed {}, lambda constant on classes {constant}",
                        v.dichotomy.predicted, v.n_lower
                    ),
                ));
            }
        }
    }

    match &problem.fixed_points {
        None => out.push(Check::skip(
            "fixed-point data".into(),
            "no fixed-point data in the input",
        )),
        Some(data) => {
            let lq = assemble_lq(analysis, data)?;
            let nu = assemble_nu(analysis, data)?;
            for (i, res) in analysis.lefschetz.iter().enumerate() {
                let Some(res) = res else { continue };
                out.push(Check::new(
                    format!("fixed-point L^QAut, object {i}"),
                    lq[i] == res.rational,
                    format!("engine {:?}, from data {:?}", res.rational, lq[i]),
                ));
                let removed = analysis.removed_classes(i);
                let engine_nu = res
                    .lambda
                    .retain_keys(|k| !removed.contains(&res.classes.class_index(k)));
                out.push(Check::new(
                    format!("fixed-point nu_G, object {i}"),
                    nu[i] == engine_nu,
                    format!("engine {engine_nu:?}, from data {:?}", nu[i]),
                ));
            }
        }
    }
    Ok(out)
}

pub fn render(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        let _ = writeln!(out, "{tag} {}: {}", c.name, c.detail);
    }
    out
}

/// `Err(Mismatch)` naming the failed checks, if any.
pub fn outcome(checks: &[Check]) -> Result<()> {
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(|c| c.name.as_str())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Mismatch(failed.join(", ")))
    }
}
