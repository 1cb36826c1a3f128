//! File formats, reports, oracle cross-checks and the `nf` command surface
//! on top of `eqnielsen-core`.

pub mod error;
pub mod exec;
pub mod problem;
pub mod report;
pub mod verify;

use eqnielsen_core::analysis::{analyze, Analysis};
use eqnielsen_core::fundamental::FundObject;

pub use error::{CliError, Result};
pub use problem::{Problem, ProblemFile};

/// Runs the pipeline on a parsed problem with per-object threads.
pub fn run(problem: &Problem) -> Result<Analysis> {
    let a = analyze(
        &problem.complex,
        problem.map.clone(),
        &problem.options,
        &exec::Threaded::from_env(),
    )?;
    let decl = &problem.options.jiang;
    if let Some(i) = decl
        .families
        .keys()
        .chain(&decl.assert_objects)
        .find(|&&i| i >= a.objects.len())
    {
        return Err(CliError::Schema(format!(
            "jiang declaration names object {i}, which does not exist"
        )));
    }
    Ok(a)
}

/// The objects of the fundamental category, without touching the map.
pub fn objects(problem: &Problem) -> Result<Vec<FundObject>> {
    let x = &problem.complex;
    if let Some((g, s)) = x.regularity_violation() {
        return Err(CliError::Core(eqnielsen_core::Error::input(format!(
            "action is not regular: element {g} maps simplex {s:?} to itself without fixing it"
        ))));
    }
    Ok(eqnielsen_core::fundamental::objects(x, problem.options.coset_cap)?)
}
