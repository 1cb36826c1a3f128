//! Acceptance criteria 1 to 8. Prints one PASS or FAIL line per criterion
//! and exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use eqnielsen::exec::Threaded;
use eqnielsen::problem::ProblemFile;
use eqnielsen::report;
use eqnielsen_core::analysis::{analyze, Analysis, Options, Sequential};
use eqnielsen_core::catalog::{self, CatalogEntry};
use eqnielsen_core::complex::{GSimplicialMap, PreparedMap};
use eqnielsen_core::jiang::{ConverseVerdict, JiangDeclarations, JiangStatus};
use eqnielsen_core::lefschetz::{is_constant_on_classes, orbit_euler_characteristic};
use eqnielsen_core::nielsen::FixedPointVerdict;
use eqnielsen_core::oracle::{
    assemble_lq, brute_force_reidemeister, homology_lefschetz, orbit_lefschetz, DEFAULT_BRUTE_FORCE_CAP,
};
use eqnielsen_core::ring::{augmentation, Combination};
use eqnielsen_core::Error;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn options_for(entry: &CatalogEntry) -> Options {
    Options {
        jiang: JiangDeclarations {
            quotient_is_jiang: entry.quotient_is_jiang,
            ..Default::default()
        },
        ..Options::default()
    }
}

fn run(entry: &CatalogEntry, map: &GSimplicialMap) -> Result<Analysis, String> {
    analyze(&entry.complex, map.clone(), &options_for(entry), &Sequential).map_err(|e| format!("{} : {e}", entry.name))
}

fn problems_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../problems")
}

fn s4_benchmark() -> Outcome {
    let start = Instant::now();
    let e = catalog::reflection_s4();
    let a = run(&e, e.map("identity").unwrap())?;
    let elapsed = start.elapsed();
    let r = report::build(&a);
    let mut free = None;
    for (row, o) in r.rows.iter().zip(&r.objects) {
        let v = row.invariants.as_ref().ok_or("identity must preserve every object")?;
        ensure(v.N_G == 0, || format!("N_G = {} at object {}", v.N_G, o.id))?;
        ensure(v.M_G == ">=0" || v.M_G == "=0", || {
            format!("M_G {} at object {}", v.M_G, o.id)
        })?;
        if o.isotropy == 1 {
            free = Some((o.id, v.N_upper_G, row.gap.clone()));
        }
    }
    let (id, n_upper, gap) = free.ok_or("no free-orbit object")?;
    ensure(n_upper == 1, || format!("N^G = {n_upper} at the free object"))?;
    ensure(
        !gap.holds && !gap.codimension_ok && gap.diagnosis.contains("codimension 1"),
        || format!("gap at the free object: {}", gap.diagnosis),
    )?;
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} objects, N_G = 0 everywhere, N^G = 1 at object {id}, gap: {}, {:.2?}",
        r.rows.len(),
        gap.diagnosis,
        elapsed
    ))
}

fn euler_identity() -> Outcome {
    let entries = [
        catalog::tetrahedron(),
        catalog::reflection_s2(),
        catalog::rotation_s2(),
        catalog::free_s3(),
        catalog::rp2(),
        catalog::rp3(),
        catalog::lens_3(),
        catalog::reflection_s3(),
        catalog::reflection_s4(),
    ];
    let mut objects = 0;
    for e in &entries {
        let a = run(e, e.map("identity").unwrap())?;
        for (o, res) in a.objects.iter().zip(&a.lefschetz) {
            let res = res.as_ref().ok_or("identity must preserve every object")?;
            let chi = orbit_euler_characteristic(&e.complex, o);
            let expected = if chi == 0 {
                Combination::zero()
            } else {
                Combination::term(res.classes.representative(0), chi)
            };
            ensure(res.lambda == expected, || {
                format!("{} object {}: lambda {:?}, chi {chi}", e.name, o.id, res.lambda)
            })?;
            objects += 1;
        }
    }
    Ok(format!("{} complexes, {objects} objects", entries.len()))
}

fn augmentation_identity() -> Outcome {
    let mut maps = 0;
    let mut objects = 0;
    for e in catalog::all() {
        for m in &e.maps {
            let a = run(&e, &m.map)?;
            let f = PreparedMap::new(&e.complex, m.map.clone()).map_err(|err| err.to_string())?;
            for (i, (o, res)) in a.objects.iter().zip(&a.lefschetz).enumerate() {
                let Some(res) = res else { continue };
                let direct = orbit_lefschetz(&e.complex, o, &f).map_err(|err| err.to_string())?;
                let reported = a.summaries[i].invariants.as_ref().map(|v| v.lefschetz);
                ensure(augmentation(&res.lambda) == direct && reported == Some(direct), || {
                    format!(
                        "{} {} object {i}: s(lambda) {}, L_G {direct}",
                        e.name,
                        m.name,
                        augmentation(&res.lambda)
                    )
                })?;
                objects += 1;
            }
            maps += 1;
        }
    }
    ensure(maps >= 12, || format!("only {maps} catalog maps"))?;
    Ok(format!("{maps} maps, {objects} objects"))
}

fn classical() -> Outcome {
    let mut checked = 0;
    for e in catalog::all().into_iter().filter(|e| e.complex.group().order() == 1) {
        for m in &e.maps {
            let a = run(&e, &m.map)?;
            let f = PreparedMap::new(&e.complex, m.map.clone()).map_err(|err| err.to_string())?;
            for (o, res) in a.objects.iter().zip(&a.lefschetz) {
                let Some(res) = res else { continue };
                let h = homology_lefschetz(&o.component, &f).map_err(|err| err.to_string())?;
                ensure(h == augmentation(&res.lambda), || {
                    format!(
                        "{} {}: homology {h}, s(lambda) {}",
                        e.name,
                        m.name,
                        augmentation(&res.lambda)
                    )
                })?;
                checked += 1;
            }
        }
    }
    let oct = catalog::octahedron();
    let a = run(&oct, oct.map("antipodal").unwrap())?;
    let lambda = &a.summaries[0].invariants.as_ref().unwrap().lambda;
    ensure(lambda.is_empty(), || format!("antipodal lambda {lambda:?}"))?;
    ensure(
        matches!(a.verdict, FixedPointVerdict::VanishesGapUnmet { .. })
            && a.verdict.render().contains("theorem hypotheses unmet"),
        || format!("antipodal verdict: {}", a.verdict.render()),
    )?;
    let antipodal = a.verdict.render();
    let a = run(&oct, oct.map("degree two").unwrap())?;
    let v = a.summaries[0].invariants.as_ref().unwrap();
    ensure(v.lambda == vec![(0, 3)] && v.n_lower == 1, || {
        format!("degree two: lambda {:?}, N {}", v.lambda, v.n_lower)
    })?;
    Ok(format!(
        "{checked} components match homology; antipodal: \"{antipodal}\"; degree two: lambda = 3*[0], N = 1"
    ))
}

fn oracle_equivalence() -> Outcome {
    let mut compared = 0;
    let mut skipped = 0;
    for e in catalog::all() {
        for m in &e.maps {
            let a = run(&e, &m.map)?;
            let f = PreparedMap::new(&e.complex, m.map.clone()).map_err(|err| err.to_string())?;
            for (o, res) in a.objects.iter().zip(&a.lefschetz) {
                let Some(res) = res else { continue };
                match brute_force_reidemeister(o, res, &f, DEFAULT_BRUTE_FORCE_CAP) {
                    Ok(b) => {
                        ensure(b == res.lambda, || {
                            format!(
                                "{} {} object {}: engine {:?}, brute force {b:?}",
                                e.name, m.name, o.id, res.lambda
                            )
                        })?;
                        compared += 1;
                    }
                    Err(Error::OracleCapExceeded { .. }) => skipped += 1,
                    Err(err) => return Err(err.to_string()),
                }
            }
        }
    }
    let mut smooth = 0;
    for name in [
        "rotation_s2__identity",
        "reflection_s2__identity",
        "reflection_s4__identity",
    ] {
        let path = problems_dir().join(format!("{name}.json"));
        let p = ProblemFile::read(&path)
            .and_then(|f| f.build())
            .map_err(|err| err.to_string())?;
        let data = p
            .fixed_points
            .clone()
            .ok_or_else(|| format!("{name} has no fixed-point data"))?;
        let a = analyze(&p.complex, p.map.clone(), &p.options, &Sequential).map_err(|err| err.to_string())?;
        let lq = assemble_lq(&a, &data).map_err(|err| err.to_string())?;
        for (i, res) in a.lefschetz.iter().enumerate() {
            let res = res.as_ref().ok_or("identity must preserve every object")?;
            ensure(lq[i] == res.rational, || {
                format!(
                    "{name} object {i}: engine {:?}, fixed-point data {:?}",
                    res.rational, lq[i]
                )
            })?;
            smooth += 1;
        }
    }
    Ok(format!(
        "brute force agrees on {compared} objects ({skipped} over the cap); fixed-point L^QAut agrees on {smooth} objects"
    ))
}

fn dichotomy() -> Outcome {
    let mut checked = 0;
    let mut essential_two = false;
    for e in catalog::all() {
        for m in &e.maps {
            let a = run(&e, &m.map)?;
            for (s, res) in a.summaries.iter().zip(&a.lefschetz) {
                let (Some(v), Some(res)) = (&s.invariants, res) else {
                    continue;
                };
                if !s.jiang.status.is_jiang() {
                    continue;
                }
                ensure(
                    v.dichotomy.predicted == Some(v.n_lower) && v.dichotomy.consistent,
                    || {
                        format!(
                            "{} {} object {}: predicted {:?}, N_G {}",
                            e.name, m.name, s.id, v.dichotomy.predicted, v.n_lower
                        )
                    },
                )?;
                ensure(is_constant_on_classes(&res.lambda, &res.classes), || {
                    format!(
                        "{} {} object {}: lambda {:?} not constant",
                        e.name, m.name, s.id, res.lambda
                    )
                })?;
                essential_two |= v.lefschetz != 0 && v.n_lower == 2;
                checked += 1;
            }
        }
    }
    ensure(essential_two, || "no Jiang object with L_G != 0 and two classes".into())?;
    Ok(format!("{checked} Jiang objects, including L_G != 0 with N_G = 2"))
}

fn converse() -> Outcome {
    let e = catalog::free_s3();
    let a = run(&e, e.map("identity").unwrap())?;
    for s in &a.summaries {
        let v = s.invariants.as_ref().ok_or("identity must preserve every object")?;
        ensure(v.lefschetz == 0, || format!("L_G = {} at object {}", v.lefschetz, s.id))?;
        ensure(s.jiang.reasons.contains(&JiangStatus::FreeQuotientRule), || {
            format!(
                "object {}: free quotient rule not applied ({:?})",
                s.id, s.jiang.reasons
            )
        })?;
        ensure(s.gap.holds(), || format!("gap fails at object {}", s.id))?;
    }
    ensure(a.converse == ConverseVerdict::Affirmative, || a.converse.render())?;
    let text = a.converse.render();
    ensure(text.contains("G-homotopic to a fixed point free G-map"), || {
        text.clone()
    })?;
    Ok(format!("\"{text}\""))
}

fn canonical_report(entry: &CatalogEntry, x: &eqnielsen_core::complex::GComplex, map: &GSimplicialMap) -> String {
    let a = analyze(x, map.clone(), &options_for(entry), &Threaded { threads: 2 }).expect("catalog input analyzes");
    report::canonical(&report::build(&a))
}

fn determinism() -> Outcome {
    let entries = [
        catalog::tetrahedron(),
        catalog::octahedron(),
        catalog::reflection_s2(),
        catalog::rotation_s2(),
        catalog::rp2(),
        catalog::free_s3(),
    ];
    let mut cases = Vec::new();
    for e in &entries {
        for m in &e.maps {
            let a1 = report::build(&run(e, &m.map)?).to_json();
            let a2 = report::build(&run(e, &m.map)?).to_json();
            ensure(a1 == a2, || format!("{} {}: repeated runs differ", e.name, m.name))?;
            cases.push((e, m, canonical_report(e, &e.complex, &m.map)));
        }
    }
    let n = cases.len();
    let mut runner = TestRunner::new_with_rng(
        Config {
            cases: 120,
            failure_persistence: None,
            ..Config::default()
        },
        proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha),
    );
    let sizes: Vec<usize> = cases.iter().map(|c| c.0.complex.vertex_count()).collect();
    let strategy = (0..n).prop_flat_map(move |k| (Just(k), Just((0..sizes[k]).collect::<Vec<usize>>()).prop_shuffle()));
    let result = runner.run(&strategy, |(k, relabel)| {
        let (e, m, expected) = &cases[k];
        let x = e.complex.relabeled(&relabel).expect("relabeling is valid");
        let f = m.map.relabeled_on(&e.complex, &relabel).expect("relabeling is valid");
        let got = canonical_report(e, &x, &f);
        prop_assert_eq!(&got, expected, "{} {} relabeled by {:?}", e.name, m.name, relabel);
        Ok(())
    });
    result.map_err(|err| err.to_string())?;
    Ok(format!(
        "{n} catalog maps, repeated runs byte-identical, 120 random relabelings agree"
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("S4/Z2 benchmark", s4_benchmark),
        ("Euler characteristic identity", euler_identity),
        ("augmentation identity", augmentation_identity),
        ("classical specialization", classical),
        ("oracle equivalence", oracle_equivalence),
        ("dichotomy consistency", dichotomy),
        ("converse smoke test", converse),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {} PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
