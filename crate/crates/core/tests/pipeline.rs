use eqnielsen_core::analysis::{analyze, Analysis, Options, Pi1Kind, Sequential};
use eqnielsen_core::catalog::{self, CatalogEntry};
use eqnielsen_core::jiang::{ClassCount, Dichotomy, JiangDeclarations};
use eqnielsen_core::nielsen::Bound;
use eqnielsen_core::ring::Rational;

fn run(entry: &CatalogEntry, map: &str) -> Analysis {
    let options = Options {
        jiang: JiangDeclarations {
            quotient_is_jiang: entry.quotient_is_jiang,
            ..Default::default()
        },
        ..Options::default()
    };
    analyze(&entry.complex, entry.map(map).unwrap().clone(), &options, &Sequential).unwrap()
}

#[test]
fn reflection_sphere_identity() {
    let a = run(&catalog::reflection_s2(), "identity");
    assert_eq!(a.summaries.len(), 2);
    let eq = &a.summaries[0];
    assert_eq!((eq.isotropy_order, eq.pi1), (2, Pi1Kind::InfiniteCyclic));
    assert!(eq.invariants.as_ref().unwrap().lambda.is_empty());
    let free = a.summaries[1].invariants.as_ref().unwrap();
    assert_eq!(free.lambda.iter().map(|t| t.1).sum::<i64>(), 1);
    assert!(free.nu.is_empty());
    assert_eq!((free.n_lower, free.n_upper), (0, 1));
}

#[test]
fn reflection_sphere_degree_two() {
    let a = run(&catalog::reflection_s2(), "degree two");
    let eq = a.summaries[0].invariants.as_ref().unwrap();
    assert_eq!(eq.lefschetz, -1);
    let free = a.summaries[1].invariants.as_ref().unwrap();
    assert_eq!(free.lefschetz, 2);
    assert_eq!(free.lq.iter().map(|t| t.1).sum::<Rational>(), Rational::new(3, 2));
}

#[test]
fn rotation_sphere_identity() {
    let a = run(&catalog::rotation_s2(), "identity");
    let poles: Vec<_> = a.summaries.iter().filter(|s| s.isotropy_order == 2).collect();
    assert_eq!(poles.len(), 2);
    for p in poles {
        let v = p.invariants.as_ref().unwrap();
        assert_eq!((v.lefschetz, v.n_lower), (1, 1));
        assert_eq!(v.m_lower, Bound::AtLeast(1));
    }
    let free = a.summaries.iter().find(|s| s.isotropy_order == 1).unwrap();
    let v = free.invariants.as_ref().unwrap();
    assert_eq!((v.lefschetz, v.n_upper), (0, 2));
}

#[test]
fn rp3_flip_has_two_essential_classes() {
    let a = run(&catalog::rp3(), "flip");
    let s = &a.summaries[0];
    assert!(s.jiang.status.is_jiang());
    let v = s.invariants.as_ref().unwrap();
    assert_eq!(v.lefschetz, 2);
    assert_eq!(v.lambda, vec![(0, 1), (1, 1)]);
    assert_eq!(v.dichotomy.conclusion, Dichotomy::AllEssential(ClassCount::Finite(2)));
    assert_eq!(v.n_lower, 2);
}

#[test]
fn lens_identity_is_affirmative() {
    let a = run(&catalog::lens_3(), "identity");
    assert_eq!(a.summaries[0].pi1, Pi1Kind::Finite(3));
    assert!(a.converse.render().contains("G-homotopic to a fixed point free G-map"));
}
