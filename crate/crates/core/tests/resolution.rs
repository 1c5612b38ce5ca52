use koszul_transfer::bielement::BiElement;
use koszul_transfer::homological::{ChainComplex, GradedElement};
use koszul_transfer::poly::RingElement;
use koszul_transfer::resolution::{build_la, comparison_map, expected_rank, verify_equivariance, verify_reduction, verify_resolution, verify_resolution_complex};
use koszul_transfer::transfer::{verify_dg_axioms, Sampling};
use koszul_transfer::{Rational, F11};

fn show(report: &koszul_transfer::report::Report) -> String {
    report.failure_summary()
}

#[test]
fn resolutions_are_minimal_and_exact() {
    for (n, a) in [(1, 1), (1, 3), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)] {
        let res = build_la::<Rational>(n, a).unwrap();
        let r = verify_resolution(&res, (a + n + 2) as u32);
        assert!(r.passed(), "n={} a={}: {}", n, a, show(&r));
        let ranks: Vec<usize> = (0..n).map(|i| expected_rank(n, a, i)).collect();
        assert_eq!(&res.ranks()[1..], &ranks[..]);
    }
}

#[test]
fn products_are_dg_algebras() {
    for (n, a) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let res = build_la::<Rational>(n, a).unwrap();
        let r = verify_dg_axioms(res.product(), Sampling::Exhaustive, Sampling::Exhaustive);
        assert!(r.passed(), "n={} a={}: {}", n, a, show(&r));
        assert!(res.verify_closed_forms().passed());
        assert!(verify_equivariance(&res).passed());
    }
}

#[test]
fn comparison_maps() {
    let l1 = build_la::<Rational>(2, 1).unwrap();
    let l2 = build_la::<Rational>(2, 2).unwrap();
    let l3 = build_la::<Rational>(2, 3).unwrap();
    let f21 = comparison_map(&l2, &l1).unwrap();
    let y11 = l2.element_from_bi(&BiElement::parse("y^[2,0]", 2).unwrap()).unwrap();
    let image = f21.apply(&y11);
    let expected = l1.element_from_bi(&BiElement::parse("-x1*y^[1,0]", 2).unwrap()).unwrap();
    assert_eq!(image, expected);
    for (lb, la) in [(&l2, &l1), (&l3, &l2), (&l3, &l1), (&l2, &l2)] {
        let f = comparison_map(lb, la).unwrap();
        let r = f.verify(lb, la);
        assert!(r.passed(), "f_{{{},{}}}: {}", lb.a(), la.a(), show(&r));
    }
    let f31 = comparison_map(&l3, &l1).unwrap();
    let f32 = comparison_map(&l3, &l2).unwrap();
    assert!(f31.verify_composition(&f21, &f32).passed);
    assert!(comparison_map(&l1, &l2).is_err());
}

#[test]
fn prime_field_matches_rationals() {
    let q = build_la::<Rational>(2, 3).unwrap();
    let p = build_la::<F11>(2, 3).unwrap();
    let r = verify_reduction(&p, &q);
    assert!(r.passed(), "{}", show(&r));
    assert!(build_la::<koszul_transfer::F3>(2, 2).is_err());
}

#[test]
fn ring_inputs_live_in_degree_zero() {
    let res = build_la::<Rational>(2, 2).unwrap();
    let x = res.element_from_bi(&BiElement::parse("x1^2 - x2", 2).unwrap()).unwrap();
    assert_eq!(x.degree, 0);
    let one = GradedElement::basis(0, 2, 0);
    assert_eq!(res.multiply(&one, &x), x);
    assert!(res.element_from_bi(&BiElement::parse("e[1]*y^[1,0]", 2).unwrap()).is_err());
}

#[test]
fn corrupted_differential_is_caught() {
    let res = build_la::<Rational>(2, 2).unwrap();
    let d = res.differential();
    // zeroing one entry of the first differential breaks H0 and exactness
    let zeroed = ChainComplex::new(d.with_entry(1, 0, 1, RingElement::zero(2))).unwrap();
    let r = verify_resolution_complex(&zeroed, 2, 2, 6);
    assert!(!r.passed());
    assert!(!r.check("H0 is R/m^a").unwrap().passed);
    // a unit entry breaks minimality and homogeneity
    let unit = ChainComplex::new(d.with_entry(2, 0, 0, RingElement::one(2))).unwrap();
    let r = verify_resolution_complex(&unit, 2, 2, 6);
    assert!(!r.check("minimality").unwrap().passed);
    assert!(!r.check("differential homogeneous").unwrap().passed);
    assert!(!r.check("minimality").unwrap().failures.is_empty());
}
