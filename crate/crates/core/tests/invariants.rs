use proptest::prelude::*;

use koszul_transfer::bicomplex::{kappa, scaled_leibniz_coefficients, sigma, vertical_d};
use koszul_transfer::bielement::{component_basis, BiElement};
use koszul_transfer::poly::{Monomial, RingElement};
use koszul_transfer::{Field, Rational, F11};

/// Component `(i, m)` of `Λ ⊗ S` over `n` variables, with terms given as
/// `(basis index, coefficient, coefficient monomial exponents)`.
type Spec = (usize, usize, usize, Vec<(usize, i64, Vec<u32>)>);

fn arb_spec(max_m: usize) -> impl Strategy<Value = Spec> {
    (2usize..=3, 0usize..=3, 0..=max_m).prop_flat_map(|(n, i, m)| {
        let i = i.min(n);
        let terms = prop::collection::vec((any::<usize>(), -4i64..=4, prop::collection::vec(0u32..=1, n)), 1..4);
        (Just(n), Just(i), Just(m), terms)
    })
}

fn element<F: Field>((n, i, m, terms): &Spec) -> BiElement<F> {
    let basis = component_basis(*n, *i, *m);
    let mut out = BiElement::zero(*n);
    for (k, c, exps) in terms {
        let mut exps = exps.clone();
        exps.resize(*n, 0);
        let coefficient = RingElement::monomial(Monomial::new(exps), F::from_i64(*c));
        out.add_term(basis[k % basis.len()].clone(), coefficient);
    }
    out
}

proptest! {
    #[test]
    fn row_contraction(spec in arb_spec(4)) {
        let x = element::<Rational>(&spec);
        prop_assert!(kappa(&kappa(&x)).is_zero());
        prop_assert!(vertical_d(&vertical_d(&x)).is_zero());
        prop_assert!(kappa(&vertical_d(&x)).add(&vertical_d(&kappa(&x))).is_zero());
        if spec.1 + spec.2 > 0 {
            let s = sigma(&x).unwrap();
            prop_assert!(sigma(&s).unwrap().is_zero());
            prop_assert_eq!(kappa(&s).add(&sigma(&kappa(&x)).unwrap()), x);
        }
    }

    #[test]
    fn scaled_leibniz(u in arb_spec(3), v in arb_spec(3)) {
        let v = (u.0, v.1.min(u.0), v.2, v.3);
        prop_assume!(u.1 + u.2 + v.1 + v.2 > 0);
        let (alpha, beta) = (element::<Rational>(&u), element::<Rational>(&v));
        let (r, s) = scaled_leibniz_coefficients::<Rational>(u.1, u.2, v.1, v.2).unwrap();
        let lhs = sigma(&alpha.bi_product(&beta).unwrap()).unwrap();
        let rhs = sigma(&alpha).unwrap().bi_product(&beta).unwrap().scale(&r)
            .add(&alpha.bi_product(&sigma(&beta).unwrap()).unwrap().scale(&s));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn maps_commute_with_reduction_mod_11(spec in arb_spec(4)) {
        let reduce = |b: &BiElement<Rational>| b.try_map_coefficients(F11::from_rational).unwrap();
        let q = element::<Rational>(&spec);
        let p = element::<F11>(&spec);
        prop_assert_eq!(reduce(&q), p.clone());
        prop_assert_eq!(reduce(&kappa(&q)), kappa(&p));
        prop_assert_eq!(reduce(&vertical_d(&q)), vertical_d(&p));
        if spec.1 + spec.2 > 0 {
            prop_assert_eq!(reduce(&sigma(&q).unwrap()), sigma(&p).unwrap());
        }
    }
}
