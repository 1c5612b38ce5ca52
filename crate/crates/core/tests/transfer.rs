use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use koszul_transfer::bielement::BiElement;
use koszul_transfer::homological::{BasedModule, ChainComplex, GradedElement, GradedMap, GradedModule, Label, ModuleElement, SdrData};
use koszul_transfer::poly::RingElement;
use koszul_transfer::resolution::build_la;
use koszul_transfer::transfer::{
    ainfty_descend_simplified, basis_elements, check_generalized_leibniz, check_higher_ops_vanish, check_stasheff, enumerate_pbt,
    enumerate_pt, htt_term, verify_i_multiplicative, AinfinityStructure, DescendedProduct, DgAsAinfinity, PlanarTree, Sampling,
};
use koszul_transfer::Rational;

/// Binary trees by grafting a cherry onto each leaf of the smaller trees.
fn grafted_pbt(n: usize) -> BTreeSet<PlanarTree> {
    fn graft(t: &PlanarTree) -> Vec<PlanarTree> {
        match t {
            PlanarTree::Leaf => vec![PlanarTree::corolla(2)],
            PlanarTree::Node(children) => {
                let mut out = Vec::new();
                for (k, c) in children.iter().enumerate() {
                    for g in graft(c) {
                        let mut cs = children.clone();
                        cs[k] = g;
                        out.push(PlanarTree::Node(cs));
                    }
                }
                out
            }
        }
    }
    let mut current: BTreeSet<PlanarTree> = [PlanarTree::Leaf].into();
    for _ in 1..n {
        current = current.iter().flat_map(graft).collect();
    }
    current
}

/// All trees obtained from binary ones by contracting sets of internal edges.
fn contracted_pt(n: usize) -> BTreeSet<PlanarTree> {
    fn contractions(t: &PlanarTree) -> Vec<PlanarTree> {
        let PlanarTree::Node(children) = t else { return vec![PlanarTree::Leaf] };
        let mut out = vec![Vec::new()];
        for c in children {
            let options: Vec<Vec<PlanarTree>> = contractions(c)
                .into_iter()
                .flat_map(|ct| match &ct {
                    PlanarTree::Node(grand) => vec![vec![ct.clone()], grand.clone()],
                    PlanarTree::Leaf => vec![vec![ct.clone()]],
                })
                .collect();
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    options.iter().map(move |o| {
                        let mut p = prefix.clone();
                        p.extend(o.iter().cloned());
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(PlanarTree::Node).collect()
    }
    grafted_pbt(n).iter().flat_map(contractions).collect()
}

#[test]
fn tree_counts_match_independent_enumeration() {
    for n in 1..=6 {
        let pbt: BTreeSet<PlanarTree> = enumerate_pbt(n).into_iter().collect();
        assert_eq!(pbt.len(), enumerate_pbt(n).len());
        assert_eq!(pbt, grafted_pbt(n));
        let pt: BTreeSet<PlanarTree> = enumerate_pt(n).into_iter().collect();
        assert_eq!(pt.len(), enumerate_pt(n).len());
        assert_eq!(pt, contracted_pt(n));
    }
    let counts: Vec<usize> = (2..=5).map(|n| enumerate_pbt(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 5, 14]);
    assert_eq!(enumerate_pt(3).len(), 3);
    assert_eq!(enumerate_pt(4).len(), 11);
    assert!(enumerate_pbt(4).iter().all(PlanarTree::is_binary));
}

#[test]
fn descended_operations_on_la() {
    let res = build_la::<Rational>(2, 2).unwrap();
    let xa = DgAsAinfinity(res.xa());
    let descended = ainfty_descend_simplified(res.sdr(), &xa);
    let basis = basis_elements(res.complex());
    for x in &basis {
        for y in &basis {
            let pair = [x.clone(), y.clone()];
            assert_eq!(descended.op(&pair), res.multiply(x, y));
            assert_eq!(htt_term(&PlanarTree::corolla(2), &pair, res.sdr(), &xa).unwrap(), res.multiply(x, y));
            for z in &basis {
                let triple = [x.clone(), y.clone(), z.clone()];
                assert!(check_higher_ops_vanish(3, res.sdr(), &xa, &triple).unwrap());
                assert!(check_stasheff(&descended, &triple));
            }
        }
    }
    assert!(verify_i_multiplicative(res.sdr(), res.xa(), res.product(), Sampling::Exhaustive).passed);
    let la = DgAsAinfinity(res.product());
    for t in koszul_transfer::transfer::basis_elements(res.complex()).chunks(2) {
        let quad: Vec<GradedElement<Rational>> = t.iter().chain(basis.iter().take(2)).cloned().collect();
        assert!(check_stasheff(&la, &quad));
    }
}

#[test]
fn generalized_leibniz_before_and_after_perturbation() {
    for a in [2, 3] {
        let res = build_la::<Rational>(2, a).unwrap();
        let basis = basis_elements(res.xa().complex());
        let h = &res.perturbed().h;
        for x in &basis {
            for y in &basis {
                assert!(check_generalized_leibniz(h, res.xa(), x, y).unwrap());
            }
        }
    }
    // h-infinity loses the property at a = 3.
    let res = build_la::<Rational>(2, 3).unwrap();
    let alpha = res.xa().from_bi(&BiElement::parse("y^[2,0]", 2).unwrap()).unwrap();
    let beta = res.xa().from_bi(&BiElement::parse("e[2]", 2).unwrap()).unwrap();
    assert!(!check_generalized_leibniz(&res.sdr().h, res.xa(), &alpha, &beta).unwrap());
    assert!(check_generalized_leibniz(&res.perturbed().h, res.xa(), &alpha, &beta).unwrap());
}

/// `X_0 = {1, e}`, `X_1 = {w}`, zero differential, `e² = e`, `ew = we = w`,
/// and the retract of `X` onto itself with `h(1) = w`.
fn synthetic() -> (SdrData<Rational>, DescendedProduct<Rational>) {
    let n = 1;
    let modules = Arc::new(GradedModule::new(
        n,
        vec![
            BasedModule::new(vec![(Label::Named("1".into()), 0), (Label::Named("e".into()), 0)]),
            BasedModule::new(vec![(Label::Named("w".into()), 0)]),
        ],
    ));
    let c = ChainComplex::zero(modules.clone());
    let id = GradedMap::identity(modules.clone());
    let h = GradedMap::from_fn(modules.clone(), modules.clone(), 1, |d, k| {
        Ok(if d == 0 && k == 0 { ModuleElement::basis(n, 0) } else { ModuleElement::zero(n) })
    })
    .unwrap();
    let sdr = SdrData::new(c.clone(), c.clone(), id.clone(), id, h).unwrap();
    let one = |k| ModuleElement::<Rational>::term(k, RingElement::one(n));
    let mut table = BTreeMap::new();
    table.insert((0, 0, 0, 0), one(0));
    table.insert((0, 0, 0, 1), one(1));
    table.insert((0, 1, 0, 0), one(1));
    table.insert((0, 1, 0, 1), one(1));
    table.insert((0, 0, 1, 0), one(0));
    table.insert((1, 0, 0, 0), one(0));
    table.insert((0, 1, 1, 0), one(0));
    table.insert((1, 0, 0, 1), one(0));
    (sdr, DescendedProduct::from_table(c, table, one(0)))
}

#[test]
fn higher_operations_survive_without_the_hypotheses() {
    let (sdr, prod) = synthetic();
    assert!(!sdr.verify(true).passed());
    let ops = DgAsAinfinity(&prod);
    let one = GradedElement::basis(0, 1, 0);
    let e = GradedElement::basis(0, 1, 1);
    let inputs = [one.clone(), one, e];
    let left = PlanarTree::parse("((.,.),.)").unwrap();
    let term = htt_term(&left, &inputs, &sdr, &ops).unwrap();
    assert_eq!(term, GradedElement::basis(1, 1, 0));
    assert!(!check_higher_ops_vanish(3, &sdr, &ops, &inputs).unwrap());
    assert!(htt_term(&left, &inputs[..2], &sdr, &ops).is_err());
}
