use crate::error::{Error, Result};
use crate::homological::{GradedElement, GradedMap, ModuleElement};
use crate::report::{Check, Report};
use crate::resolution::LaResolution;
use crate::scalar::Field;
use crate::transfer::basis_elements;

/// The comparison map `f_{b,a}: L_b → L_a` lifting `R/m^b → R/m^a`.
#[derive(Clone, Debug)]
pub struct ComparisonMap<F: Field> {
    pub b: usize,
    pub a: usize,
    pub map: GradedMap<F>,
}

/// The projection `X_b → X_a` dropping the columns `j >= a`.
pub fn projection<F: Field>(from: &LaResolution<F>, to: &LaResolution<F>) -> Result<GradedMap<F>> {
    let source = from.xa().complex().modules().clone();
    let target = to.xa().complex().modules().clone();
    let nvars = from.n();
    GradedMap::from_fn(source.clone(), target.clone(), 0, |d, k| {
        let label = source.component(d).label(k);
        Ok(match target.component(d).index_of(label) {
            Some(idx) => ModuleElement::basis(nvars, idx),
            None => ModuleElement::zero(nvars),
        })
    })
}

/// `f_{b,a} = p∞^{(a)} ∘ π_{b,a} ∘ i∞^{(b)}`.
pub fn comparison_map<F: Field>(lb: &LaResolution<F>, la: &LaResolution<F>) -> Result<ComparisonMap<F>> {
    if lb.n() != la.n() {
        return Err(Error::VariableMismatch(lb.n(), la.n()));
    }
    if lb.a() < la.a() {
        return Err(Error::InvalidConfig(format!("comparison maps need b >= a, got b = {} and a = {}", lb.a(), la.a())));
    }
    let pi = projection(lb, la)?;
    let map = la.sdr().p.compose(&pi)?.compose(&lb.sdr().i)?;
    Ok(ComparisonMap { b: lb.a(), a: la.a(), map })
}

impl<F: Field> ComparisonMap<F> {
    pub fn apply(&self, x: &GradedElement<F>) -> GradedElement<F> {
        self.map.apply(x)
    }

    /// Chain map, identity on `R`, entries in `m^{b−a}` above degree 0,
    /// multiplicativity on basis pairs, and agreement with
    /// `p π (hδ)^{b−a} i` built from the unperturbed retracts.
    pub fn verify(&self, lb: &LaResolution<F>, la: &LaResolution<F>) -> Report {
        let mut r = Report::new();
        let chain = la
            .differential()
            .compose(&self.map)
            .and_then(|lhs| Ok((lhs, self.map.compose(lb.differential())?)));
        r.push(match chain {
            Ok((lhs, rhs)) => lhs.compare(&rhs, "f chain map"),
            Err(e) => failed("f chain map", e),
        });

        let mut unit = Check::new("f is the identity on R");
        let one = GradedElement::basis(0, lb.n(), 0);
        unit.item(self.apply(&one) == one, || "1".into());
        r.push(unit);

        let power = (self.b - self.a) as u32;
        let mut filtration = Check::new("entries in m^(b-a)");
        for (d, block) in self.map.blocks().iter().enumerate().skip(1) {
            for (row, col, e) in block.triples() {
                filtration.item(e.in_maximal_ideal_power(power), || format!("degree {} entry ({}, {})", d, row, col));
            }
        }
        r.push(filtration);

        let mut mult = Check::new("f multiplicative");
        let basis = basis_elements(lb.complex());
        for x in &basis {
            for y in &basis {
                let lhs = self.apply(&lb.multiply(x, y));
                let rhs = la.multiply(&self.apply(x), &self.apply(y));
                mult.item(lhs.vector == rhs.vector, || format!("({}, {})", lb.display(x), lb.display(y)));
            }
        }
        r.push(mult);

        r.push(match self.unperturbed_form(lb, la) {
            Ok(alt) => {
                let mut c = Check::new("f = p pi (h delta)^(b-a) i");
                for d in 1..self.map.blocks().len() {
                    let diffs = self.map.blocks()[d].diff_positions(&alt.blocks()[d]);
                    c.items += self.map.blocks()[d].source().rank();
                    for (row, col) in diffs {
                        c.fail(format!("degree {} entry ({}, {})", d, row, col));
                    }
                }
                c
            }
            Err(e) => failed("f = p pi (h delta)^(b-a) i", e),
        });
        r
    }

    fn unperturbed_form(&self, lb: &LaResolution<F>, la: &LaResolution<F>) -> Result<GradedMap<F>> {
        let pi = projection(lb, la)?;
        let hd = lb.perturbed().h.compose(&lb.perturbed().delta)?;
        let mut inner = lb.unperturbed().i.clone();
        for _ in 0..(self.b - self.a) {
            inner = hd.compose(&inner)?;
        }
        la.unperturbed().p.compose(&pi)?.compose(&inner)
    }

    /// `f_{c,a} = f_{b,a} ∘ f_{c,b}` with `self = f_{c,a}`.
    pub fn verify_composition(&self, fba: &ComparisonMap<F>, fcb: &ComparisonMap<F>) -> Check {
        match fba.map.compose(&fcb.map) {
            Ok(m) => self.map.compare(&m, "f_{c,a} = f_{b,a} f_{c,b}"),
            Err(e) => failed("f_{c,a} = f_{b,a} f_{c,b}", e),
        }
    }
}

fn failed(name: &str, e: Error) -> Check {
    let mut c = Check::new(name);
    c.fail(e.to_string());
    c
}
