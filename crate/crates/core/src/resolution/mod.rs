//! The minimal free resolution `L_a` of `R/m^a`: `R` in degree 0 and
//! `L_{i,a} = ker κ_{i,a} ⊆ Λ^i ⊗ S_a` in degree `i + 1`, with differential,
//! product and comparison maps obtained by perturbing the row retracts of
//! `X_a` by `δ = d`.

mod comparison;
mod verify;

use std::sync::Arc;

pub use comparison::{comparison_map, projection, ComparisonMap};
pub use verify::{hilbert_function, verify_equivariance, verify_reduction, verify_resolution, verify_resolution_complex};

use crate::bicomplex::{binomial, build_xa, check_admissible, epsilon, kappa, module_to_bi, product_xa, row_complex, sigma, vertical_d, TruncatedComplexXa};
use crate::bielement::{component_basis, BiBasisVector, BiElement};
use crate::error::{Error, Result};
use crate::homological::{retract_from_truncation, BasedModule, ChainComplex, GradedElement, GradedMap, GradedModule, Label, ModuleElement, SdrData};
use crate::linalg::Matrix;
use crate::perturbation::{perturb, verify_perturbed_special, PerturbedSdr};
use crate::poly::RingElement;
use crate::report::{Check, Report};
use crate::scalar::Field;
use crate::transfer::{descend_product, DescendedProduct, DgProduct};

/// `Σ_{t>=1} (−1)^{t+1} C(n, i+t) C(n+a−t−1, a−t)`.
pub fn expected_rank(n: usize, a: usize, i: usize) -> usize {
    let mut total: i64 = 0;
    for t in 1..=a.min(n.saturating_sub(i)) {
        let term = (binomial(n, i + t) * binomial(n + a - t - 1, a - t)) as i64;
        total += if t % 2 == 1 { term } else { -term };
    }
    total as usize
}

/// A basis of `L_{i,a} = ker κ_{i,a}` by constant vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct LiaBasis<F: Field> {
    /// Basis vectors of `Λ^i ⊗ S_a`, in order.
    pub component: Vec<BiBasisVector>,
    /// Free columns of the rref of `κ_{i,a}`; `vectors[k]` has a 1 at
    /// `free[k]` and 0 at the other free columns.
    pub free: Vec<usize>,
    pub vectors: Vec<BiElement<F>>,
}

impl<F: Field> LiaBasis<F> {
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Coordinates of `v ∈ L_{i,a}`; an error if `v` is not in the span.
    pub fn coordinates(&self, v: &BiElement<F>) -> Result<Vec<RingElement<F>>> {
        let coords: Vec<RingElement<F>> = self.free.iter().map(|&f| v.coefficient(&self.component[f])).collect();
        let mut rebuilt = BiElement::zero(v.nvars());
        for (c, b) in coords.iter().zip(&self.vectors) {
            rebuilt.add_assign_ref(&b.scale_ring(c));
        }
        if rebuilt != *v {
            return Err(Error::Support(format!("{} does not lie in the kernel of kappa", v)));
        }
        Ok(coords)
    }
}

/// Kernel basis of `κ_{i,a}: Λ^i ⊗ S_a → Λ^{i−1} ⊗ S_{a+1}` from the rref
/// with first-nonzero pivoting.
pub fn kernel_basis_lia<F: Field>(n: usize, a: usize, i: usize) -> LiaBasis<F> {
    let component = component_basis(n, i, a);
    let target: Vec<BiBasisVector> = if i == 0 { Vec::new() } else { component_basis(n, i - 1, a + 1) };
    let index: std::collections::HashMap<&BiBasisVector, usize> = target.iter().enumerate().map(|(k, v)| (v, k)).collect();
    let mut m = Matrix::zeros(target.len(), component.len());
    for (col, v) in component.iter().enumerate() {
        for (w, c) in kappa(&BiElement::<F>::basis(v.clone())).terms() {
            m.add_to(index[w], col, c.as_constant().expect("kappa has constant entries"));
        }
    }
    let (_, pivots) = m.rref();
    let free: Vec<usize> = (0..component.len()).filter(|c| !pivots.contains(c)).collect();
    let vectors = m
        .kernel_basis()
        .into_iter()
        .map(|coords| {
            let mut b = BiElement::zero(n);
            for (k, c) in coords.into_iter().enumerate() {
                b.add_term(component[k].clone(), RingElement::constant(n, c));
            }
            b
        })
        .collect();
    LiaBasis { component, free, vectors }
}

/// The resolution `L_a` together with the data it was built from.
#[derive(Clone, Debug)]
pub struct LaResolution<F: Field> {
    n: usize,
    a: usize,
    xa: TruncatedComplexXa<F>,
    unperturbed: SdrData<F>,
    perturbed: PerturbedSdr<F>,
    product: DescendedProduct<F>,
    bases: Vec<LiaBasis<F>>,
    build_report: Report,
}

fn bottom_retract<F: Field>(n: usize) -> Result<SdrData<F>> {
    let one = BiBasisVector::new(crate::exterior::ExtMonomial::one(), crate::poly::Monomial::one(n));
    let xm = Arc::new(GradedModule::new(n, vec![BasedModule::from_bi_basis([one])]));
    let ym = Arc::new(GradedModule::new(n, vec![BasedModule::new(vec![(Label::One, 0)])]));
    let i = GradedMap::from_fn(ym.clone(), xm.clone(), 0, |_, _| Ok(ModuleElement::basis(n, 0)))?;
    let p = GradedMap::from_fn(xm.clone(), ym.clone(), 0, |_, _| Ok(ModuleElement::basis(n, 0)))?;
    let h = GradedMap::zero(xm.clone(), xm.clone(), 1);
    SdrData::new(ChainComplex::zero(xm), ChainComplex::zero(ym), i, p, h)
}

/// Builds `L_a` over `F`: the special retract of `(X_a, κ)` onto `(L_a, 0)`
/// assembled row by row, perturbed by `δ = d`. The retract identities, the
/// perturbation lemma conclusions and the kernel bases are verified; any
/// failure aborts with the report.
pub fn build_la<F: Field>(n: usize, a: usize) -> Result<LaResolution<F>> {
    check_admissible::<F>(n, a)?;
    let xa = build_xa::<F>(n, a)?;
    let mut report = Report::new();
    let mut parts = vec![bottom_retract::<F>(n)?];
    let mut stalks: Vec<Option<Vec<BiElement<F>>>> = vec![None; n];
    let mut special = Check::new("row retracts special");
    for r in 1..=(a + n - 1) {
        let (row, s) = row_complex::<F>(n, r)?;
        let cutoff = r as i64 - a as i64 + 1;
        let block = cutoff.max(1) as usize - 1;
        let retract = retract_from_truncation(&row, &s, cutoff, block)?;
        special.item(retract.special, || format!("row {}", r));
        if let Some(c) = retract.stalk_degree {
            let lower = row.component(c as i64 - 1);
            let vectors = retract.stalk_basis.iter().map(|v| module_to_bi(lower, v)).collect::<Result<Vec<_>>>()?;
            stalks[c - 1] = Some(vectors);
        }
        parts.push(retract.sdr);
    }
    report.push(special);
    let unperturbed = SdrData::direct_sum(&parts)?;
    if **unperturbed.x.modules() != **xa.complex().modules() {
        return Err(Error::ShapeMismatch("row retracts do not reassemble X_a".into()));
    }
    report.push(unperturbed.x.differential().compare(xa.kappa(), "row differentials are kappa"));
    report.extend(unperturbed.verify(true).prefixed("retract/"));

    let bases: Vec<LiaBasis<F>> = (0..n).map(|i| kernel_basis_lia::<F>(n, a, i)).collect();
    let mut kernel = Check::new("stalk bases are the kernel bases");
    for (i, (b, s)) in bases.iter().zip(&stalks).enumerate() {
        kernel.item(s.as_deref() == Some(&b.vectors[..]), || format!("L_{{{},{}}}", i, a));
    }
    report.push(kernel);

    let perturbed = perturb(&unperturbed, xa.d(), true, a + 1)?;
    let mut order = Check::new("nilpotency order <= a");
    order.item(perturbed.nilpotency_order <= a, || format!("order {}", perturbed.nilpotency_order));
    report.push(order);
    report.extend(verify_perturbed_special(&perturbed).prefixed("perturbed/"));
    let report = report.into_result()?;
    let product = descend_product(&perturbed.sdr, &xa)?;
    Ok(LaResolution { n, a, xa, unperturbed, perturbed, product, bases, build_report: report })
}

impl<F: Field> LaResolution<F> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn xa(&self) -> &TruncatedComplexXa<F> {
        &self.xa
    }

    /// `L_a` with its differential `∂∞`.
    pub fn complex(&self) -> &ChainComplex<F> {
        &self.perturbed.sdr.y
    }

    pub fn differential(&self) -> &GradedMap<F> {
        self.complex().differential()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.complex().modules().ranks()
    }

    /// The perturbed retract `(X_a, κ + d) ⇄ (L_a, ∂∞)`.
    pub fn sdr(&self) -> &SdrData<F> {
        &self.perturbed.sdr
    }

    pub fn perturbed(&self) -> &PerturbedSdr<F> {
        &self.perturbed
    }

    /// The special retract `(X_a, κ) ⇄ (L_a, 0)` before perturbation.
    pub fn unperturbed(&self) -> &SdrData<F> {
        &self.unperturbed
    }

    pub fn product(&self) -> &DescendedProduct<F> {
        &self.product
    }

    pub fn basis(&self, i: usize) -> &LiaBasis<F> {
        &self.bases[i]
    }

    pub fn build_report(&self) -> &Report {
        &self.build_report
    }

    pub fn multiply(&self, alpha: &GradedElement<F>, beta: &GradedElement<F>) -> GradedElement<F> {
        self.product.multiply(alpha, beta)
    }

    /// The element of `L_a` represented by `b`: a combination of `1 ⊗ 1`
    /// stands for an element of `R`, anything else must lie in some `L_{i,a}`.
    pub fn element_from_bi(&self, b: &BiElement<F>) -> Result<GradedElement<F>> {
        let n = self.n;
        if b.terms().all(|(v, _)| v.internal_degree() == 0) {
            let one = BiBasisVector::new(crate::exterior::ExtMonomial::one(), crate::poly::Monomial::one(n));
            return Ok(GradedElement::new(0, ModuleElement::term(0, b.coefficient(&one))));
        }
        let i = b.lambda_degree().ok_or_else(|| Error::Inhomogeneous("mixed exterior degrees".into()))?;
        if i >= n || b.terms().any(|(v, _)| v.column() != self.a) {
            return Err(Error::Support(format!("{} is not in any L_{{i,{}}}", b, self.a)));
        }
        let coords = self.bases[i].coordinates(b)?;
        let mut v = ModuleElement::zero(n);
        for (k, c) in coords.into_iter().enumerate() {
            v.add_term(k, c);
        }
        Ok(GradedElement::new(i as i64 + 1, v))
    }

    /// Representative in `Λ ⊗ S`: `r ↦ r·(1 ⊗ 1)` in degree 0, `Σ c_k b_k` above.
    pub fn element_to_bi(&self, x: &GradedElement<F>) -> BiElement<F> {
        let n = self.n;
        if x.degree == 0 {
            return BiElement::one(n).scale_ring(&x.vector.get(0));
        }
        let Some(basis) = self.bases.get((x.degree - 1) as usize).filter(|_| x.degree > 0) else {
            return BiElement::zero(n);
        };
        let mut out = BiElement::zero(n);
        for (k, c) in x.vector.entries() {
            out.add_assign_ref(&basis.vectors[k].scale_ring(c));
        }
        out
    }

    pub fn display(&self, x: &GradedElement<F>) -> String {
        x.vector.display_in(self.complex().component(x.degree)).to_string()
    }

    /// `i∞` on a representative, via `Σ_k (−σd)^k σ` (and `ε^{-1}` on `R`).
    pub fn lift(&self, x: &GradedElement<F>) -> Result<BiElement<F>> {
        let b = self.element_to_bi(x);
        if x.degree == 0 {
            return Ok(b);
        }
        let mut term = sigma(&b)?;
        let mut total = term.clone();
        while !term.is_zero() {
            term = sigma(&vertical_d(&term))?.neg();
            total.add_assign_ref(&term);
        }
        Ok(total)
    }

    /// Product by the explicit formula: `κ` of the `S_{a−1}` part of `α̃β̃`
    /// with `α̃ = i∞(α)`; degree-0 factors act by scaling.
    pub fn multiply_explicit(&self, alpha: &GradedElement<F>, beta: &GradedElement<F>) -> Result<GradedElement<F>> {
        let degree = alpha.degree + beta.degree;
        if degree as usize > self.n {
            return Ok(GradedElement::zero(degree, self.n));
        }
        if alpha.degree == 0 || beta.degree == 0 {
            let (scalar, other) = if alpha.degree == 0 { (alpha, beta) } else { (beta, alpha) };
            let r = scalar.vector.get(0);
            return Ok(GradedElement::new(other.degree, other.vector.scale_ring(&r)));
        }
        let product = product_xa(&self.lift(alpha)?, &self.lift(beta)?, self.a)?;
        let column = product.filter(|v| v.column() + 1 == self.a);
        let image = kappa(&column);
        if image.is_zero() {
            return Ok(GradedElement::zero(degree, self.n));
        }
        self.element_from_bi(&image)
    }

    /// Closed forms of the perturbed maps: `i∞` by its series, `p∞` equal to
    /// `κ` on `Λ^i ⊗ S_{a−1}` (`i > 0`), `(−1)^j ε` on `Λ^0 ⊗ S_j`, and 0
    /// elsewhere, and `h∞ = −σ Σ_k (−dσ)^k`.
    pub fn verify_closed_forms(&self) -> Report {
        let n = self.n;
        let sdr = self.sdr();
        let mut i_check = Check::new("i-infinity series form");
        for d in 0..self.complex().len() as i64 {
            for k in 0..self.complex().component(d).rank() {
                let x = GradedElement::basis(d, n, k);
                let expected = self.lift(&x).and_then(|b| self.xa.to_vector(d, &b));
                let actual = sdr.i.apply(&x).vector;
                i_check.item(expected.as_ref() == Ok(&actual), || format!("[{}]{}", d, self.display(&x)));
            }
        }
        let mut p_check = Check::new("p-infinity piecewise form");
        let mut h_check = Check::new("h-infinity series form");
        for d in 0..self.xa.complex().len() as i64 {
            let module = self.xa.module(d).clone();
            for k in 0..module.rank() {
                let Label::Bi(v) = module.label(k) else { continue };
                let b = BiElement::basis(v.clone());
                let expected = if d == 0 {
                    let sign = if v.column() % 2 == 0 { F::one() } else { -F::one() };
                    epsilon(&b).map(|e| GradedElement::new(0, ModuleElement::term(0, e.scale(&sign))))
                } else if v.column() + 1 == self.a {
                    self.element_from_bi(&kappa(&b))
                } else {
                    Ok(GradedElement::zero(d, n))
                };
                let actual = sdr.p.apply(&GradedElement::basis(d, n, k));
                p_check.item(expected.map(|e| e.vector == actual.vector).unwrap_or(false), || v.to_string());

                let mut term = b.clone();
                let mut total = BiElement::zero(n);
                let mut ok = true;
                loop {
                    match sigma(&term) {
                        Ok(s) => {
                            let s = s.neg();
                            if s.is_zero() {
                                break;
                            }
                            total.add_assign_ref(&s);
                            term = vertical_d(&s);
                        }
                        Err(_) => {
                            ok = false;
                            break;
                        }
                    }
                }
                let actual = sdr.h.apply(&GradedElement::basis(d, n, k));
                let expected = self.xa.to_vector(d + 1, &total);
                h_check.item(ok && expected.as_ref() == Ok(&actual.vector), || v.to_string());
            }
        }
        let mut r = Report::new();
        r.push(i_check);
        r.push(p_check);
        r.push(h_check);
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn rank_formula_examples() {
        assert_eq!(expected_rank(2, 2, 1), 2);
        assert_eq!(expected_rank(2, 2, 0), 3);
        for n in 1..5 {
            for a in 1..5 {
                assert_eq!(expected_rank(n, a, n - 1), binomial(n + a - 2, a - 1));
            }
        }
        let ranks: Vec<usize> = (0..3).map(|i| expected_rank(3, 2, i)).collect();
        assert_eq!(ranks, vec![6, 8, 3]);
    }

    #[test]
    fn kernel_bases_for_n2_a2() {
        let l0 = kernel_basis_lia::<Rational>(2, 2, 0);
        assert_eq!(l0.rank(), 3);
        let l1 = kernel_basis_lia::<Rational>(2, 2, 1);
        let shown: Vec<String> = l1.vectors.iter().map(|b| b.to_string()).collect();
        assert_eq!(shown, vec!["-e[1]*y^[1,1] + e[2]*y^[2,0]", "-e[1]*y^[0,2] + e[2]*y^[1,1]"]);
        assert_eq!(kernel_basis_lia::<Rational>(2, 1, 1).rank(), 1);
    }

    fn parse(res: &LaResolution<Rational>, text: &str) -> GradedElement<Rational> {
        res.element_from_bi(&BiElement::parse(text, res.n()).unwrap()).unwrap()
    }

    #[test]
    fn n2_a2_values() {
        let res = build_la::<Rational>(2, 2).unwrap();
        assert_eq!(res.ranks(), vec![1, 3, 2]);
        let y11 = parse(&res, "y^[2,0]");
        let y22 = parse(&res, "y^[0,2]");
        assert_eq!(res.display(&res.differential().apply(&y11)), "-x1^2");
        assert_eq!(res.display(&res.multiply(&y11, &y22)), "-x2*b1 - x1*b2");
        let b1 = GradedElement::basis(2, 2, 0);
        let y12 = parse(&res, "y^[1,1]");
        let expected = y12.vector.scale_ring(&RingElement::variable(2, 0)).sub(&y11.vector.scale_ring(&RingElement::variable(2, 1)));
        assert_eq!(res.differential().apply(&b1).vector, expected);
        let lifted = res.xa().to_bi(&res.sdr().i.apply(&y11));
        assert_eq!(lifted, BiElement::parse("e[1]*y^[1,0] - x1*e[1]", 2).unwrap());
        assert!(res.verify_closed_forms().passed());
    }

    #[test]
    fn explicit_product_agrees() {
        let res = build_la::<Rational>(3, 2).unwrap();
        let basis = crate::transfer::basis_elements(res.complex());
        for x in &basis {
            for y in &basis {
                assert_eq!(res.multiply_explicit(x, y).unwrap().vector, res.multiply(x, y).vector);
            }
        }
    }
}
