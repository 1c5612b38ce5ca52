use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::homological::{in_submodule, ChainComplex, GradedElement, GradedMap, ModuleElement, SdrData};
use crate::report::{Check, Report};
use crate::scalar::Field;

/// A graded-bilinear product on a chain complex of based free modules.
pub trait DgProduct<F: Field> {
    fn complex(&self) -> &ChainComplex<F>;

    /// Product of basis vector `k` in degree `d1` with basis vector `l` in
    /// degree `d2`, as coordinates in degree `d1 + d2`.
    fn multiply_basis(&self, d1: i64, k: usize, d2: i64, l: usize) -> ModuleElement<F>;

    /// The unit, in degree 0.
    fn unit(&self) -> ModuleElement<F>;

    fn multiply(&self, a: &GradedElement<F>, b: &GradedElement<F>) -> GradedElement<F> {
        let nvars = self.complex().nvars();
        let mut out = ModuleElement::zero(nvars);
        for (k, c) in a.vector.entries() {
            for (l, e) in b.vector.entries() {
                out.add_scaled(&c.mul(e), &self.multiply_basis(a.degree, k, b.degree, l));
            }
        }
        GradedElement::new(a.degree + b.degree, out)
    }
}

/// Every basis vector of a complex as a graded element, degree by degree.
pub fn basis_elements<F: Field>(c: &ChainComplex<F>) -> Vec<GradedElement<F>> {
    let mut out = Vec::new();
    for d in 0..c.len() as i64 {
        for k in 0..c.component(d).rank() {
            out.push(GradedElement::basis(d, c.nvars(), k));
        }
    }
    out
}

pub(crate) fn describe<F: Field>(c: &ChainComplex<F>, x: &GradedElement<F>) -> String {
    format!("[{}]{}", x.degree, x.vector.display_in(c.component(x.degree)))
}

/// A product tabulated on basis pairs.
#[derive(Clone, Debug)]
pub struct DescendedProduct<F: Field> {
    complex: ChainComplex<F>,
    table: BTreeMap<(i64, usize, i64, usize), ModuleElement<F>>,
    unit: ModuleElement<F>,
}

impl<F: Field> DescendedProduct<F> {
    /// Builds from explicit values; missing pairs multiply to zero.
    pub fn from_table(complex: ChainComplex<F>, table: BTreeMap<(i64, usize, i64, usize), ModuleElement<F>>, unit: ModuleElement<F>) -> Self {
        DescendedProduct { complex, table, unit }
    }

    /// Nonzero table entries keyed by `(d1, k, d2, l)`.
    pub fn table(&self) -> &BTreeMap<(i64, usize, i64, usize), ModuleElement<F>> {
        &self.table
    }

    /// Replaces one table entry (for negative controls).
    pub fn set_entry(&mut self, key: (i64, usize, i64, usize), value: ModuleElement<F>) {
        if value.is_zero() {
            self.table.remove(&key);
        } else {
            self.table.insert(key, value);
        }
    }

    pub fn try_map_coefficients<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<DescendedProduct<G>> {
        let mut table = BTreeMap::new();
        for (k, v) in &self.table {
            table.insert(*k, v.try_map_coefficients(&f)?);
        }
        Some(DescendedProduct {
            complex: self.complex.try_map_coefficients(&f)?,
            table,
            unit: self.unit.try_map_coefficients(&f)?,
        })
    }
}

impl<F: Field> DgProduct<F> for DescendedProduct<F> {
    fn complex(&self) -> &ChainComplex<F> {
        &self.complex
    }

    fn multiply_basis(&self, d1: i64, k: usize, d2: i64, l: usize) -> ModuleElement<F> {
        self.table.get(&(d1, k, d2, l)).cloned().unwrap_or_else(|| ModuleElement::zero(self.complex.nvars()))
    }

    fn unit(&self) -> ModuleElement<F> {
        self.unit.clone()
    }
}

/// `αβ = p(i(α) i(β))` on all basis pairs of `Y`, with unit `p(1)`.
pub fn descend_product<F: Field, P: DgProduct<F>>(sdr: &SdrData<F>, x: &P) -> Result<DescendedProduct<F>> {
    if **x.complex().modules() != **sdr.x.modules() {
        return Err(Error::ShapeMismatch("product lives on a different complex".into()));
    }
    let y = &sdr.y;
    let top = y.len() as i64;
    let lifts: Vec<GradedElement<F>> = basis_elements(y).iter().map(|b| sdr.i.apply(b)).collect();
    let basis = basis_elements(y);
    let mut table = BTreeMap::new();
    for (u, iu) in basis.iter().zip(&lifts) {
        for (v, iv) in basis.iter().zip(&lifts) {
            if u.degree + v.degree >= top {
                continue;
            }
            let value = sdr.p.apply(&x.multiply(iu, iv)).vector;
            if !value.is_zero() {
                let k = u.vector.max_index().expect("basis vector");
                let l = v.vector.max_index().expect("basis vector");
                table.insert((u.degree, k, v.degree, l), value);
            }
        }
    }
    let unit = sdr.p.apply(&GradedElement::new(0, x.unit())).vector;
    Ok(DescendedProduct { complex: y.clone(), table, unit })
}

/// How many items a verification visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    Exhaustive,
    /// `count` items drawn with a seeded generator.
    Sampled { seed: u64, count: usize },
}

/// Tuples of basis elements of the given length.
pub(crate) fn tuples<F: Field>(basis: &[GradedElement<F>], len: usize, sampling: Sampling) -> Vec<Vec<GradedElement<F>>> {
    match sampling {
        Sampling::Exhaustive => {
            let mut out = vec![Vec::new()];
            for _ in 0..len {
                out = out
                    .into_iter()
                    .flat_map(|prefix| {
                        basis.iter().map(move |b| {
                            let mut t = prefix.clone();
                            t.push(b.clone());
                            t
                        })
                    })
                    .collect();
            }
            out
        }
        Sampling::Sampled { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count).map(|_| (0..len).map(|_| basis[rng.gen_range(0..basis.len())].clone()).collect()).collect()
        }
    }
}

fn sign<F: Field>(odd: bool) -> F {
    if odd {
        -F::one()
    } else {
        F::one()
    }
}

/// Leibniz rule, graded commutativity, `α² = 0` for odd `α`, the unit
/// (on pairs), and associativity (on triples).
pub fn verify_dg_axioms<F: Field, P: DgProduct<F>>(prod: &P, pairs: Sampling, triples: Sampling) -> Report {
    let c = prod.complex();
    let d = c.differential();
    let basis = basis_elements(c);
    let mut leibniz = Check::new("Leibniz");
    let mut commutative = Check::new("graded commutativity");
    let mut square = Check::new("odd squares vanish");
    let mut unit = Check::new("unit");
    let mut assoc = Check::new("associativity");
    let one = GradedElement::new(0, prod.unit());
    for x in &basis {
        let loc = || describe(c, x);
        unit.item(prod.multiply(&one, x) == *x && prod.multiply(x, &one) == *x, loc);
        if x.degree % 2 != 0 {
            square.item(prod.multiply(x, x).is_zero(), loc);
        }
    }
    for t in tuples(&basis, 2, pairs) {
        let (x, y) = (&t[0], &t[1]);
        let loc = || format!("({}, {})", describe(c, x), describe(c, y));
        let xy = prod.multiply(x, y);
        let lhs = d.apply(&xy);
        let rhs = prod.multiply(&d.apply(x), y).add(&prod.multiply(x, &d.apply(y)).scale(&sign::<F>(x.degree % 2 != 0)));
        leibniz.item(lhs.vector == rhs.vector, loc);
        let yx = prod.multiply(y, x).scale(&sign::<F>(x.degree * y.degree % 2 != 0));
        commutative.item(xy.vector == yx.vector, loc);
    }
    for t in tuples(&basis, 3, triples) {
        let loc = || format!("({}, {}, {})", describe(c, &t[0]), describe(c, &t[1]), describe(c, &t[2]));
        let left = prod.multiply(&prod.multiply(&t[0], &t[1]), &t[2]);
        let right = prod.multiply(&t[0], &prod.multiply(&t[1], &t[2]));
        assoc.item(left.vector == right.vector, loc);
    }
    let mut r = Report::new();
    for check in [leibniz, commutative, square, unit, assoc] {
        r.push(check);
    }
    r
}

/// `i(αβ) = i(α) i(β)` on basis pairs of `Y`.
pub fn verify_i_multiplicative<F: Field, X: DgProduct<F>, Y: DgProduct<F>>(sdr: &SdrData<F>, x: &X, y: &Y, pairs: Sampling) -> Check {
    let mut check = Check::new("i multiplicative");
    let basis = basis_elements(&sdr.y);
    for t in tuples(&basis, 2, pairs) {
        let lhs = sdr.i.apply(&y.multiply(&t[0], &t[1]));
        let rhs = x.multiply(&sdr.i.apply(&t[0]), &sdr.i.apply(&t[1]));
        check.item(lhs.vector == rhs.vector, || format!("({}, {})", describe(&sdr.y, &t[0]), describe(&sdr.y, &t[1])));
    }
    let unit = sdr.i.apply(&GradedElement::new(0, y.unit()));
    check.item(unit.vector == x.unit(), || "unit".to_string());
    check
}

/// Whether `h(αβ) ∈ h(α)X + Xh(β)`, tested in the internal degree of `h(αβ)`.
pub fn check_generalized_leibniz<F: Field, P: DgProduct<F>>(
    h: &GradedMap<F>,
    prod: &P,
    alpha: &GradedElement<F>,
    beta: &GradedElement<F>,
) -> Result<bool> {
    let c = prod.complex();
    let target_degree = alpha.degree + beta.degree + h.shift();
    let v = h.apply(&prod.multiply(alpha, beta));
    let module = c.component(target_degree);
    if v.is_zero() {
        return Ok(true);
    }
    let ha = h.apply(alpha);
    let hb = h.apply(beta);
    let mut gens = Vec::new();
    for k in 0..c.component(beta.degree).rank() {
        let b = GradedElement::basis(beta.degree, c.nvars(), k);
        gens.push(prod.multiply(&ha, &b).vector);
    }
    for k in 0..c.component(alpha.degree).rank() {
        let b = GradedElement::basis(alpha.degree, c.nvars(), k);
        gens.push(prod.multiply(&b, &hb).vector);
    }
    in_submodule(module, &v.vector, &gens)
}
