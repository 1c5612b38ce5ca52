//! The Koszul double complex `S` with components `Λ^i ⊗ S_j`, its maps
//! `κ`, `d`, `σ`, `ε`, and the truncations `X_a` (columns `j < a`).
//!
//! Conventions:
//! - `κ(e_{t1}∧…∧e_{tk} ⊗ μ) = Σ_j (−1)^{j+1} e_{…t̂j…} ⊗ y_{tj} μ`
//! - `d(e_{t1}∧…∧e_{tk} ⊗ μ) = Σ_u (−1)^{u+1} x_{tu} e_{…t̂u…} ⊗ μ`
//! - `σ(e_T ⊗ y^μ) = 1/(|T|+|μ|) Σ_l μ_l e_l ∧ e_T ⊗ y^μ / y_l`
//!
//! The totalization adds no signs; its homological degree is the exterior
//! degree, and degree `i` of `X_a` is ordered by column, then `e_T`, then `y^μ`.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bielement::{component_basis, BiBasisVector, BiElement};
use crate::error::{Error, Result};
use crate::exterior::{wedge, ExtMonomial};
use crate::homological::{BasedModule, ChainComplex, GradedElement, GradedMap, GradedModule, Label, ModuleElement};
use crate::poly::RingElement;
use crate::report::{Check, Report};
use crate::scalar::Field;
use crate::transfer::DgProduct;

pub fn kappa<F: Field>(alpha: &BiElement<F>) -> BiElement<F> {
    let mut out = BiElement::zero(alpha.nvars());
    for (v, c) in alpha.terms() {
        for (slot, &t) in v.ext.indices().iter().enumerate() {
            let sign = if slot % 2 == 0 { F::one() } else { -F::one() };
            let w = BiBasisVector::new(v.ext.remove_slot(slot), v.sym.times_variable(t - 1));
            out.add_term(w, c.scale(&sign));
        }
    }
    out
}

pub fn vertical_d<F: Field>(alpha: &BiElement<F>) -> BiElement<F> {
    let n = alpha.nvars();
    let mut out = BiElement::zero(n);
    for (v, c) in alpha.terms() {
        for (slot, &t) in v.ext.indices().iter().enumerate() {
            let sign = if slot % 2 == 0 { F::one() } else { -F::one() };
            let coefficient = c.mul(&RingElement::variable(n, t - 1)).scale(&sign);
            out.add_term(BiBasisVector::new(v.ext.remove_slot(slot), v.sym.clone()), coefficient);
        }
    }
    out
}

fn divisor_inverse<F: Field>(value: usize) -> Result<F> {
    F::from_i64(value as i64)
        .inv()
        .ok_or(Error::DivisorVanishes { value: value as i64, characteristic: F::characteristic() })
}

/// The scaled de Rham homotopy. Zero on `S_0` and on `Λ^n`; fails where
/// `|T| + |μ|` vanishes in the field.
pub fn sigma<F: Field>(alpha: &BiElement<F>) -> Result<BiElement<F>> {
    let n = alpha.nvars();
    let mut out = BiElement::zero(n);
    for (v, c) in alpha.terms() {
        let i = v.lambda_degree();
        let m = v.column();
        if m == 0 || i == n {
            continue;
        }
        let scale = divisor_inverse::<F>(i + m)?;
        for l in 0..n {
            let mult = v.sym.exponent(l);
            if mult == 0 {
                continue;
            }
            if let Some((sign, ext)) = wedge(&ExtMonomial::generator(l + 1), &v.ext) {
                let factor = F::from_i64(sign * mult as i64) * scale.clone();
                let sym = v.sym.divide_by_variable(l).expect("positive exponent");
                out.add_term(BiBasisVector::new(ext, sym), c.scale(&factor));
            }
        }
    }
    Ok(out)
}

/// Augmentation `Λ^0 ⊗ S → R`, `y_l ↦ x_l`.
pub fn epsilon<F: Field>(alpha: &BiElement<F>) -> Result<RingElement<F>> {
    let mut out = RingElement::zero(alpha.nvars());
    for (v, c) in alpha.terms() {
        if v.lambda_degree() != 0 {
            return Err(Error::Support(format!("epsilon is defined on Λ^0 only, got {}", v)));
        }
        out.add_assign_ref(&c.mul_monomial(&v.sym));
    }
    Ok(out)
}

/// Product in `X_a`: the product of `Λ ⊗ S` with columns `j >= a` dropped.
pub fn product_xa<F: Field>(alpha: &BiElement<F>, beta: &BiElement<F>, a: usize) -> Result<BiElement<F>> {
    Ok(alpha.bi_product(beta)?.filter(|v| v.column() < a))
}

/// `(r, s)` with `σ(αβ) = r σ(α) β + s α σ(β)` for `α ∈ Λ^i ⊗ S_a`, `β ∈ Λ^j ⊗ S_b`.
pub fn scaled_leibniz_coefficients<F: Field>(i: usize, a: usize, j: usize, b: usize) -> Result<(F, F)> {
    let total = i + a + j + b;
    if total == 0 {
        return Err(Error::DivisorVanishes { value: 0, characteristic: F::characteristic() });
    }
    let inv = divisor_inverse::<F>(total)?;
    let r = F::from_i64((i + a) as i64) * inv.clone();
    let sign = if i.is_multiple_of(2) { 1 } else { -1 };
    let s = F::from_i64(sign * (j + b) as i64) * inv;
    Ok((r, s))
}

/// Fails unless the field has characteristic 0 or `p >= n + a`.
pub fn check_admissible<F: Field>(n: usize, a: usize) -> Result<()> {
    let p = F::characteristic();
    let required = (n + a) as u64;
    if p != 0 && p < required {
        return Err(Error::InadmissibleCharacteristic { characteristic: p, required });
    }
    Ok(())
}

/// Rank of `Λ^i ⊗ S_j`: `C(n,i)·C(n+j−1,j)`.
pub fn component_rank(n: usize, i: usize, j: usize) -> usize {
    binomial(n, i) * binomial(n + j - 1, j)
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

/// Coordinates of `b` in a module whose basis carries `Label::Bi` labels.
pub fn bi_to_module<F: Field>(module: &BasedModule, b: &BiElement<F>) -> Result<ModuleElement<F>> {
    let mut out = ModuleElement::zero(b.nvars());
    for (v, c) in b.terms() {
        let k = module
            .index_of(&Label::Bi(v.clone()))
            .ok_or_else(|| Error::Support(format!("{} is not a basis vector of this module", v)))?;
        out.add_term(k, c.clone());
    }
    Ok(out)
}

/// Inverse of [`bi_to_module`]; non-`Bi` labels are an error.
pub fn module_to_bi<F: Field>(module: &BasedModule, v: &ModuleElement<F>) -> Result<BiElement<F>> {
    let mut out = BiElement::zero(v.nvars());
    for (k, c) in v.entries() {
        match module.label(k) {
            Label::Bi(w) => out.add_term(w.clone(), c.clone()),
            other => return Err(Error::Support(format!("{} is not a bigraded basis vector", other))),
        }
    }
    Ok(out)
}

/// Graded map on a module with `Bi` labels given by a functional formula.
fn functional_map<F: Field>(
    source: &Arc<GradedModule>,
    target: &Arc<GradedModule>,
    shift: i64,
    f: impl Fn(&BiElement<F>) -> Result<BiElement<F>>,
    keep: impl Fn(&BiBasisVector) -> bool,
) -> Result<GradedMap<F>> {
    GradedMap::from_fn(source.clone(), target.clone(), shift, |d, k| {
        let Label::Bi(v) = source.component(d).label(k) else {
            return Err(Error::Support("functional map on a non-bigraded basis".into()));
        };
        let image = f(&BiElement::basis(v.clone()))?.filter(&keep);
        bi_to_module(target.component(d + shift), &image)
    })
}

/// Row `r` of the double complex, `Λ^i ⊗ S_{r−i}` in degree `i`, with
/// differential `κ` and homotopy `σ`.
pub fn row_complex<F: Field>(n: usize, r: usize) -> Result<(ChainComplex<F>, GradedMap<F>)> {
    let top = r.min(n);
    let modules = Arc::new(GradedModule::new(
        n,
        (0..=top).map(|i| BasedModule::from_bi_basis(component_basis(n, i, r - i))).collect(),
    ));
    let k = functional_map(&modules, &modules, -1, |b| Ok(kappa(b)), |_| true)?;
    let s = functional_map(&modules, &modules, 1, sigma, |_| true)?;
    Ok((ChainComplex::new(k)?, s))
}

/// `X_a = tr_{≤a−1}(S)`, totalized with `∂ = κ + d`.
#[derive(Clone, Debug)]
pub struct TruncatedComplexXa<F: Field> {
    n: usize,
    a: usize,
    complex: ChainComplex<F>,
    kappa: GradedMap<F>,
    d: GradedMap<F>,
    sigma: GradedMap<F>,
}

pub fn build_xa<F: Field>(n: usize, a: usize) -> Result<TruncatedComplexXa<F>> {
    if n == 0 || a == 0 {
        return Err(Error::InvalidConfig("need n >= 1 and a >= 1".into()));
    }
    check_admissible::<F>(n, a)?;
    let modules = Arc::new(GradedModule::new(
        n,
        (0..=n)
            .map(|i| BasedModule::from_bi_basis((0..a).flat_map(|j| component_basis(n, i, j))))
            .collect(),
    ));
    let keep = |v: &BiBasisVector| v.column() < a;
    let kappa_map = functional_map(&modules, &modules, -1, |b| Ok(kappa(b)), keep)?;
    let d = functional_map(&modules, &modules, -1, |b| Ok(vertical_d(b)), keep)?;
    let sigma_map = functional_map(&modules, &modules, 1, sigma, keep)?;
    let complex = ChainComplex::new(kappa_map.add(&d)?)?;
    Ok(TruncatedComplexXa { n, a, complex, kappa: kappa_map, d, sigma: sigma_map })
}

impl<F: Field> TruncatedComplexXa<F> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn complex(&self) -> &ChainComplex<F> {
        &self.complex
    }

    pub fn kappa(&self) -> &GradedMap<F> {
        &self.kappa
    }

    pub fn d(&self) -> &GradedMap<F> {
        &self.d
    }

    pub fn sigma(&self) -> &GradedMap<F> {
        &self.sigma
    }

    pub fn module(&self, degree: i64) -> &Arc<BasedModule> {
        self.complex.component(degree)
    }

    /// Coordinates of a bigraded element of exterior degree `degree`;
    /// terms in columns `>= a` are an error.
    pub fn to_vector(&self, degree: i64, b: &BiElement<F>) -> Result<ModuleElement<F>> {
        bi_to_module(self.module(degree), b)
    }

    pub fn to_bi(&self, x: &GradedElement<F>) -> BiElement<F> {
        module_to_bi(self.module(x.degree), &x.vector).expect("X_a has bigraded labels")
    }

    pub fn from_bi(&self, b: &BiElement<F>) -> Result<GradedElement<F>> {
        let degree = b.lambda_degree().unwrap_or(0) as i64;
        Ok(GradedElement::new(degree, self.to_vector(degree, b)?))
    }

    pub fn product(&self, alpha: &BiElement<F>, beta: &BiElement<F>) -> Result<BiElement<F>> {
        product_xa(alpha, beta, self.a)
    }
}

impl<F: Field> DgProduct<F> for TruncatedComplexXa<F> {
    fn complex(&self) -> &ChainComplex<F> {
        &self.complex
    }

    fn multiply_basis(&self, d1: i64, k: usize, d2: i64, l: usize) -> ModuleElement<F> {
        let target = d1 + d2;
        if target > self.n as i64 {
            return ModuleElement::zero(self.n);
        }
        let (Label::Bi(u), Label::Bi(v)) = (self.module(d1).label(k), self.module(d2).label(l)) else {
            unreachable!("X_a has bigraded labels")
        };
        let prod = product_xa(&BiElement::basis(u.clone()), &BiElement::basis(v.clone()), self.a).expect("same n");
        self.to_vector(target, &prod).expect("product stays in X_a")
    }

    fn unit(&self) -> ModuleElement<F> {
        self.to_vector(0, &BiElement::one(self.n)).expect("unit lies in X_a")
    }
}

/// All basis vectors `Λ^i ⊗ S_m` with `m <= max_column`.
fn basis_up_to(n: usize, max_column: usize) -> Vec<BiBasisVector> {
    (0..=n).flat_map(|i| (0..=max_column).flat_map(move |m| component_basis(n, i, m))).collect()
}

fn apply_or_fail<F: Field>(check: &mut Check, loc: &dyn Fn() -> String, value: Result<BiElement<F>>) -> Option<BiElement<F>> {
    match value {
        Ok(v) => Some(v),
        Err(e) => {
            check.items += 1;
            check.fail(format!("{}: {}", loc(), e));
            None
        }
    }
}

/// Exhaustive identities of the double complex on all basis vectors of
/// `Λ^i ⊗ S_m`, `m <= max_column`: `κ² = 0`, `d² = 0`, `κd + dκ = 0`,
/// `κσ + σκ = 1` (for `i + m > 0`), `σ² = 0`, `εκ = εd` on `Λ^1`, and
/// equivariance of `κ`, `d`, `σ` under all permutations of the variables.
pub fn verify_rows<F: Field>(n: usize, max_column: usize) -> Report {
    let mut kk = Check::new("kappa^2=0");
    let mut dd = Check::new("d^2=0");
    let mut anti = Check::new("kappa*d+d*kappa=0");
    let mut contraction = Check::new("kappa*sigma+sigma*kappa=1");
    let mut ss = Check::new("sigma^2=0");
    let mut eps = Check::new("epsilon*kappa=epsilon*d");
    let mut equiv = Check::new("permutation equivariance");
    let perms = permutations(n);
    for v in basis_up_to(n, max_column) {
        let b = BiElement::<F>::basis(v.clone());
        let loc = || v.to_string();
        let k = kappa(&b);
        let d = vertical_d(&b);
        kk.item(kappa(&k).is_zero(), loc);
        dd.item(vertical_d(&d).is_zero(), loc);
        anti.item(kappa(&d).add(&vertical_d(&k)).is_zero(), loc);
        if v.internal_degree() > 0 {
            let lhs = sigma(&b).and_then(|s| Ok(kappa(&s).add(&sigma(&k)?)));
            if let Some(l) = apply_or_fail(&mut contraction, &loc, lhs) {
                contraction.item(l == b, loc);
            }
        }
        if let Some(s2) = apply_or_fail(&mut ss, &loc, sigma(&b).and_then(|s| sigma(&s))) {
            ss.item(s2.is_zero(), loc);
        }
        if v.lambda_degree() == 1 {
            let ok = match (epsilon(&k), epsilon(&d)) {
                (Ok(a), Ok(c)) => a == c,
                _ => false,
            };
            eps.item(ok, loc);
        }
        for perm in &perms {
            let pb = b.permute(perm);
            let s_ok = match (sigma(&b), sigma(&pb)) {
                (Ok(s), Ok(ps)) => s.permute(perm) == ps,
                _ => false,
            };
            let ok = kappa(&pb) == k.permute(perm) && vertical_d(&pb) == d.permute(perm) && s_ok;
            equiv.item(ok, || format!("{} under {:?}", v, perm));
        }
    }
    let mut r = Report::new();
    for c in [kk, dd, anti, contraction, ss, eps, equiv] {
        r.push(c);
    }
    r
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| current[k] < current[k + 1]) else {
            return out;
        };
        let l = (k + 1..n).rev().find(|&l| current[k] < current[l]).expect("successor exists");
        current.swap(k, l);
        current[k + 1..].reverse();
    }
}

fn scaled_leibniz_item<F: Field>(u: &BiBasisVector, v: &BiBasisVector) -> Result<bool> {
    let alpha = BiElement::<F>::basis(u.clone());
    let beta = BiElement::<F>::basis(v.clone());
    let (r, s) = scaled_leibniz_coefficients::<F>(u.lambda_degree(), u.column(), v.lambda_degree(), v.column())?;
    let lhs = sigma(&alpha.bi_product(&beta)?)?;
    let rhs = sigma(&alpha)?.bi_product(&beta)?.scale(&r).add(&alpha.bi_product(&sigma(&beta)?)?.scale(&s));
    Ok(lhs == rhs)
}

/// Basis vectors of internal degree `1..=max_degree`.
fn basis_of_internal_degree_up_to(n: usize, max_degree: usize) -> Vec<BiBasisVector> {
    basis_up_to(n, max_degree)
        .into_iter()
        .filter(|v| (v.internal_degree() as usize) <= max_degree)
        .collect()
}

/// The scaled Leibniz identity on every pair of basis vectors whose
/// internal degrees are at most `max_degree` (and not both zero).
pub fn verify_scaled_leibniz_exhaustive<F: Field>(n: usize, max_degree: usize) -> Check {
    let basis = basis_of_internal_degree_up_to(n, max_degree);
    let mut check = Check::new("scaled Leibniz (exhaustive)");
    for u in &basis {
        for v in &basis {
            if u.internal_degree() + v.internal_degree() == 0 {
                continue;
            }
            let loc = || format!("({}, {})", u, v);
            match scaled_leibniz_item::<F>(u, v) {
                Ok(ok) => check.item(ok, loc),
                Err(e) => check.item(false, || format!("{}: {}", loc(), e)),
            }
        }
    }
    check
}

/// The scaled Leibniz identity on `samples` seeded random basis pairs.
pub fn verify_scaled_leibniz_sampled<F: Field>(n: usize, max_degree: usize, samples: usize, seed: u64) -> Check {
    let basis = basis_of_internal_degree_up_to(n, max_degree);
    let nonconstant: Vec<&BiBasisVector> = basis.iter().filter(|v| v.internal_degree() > 0).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut check = Check::new("scaled Leibniz (sampled)");
    for _ in 0..samples {
        let u = nonconstant[rng.gen_range(0..nonconstant.len())];
        let v = &basis[rng.gen_range(0..basis.len())];
        let loc = || format!("({}, {})", u, v);
        match scaled_leibniz_item::<F>(u, v) {
            Ok(ok) => check.item(ok, loc),
            Err(e) => check.item(false, || format!("{}: {}", loc(), e)),
        }
    }
    check
}
