//! The perturbation lemma for nilpotent perturbations.
//!
//! With `A = Σ_k (δh)^k δ`:
//! `i∞ = i + hAi`, `p∞ = p + pAh`, `h∞ = h + hAh`, `∂∞^X = ∂ + δ`,
//! `∂∞^Y = ∂^Y + pAi`.

use crate::error::{Error, Result};
use crate::homological::{check_zero, ChainComplex, GradedMap, SdrData};
use crate::report::Report;
use crate::scalar::Field;

/// Least `N <= bound` with `(δh)^N = 0` and `(hδ)^N = 0`.
pub fn nilpotency_order<F: Field>(delta: &GradedMap<F>, h: &GradedMap<F>, bound: usize) -> Result<usize> {
    let dh = delta.compose(h)?;
    let hd = h.compose(delta)?;
    let mut dh_pow = dh.clone();
    let mut hd_pow = hd.clone();
    for n in 1..=bound {
        if dh_pow.is_zero() && hd_pow.is_zero() {
            return Ok(n);
        }
        dh_pow = dh_pow.compose(&dh)?;
        hd_pow = hd_pow.compose(&hd)?;
    }
    Err(Error::NotSmall(bound))
}

/// Output of [`perturb`]; `sdr` holds `X` with `∂ + δ`, `Y` with `∂∞^Y`,
/// and `i∞`, `p∞`, `h∞`.
#[derive(Clone, Debug)]
pub struct PerturbedSdr<F: Field> {
    pub sdr: SdrData<F>,
    pub nilpotency_order: usize,
    /// `A = Σ_k (δh)^k δ`.
    pub a: GradedMap<F>,
    /// Whether the input was special.
    pub special: bool,
    pub delta: GradedMap<F>,
    /// The unperturbed homotopy.
    pub h: GradedMap<F>,
}

/// `Σ_{k<n} f^k ∘ g`.
fn geometric<F: Field>(f: &GradedMap<F>, g: &GradedMap<F>, n: usize) -> Result<GradedMap<F>> {
    let mut term = g.clone();
    let mut sum = g.clone();
    for _ in 1..n {
        term = f.compose(&term)?;
        sum = sum.add(&term)?;
    }
    Ok(sum)
}

/// Applies the perturbation lemma to `s` and the perturbation `delta` of
/// `∂^X`. Smallness is tested up to `bound` powers.
pub fn perturb<F: Field>(s: &SdrData<F>, delta: &GradedMap<F>, special: bool, bound: usize) -> Result<PerturbedSdr<F>> {
    let dx = s.x.differential();
    let new_dx = dx.add(delta)?;
    if !new_dx.compose(&new_dx)?.is_zero() {
        return Err(Error::PerturbedSquareNonzero);
    }
    let order = nilpotency_order(delta, &s.h, bound)?;
    let dh = delta.compose(&s.h)?;
    let a = geometric(&dh, delta, order)?;
    let ha = s.h.compose(&a)?;
    let i_inf = s.i.add(&ha.compose(&s.i)?)?;
    let p_inf = s.p.add(&s.p.compose(&a)?.compose(&s.h)?)?;
    let h_inf = s.h.add(&ha.compose(&s.h)?)?;
    let dy = s.y.differential().add(&s.p.compose(&a)?.compose(&s.i)?)?;

    let hd = s.h.compose(delta)?;
    let series_i = geometric(&hd, &s.i, order + 1)?;
    let series_p = geometric(&dh, &GradedMap::identity(s.x.modules().clone()), order + 1).and_then(|g| s.p.compose(&g))?;
    if series_i != i_inf || series_p != p_inf {
        return Err(Error::Verification(Box::new({
            let mut r = Report::new();
            r.push(series_i.compare(&i_inf, "i series form"));
            r.push(series_p.compare(&p_inf, "p series form"));
            r
        })));
    }
    let sdr = SdrData::new(ChainComplex::new(new_dx)?, ChainComplex::new(dy)?, i_inf, p_inf, h_inf)?;
    Ok(PerturbedSdr { sdr, nilpotency_order: order, a, special, delta: delta.clone(), h: s.h.clone() })
}

/// All perturbation lemma conclusions: the SDR identities for the perturbed
/// data (special ones when the input was special), `(∂∞^Y)² = 0`, and that
/// one more series term changes nothing.
pub fn verify_perturbed_special<F: Field>(ps: &PerturbedSdr<F>) -> Report {
    let mut r = ps.sdr.verify(ps.special);
    for (name, c) in [("dX^2=0", &ps.sdr.x), ("dY^2=0", &ps.sdr.y)] {
        let mut check = c.verify_square_zero();
        check.name = name.to_string();
        r.push(check);
    }
    let extra = ps.delta.compose(&ps.h).and_then(|dh| {
        let mut power = dh.clone();
        for _ in 1..ps.nilpotency_order {
            power = power.compose(&dh)?;
        }
        power.compose(&ps.delta)
    });
    r.push(check_zero("series terminates", extra));
    r
}
