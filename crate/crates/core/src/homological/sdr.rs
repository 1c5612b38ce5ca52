use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homological::complex::ChainComplex;
use crate::homological::map::GradedMap;
use crate::homological::module::{BasedModule, GradedModule, Label, ModuleElement};
use crate::linalg::Matrix;
use crate::report::{Check, Report};
use crate::scalar::Field;

/// Deformation retract data `i: Y → X`, `p: X → Y`, `h: X → X` (degree +1)
/// with the convention `ip − 1 = ∂h + h∂`.
#[derive(Clone, Debug, PartialEq)]
pub struct SdrData<F: Field> {
    pub x: ChainComplex<F>,
    pub y: ChainComplex<F>,
    pub i: GradedMap<F>,
    pub p: GradedMap<F>,
    pub h: GradedMap<F>,
}

fn failed(name: &str, e: Error) -> Check {
    let mut c = Check::new(name);
    c.fail(e.to_string());
    c
}

/// `lhs == rhs` as a check, turning shape errors into failures.
pub(crate) fn check_equal<F: Field>(name: &str, lhs: Result<GradedMap<F>>, rhs: Result<GradedMap<F>>) -> Check {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => l.compare(&r, name),
        (Err(e), _) | (_, Err(e)) => failed(name, e),
    }
}

pub(crate) fn check_zero<F: Field>(name: &str, map: Result<GradedMap<F>>) -> Check {
    match map {
        Ok(m) => m.check_zero(name),
        Err(e) => failed(name, e),
    }
}

impl<F: Field> SdrData<F> {
    pub fn new(x: ChainComplex<F>, y: ChainComplex<F>, i: GradedMap<F>, p: GradedMap<F>, h: GradedMap<F>) -> Result<Self> {
        let shapes_ok = i.shift() == 0
            && p.shift() == 0
            && h.shift() == 1
            && **i.source() == **y.modules()
            && **i.target() == **x.modules()
            && **p.source() == **x.modules()
            && **p.target() == **y.modules()
            && **h.source() == **x.modules()
            && **h.target() == **x.modules();
        if !shapes_ok {
            return Err(Error::ShapeMismatch("SDR maps do not fit the complexes".into()));
        }
        Ok(SdrData { x, y, i, p, h })
    }

    /// `X = Y`, `i = p = 1`, `h = 0`.
    pub fn identity(c: ChainComplex<F>) -> Self {
        let m = c.modules().clone();
        SdrData {
            x: c.clone(),
            y: c,
            i: GradedMap::identity(m.clone()),
            p: GradedMap::identity(m.clone()),
            h: GradedMap::zero(m.clone(), m, 1),
        }
    }

    /// Checks `pi = 1`, the homotopy identity, that `i` and `p` are chain
    /// maps, homogeneity, and with `special` also `hi = 0`, `ph = 0`, `h² = 0`.
    pub fn verify(&self, special: bool) -> Report {
        let dx = self.x.differential();
        let dy = self.y.differential();
        let mut r = Report::new();
        r.push(check_equal("pi=1", self.p.compose(&self.i), Ok(GradedMap::identity(self.y.modules().clone()))));
        let lhs = self.i.compose(&self.p).and_then(|ip| ip.sub(&GradedMap::identity(self.x.modules().clone())));
        let rhs = dx.compose(&self.h).and_then(|a| self.h.compose(dx).and_then(|b| a.add(&b)));
        r.push(check_equal("ip-1=dh+hd", lhs, rhs));
        r.push(check_equal("i chain map", dx.compose(&self.i), self.i.compose(dy)));
        r.push(check_equal("p chain map", dy.compose(&self.p), self.p.compose(dx)));
        let mut homogeneous = Check::new("maps homogeneous");
        for (name, m) in [("i", &self.i), ("p", &self.p), ("h", &self.h), ("dX", dx), ("dY", dy)] {
            let mut c = m.check_homogeneous(name);
            c.failures.iter_mut().for_each(|f| *f = format!("{}: {}", name, f));
            homogeneous.absorb(c);
        }
        r.push(homogeneous);
        if special {
            r.push(check_zero("hi=0", self.h.compose(&self.i)));
            r.push(check_zero("ph=0", self.p.compose(&self.h)));
            r.push(check_zero("hh=0", self.h.compose(&self.h)));
        }
        r
    }

    /// Degreewise direct sum; the bases are concatenated in the given order.
    pub fn direct_sum(parts: &[SdrData<F>]) -> Result<Self> {
        let xs: Vec<&ChainComplex<F>> = parts.iter().map(|s| &s.x).collect();
        let ys: Vec<&ChainComplex<F>> = parts.iter().map(|s| &s.y).collect();
        let (xm, xoff) = sum_modules(xs.iter().map(|c| c.modules().as_ref()))?;
        let (ym, yoff) = sum_modules(ys.iter().map(|c| c.modules().as_ref()))?;
        let xd = block_diagonal(&xm, &xm, &xoff, &xoff, xs.iter().map(|c| c.differential()).collect(), -1)?;
        let yd = block_diagonal(&ym, &ym, &yoff, &yoff, ys.iter().map(|c| c.differential()).collect(), -1)?;
        let i = block_diagonal(&ym, &xm, &yoff, &xoff, parts.iter().map(|s| &s.i).collect(), 0)?;
        let p = block_diagonal(&xm, &ym, &xoff, &yoff, parts.iter().map(|s| &s.p).collect(), 0)?;
        let h = block_diagonal(&xm, &xm, &xoff, &xoff, parts.iter().map(|s| &s.h).collect(), 1)?;
        SdrData::new(ChainComplex::new(xd)?, ChainComplex::new(yd)?, i, p, h)
    }

    pub fn try_map_coefficients<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<SdrData<G>> {
        Some(SdrData {
            x: self.x.try_map_coefficients(&f)?,
            y: self.y.try_map_coefficients(&f)?,
            i: self.i.try_map_coefficients(&f)?,
            p: self.p.try_map_coefficients(&f)?,
            h: self.h.try_map_coefficients(&f)?,
        })
    }
}

/// Direct sum of graded modules; `offsets[part][degree]` locates each summand.
fn sum_modules<'a>(parts: impl Iterator<Item = &'a GradedModule> + Clone) -> Result<(Arc<GradedModule>, Vec<Vec<usize>>)> {
    let nvars = parts.clone().next().map_or(0, GradedModule::nvars);
    let len = parts.clone().map(GradedModule::len).max().unwrap_or(0);
    let mut offsets: Vec<Vec<usize>> = parts.clone().map(|_| vec![0; len]).collect();
    let mut components = Vec::with_capacity(len);
    #[allow(clippy::needless_range_loop)]
    for d in 0..len {
        let mut running = 0;
        for (k, part) in parts.clone().enumerate() {
            if part.nvars() != nvars {
                return Err(Error::VariableMismatch(part.nvars(), nvars));
            }
            offsets[k][d] = running;
            running += part.component(d as i64).rank();
        }
        let summands: Vec<&BasedModule> = parts.clone().map(|p| p.component(d as i64).as_ref()).collect();
        let labels: Vec<&Label> = summands.iter().flat_map(|m| m.labels()).collect();
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return Err(Error::ShapeMismatch(format!("summands share a basis label in degree {}", d)));
        }
        components.push(BasedModule::direct_sum(summands));
    }
    Ok((Arc::new(GradedModule::new(nvars, components)), offsets))
}

fn block_diagonal<F: Field>(
    source: &Arc<GradedModule>,
    target: &Arc<GradedModule>,
    src_off: &[Vec<usize>],
    tgt_off: &[Vec<usize>],
    maps: Vec<&GradedMap<F>>,
    shift: i64,
) -> Result<GradedMap<F>> {
    let nvars = source.nvars();
    let mut owner: Vec<Vec<(usize, usize)>> = (0..source.len()).map(|_| Vec::new()).collect();
    for (d, slots) in owner.iter_mut().enumerate() {
        for (part, m) in maps.iter().enumerate() {
            for k in 0..m.source().component(d as i64).rank() {
                slots.push((part, k));
            }
        }
    }
    GradedMap::from_fn(source.clone(), target.clone(), shift, |d, idx| {
        let (part, k) = owner[d as usize][idx];
        debug_assert_eq!(src_off[part][d as usize] + k, idx);
        let image = match maps[part].block(d) {
            Some(b) => b.column(k).clone(),
            None => ModuleElement::zero(nvars),
        };
        let td = d + shift;
        let mut out = ModuleElement::zero(nvars);
        if td >= 0 && (td as usize) < tgt_off[part].len() {
            let base = tgt_off[part][td as usize];
            for (r, c) in image.entries() {
                out.add_term(base + r, c.clone());
            }
        }
        Ok(out)
    })
}

/// Output of [`retract_from_truncation`].
#[derive(Clone, Debug)]
pub struct TruncationRetract<F: Field> {
    pub sdr: SdrData<F>,
    /// Whether `s² = 0`, making the retract special.
    pub special: bool,
    /// Degree holding the stalk (the cutoff), if the stalk is nonzero.
    pub stalk_degree: Option<usize>,
    /// Basis of the stalk `ker ∂_{c−1} = im ∂_c` in coordinates of the row's
    /// degree `c − 1`; each vector has constant entries.
    pub stalk_basis: Vec<ModuleElement<F>>,
}

/// Retracts `tr_{≥c}(row)` onto the stalk `im ∂_c` placed in degree `c`,
/// with `i = s`, `p = ∂_c` (in stalk coordinates) and `h = −s`.
///
/// `row` must have constant-coefficient differential (a single internal
/// degree), and `s` must satisfy `∂s + s∂ = 1`. The stalk basis is the
/// rref kernel basis of `∂_{c−1}`; stalk labels are `Gen { block, index }`.
pub fn retract_from_truncation<F: Field>(row: &ChainComplex<F>, s: &GradedMap<F>, cutoff: i64, block: usize) -> Result<TruncationRetract<F>> {
    let nvars = row.nvars();
    let d = row.differential();
    let homotopy = d.compose(s).and_then(|a| s.compose(d).and_then(|b| a.add(&b)))?;
    let c = homotopy.compare(&GradedMap::identity(row.modules().clone()), "ds+sd=1");
    if !c.passed {
        return Err(Error::NotContracting(c.failures.join("; ")));
    }
    let special = s.compose(s)?.is_zero();
    let x = row.truncate_below(cutoff);
    let xm = x.modules().clone();
    let len = row.len();
    let top = len as i64 - 1;

    let stalk_live = cutoff >= 1 && cutoff <= top;
    let (stalk_basis, free_columns) = if stalk_live {
        let lower = row.component(cutoff - 1);
        let below = row.component(cutoff - 2);
        let mut m = Matrix::zeros(below.rank(), lower.rank());
        if cutoff >= 2 {
            let block_map = &d.blocks()[(cutoff - 1) as usize];
            for (r, col, e) in block_map.triples() {
                let value = e.as_constant().ok_or_else(|| Error::Support("row differential must have constant entries".into()))?;
                m.set(r, col, value);
            }
        }
        let kernel = m.kernel_basis();
        let (_, pivots) = m.rref();
        let free: Vec<usize> = (0..lower.rank()).filter(|c| !pivots.contains(c)).collect();
        (kernel.iter().map(|v| ModuleElement::from_scalars(nvars, v)).collect::<Vec<_>>(), free)
    } else {
        (Vec::new(), Vec::new())
    };

    let mut ycomponents: Vec<BasedModule> = (0..len).map(|_| BasedModule::empty()).collect();
    if stalk_live {
        let lower = row.component(cutoff - 1);
        let basis = stalk_basis
            .iter()
            .enumerate()
            .map(|(index, v)| {
                let deg = v.internal_degree(lower).unwrap_or(0);
                (Label::Gen { block, index }, deg)
            })
            .collect();
        ycomponents[cutoff as usize] = BasedModule::new(basis);
    }
    let ym = Arc::new(GradedModule::new(nvars, ycomponents));
    let y = ChainComplex::zero(ym.clone());

    let i = GradedMap::from_fn(ym.clone(), xm.clone(), 0, |deg, k| {
        debug_assert_eq!(deg, cutoff);
        let lifted = &stalk_basis[k];
        Ok(s.blocks()[(deg - 1) as usize].apply(lifted))
    })?;
    let p = GradedMap::from_fn(xm.clone(), ym.clone(), 0, |deg, k| {
        if !stalk_live || deg != cutoff {
            return Ok(ModuleElement::zero(nvars));
        }
        let image = d.apply_basis(deg, k);
        let mut out = ModuleElement::zero(nvars);
        for (slot, &f) in free_columns.iter().enumerate() {
            out.add_term(slot, image.get(f));
        }
        Ok(out)
    })?;
    let h = GradedMap::from_fn(xm.clone(), xm.clone(), 1, |deg, k| {
        if deg < cutoff {
            return Ok(ModuleElement::zero(nvars));
        }
        Ok(s.apply_basis(deg, k).neg())
    })?;
    let sdr = SdrData::new(x, y, i, p, h)?;
    Ok(TruncationRetract { sdr, special, stalk_degree: stalk_live.then_some(cutoff as usize), stalk_basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn named(name: &str) -> (Label, u32) {
        (Label::Named(name.into()), 0)
    }

    /// 0 → k·u --1--> k·v → 0 with s(v) = u.
    fn split_pair() -> (ChainComplex<Rational>, GradedMap<Rational>) {
        let m = Arc::new(GradedModule::new(1, vec![BasedModule::new(vec![named("v")]), BasedModule::new(vec![named("u")])]));
        let d = GradedMap::from_fn(m.clone(), m.clone(), -1, |deg, _| Ok(if deg == 1 { ModuleElement::basis(1, 0) } else { ModuleElement::zero(1) })).unwrap();
        let s = GradedMap::from_fn(m.clone(), m, 1, |deg, _| Ok(if deg == 0 { ModuleElement::basis(1, 0) } else { ModuleElement::zero(1) })).unwrap();
        (ChainComplex::new(d).unwrap(), s)
    }

    #[test]
    fn identity_sdr_passes() {
        let (c, _) = split_pair();
        assert!(SdrData::identity(c).verify(true).passed());
    }

    #[test]
    fn truncation_cutoffs() {
        let (row, s) = split_pair();
        for cutoff in [0, 1, 2, 5] {
            let t = retract_from_truncation(&row, &s, cutoff, 0).unwrap();
            assert!(t.special);
            let report = t.sdr.verify(true);
            assert!(report.passed(), "cutoff {}: {}", cutoff, report.failure_summary());
        }
        let t = retract_from_truncation(&row, &s, 1, 0).unwrap();
        assert_eq!(t.sdr.y.modules().ranks(), vec![0, 1]);
        assert_eq!(retract_from_truncation(&row, &s, 0, 0).unwrap().sdr.y.modules().ranks(), vec![0, 0]);
    }

    #[test]
    fn flipped_homotopy_fails() {
        let (row, s) = split_pair();
        let t = retract_from_truncation(&row, &s, 0, 0).unwrap();
        let mut bad = t.sdr.clone();
        bad.h = bad.h.neg();
        let report = bad.verify(true);
        assert!(!report.check("ip-1=dh+hd").unwrap().passed);
        assert!(retract_from_truncation(&row, &s.neg(), 1, 0).is_err());
    }

    #[test]
    fn direct_sum_of_identities() {
        let (c, _) = split_pair();
        let one = Arc::new(GradedModule::new(1, vec![BasedModule::new(vec![(Label::One, 0)])]));
        let parts = vec![SdrData::identity(c), SdrData::identity(ChainComplex::zero(one))];
        let sum = SdrData::direct_sum(&parts).unwrap();
        assert_eq!(sum.x.modules().ranks(), vec![2, 1]);
        assert!(sum.verify(true).passed());
    }
}
