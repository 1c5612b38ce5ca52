use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homological::map::GradedMap;
use crate::homological::module::{BasedModule, GradedModule, ModuleElement};
use crate::linalg::Matrix;
use crate::poly::Monomial;
use crate::report::Check;
use crate::scalar::Field;

/// A chain complex of based free modules in degrees `0..len`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex<F: Field> {
    modules: Arc<GradedModule>,
    differential: GradedMap<F>,
}

impl<F: Field> ChainComplex<F> {
    /// `differential` must be an endomorphism of `modules` of degree −1.
    /// Squaring to zero is not assumed; see [`ChainComplex::verify_square_zero`].
    pub fn new(differential: GradedMap<F>) -> Result<Self> {
        if differential.shift() != -1 || **differential.source() != **differential.target() {
            return Err(Error::ShapeMismatch("a differential is an endomorphism of degree -1".into()));
        }
        Ok(ChainComplex { modules: differential.source().clone(), differential })
    }

    pub fn zero(modules: Arc<GradedModule>) -> Self {
        ChainComplex { differential: GradedMap::zero(modules.clone(), modules.clone(), -1), modules }
    }

    pub fn modules(&self) -> &Arc<GradedModule> {
        &self.modules
    }

    pub fn differential(&self) -> &GradedMap<F> {
        &self.differential
    }

    pub fn nvars(&self) -> usize {
        self.modules.nvars()
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn component(&self, d: i64) -> &Arc<BasedModule> {
        self.modules.component(d)
    }

    pub fn verify_square_zero(&self) -> Check {
        match self.differential.compose(&self.differential) {
            Ok(sq) => sq.check_zero("d^2=0"),
            Err(e) => {
                let mut c = Check::new("d^2=0");
                c.fail(e.to_string());
                c
            }
        }
    }

    /// The subcomplex in degrees `>= cutoff` (lower degrees replaced by 0).
    pub fn truncate_below(&self, cutoff: i64) -> Self {
        let components = (0..self.len() as i64)
            .map(|d| if d >= cutoff { self.component(d).clone() } else { Arc::new(BasedModule::empty()) })
            .collect();
        let modules = Arc::new(GradedModule::from_arcs(self.nvars(), components));
        let differential = GradedMap::from_fn(modules.clone(), modules.clone(), -1, |d, k| {
            Ok(if d > cutoff { self.differential.apply_basis(d, k) } else { ModuleElement::zero(self.nvars()) })
        })
        .expect("truncation keeps shapes");
        ChainComplex { modules, differential }
    }

    /// The field-level subcomplex in internal degree `t`.
    pub fn strand(&self, t: u32) -> Strand<F> {
        let nvars = self.nvars();
        let bases: Vec<Vec<(usize, Monomial)>> = (0..self.len() as i64)
            .map(|d| {
                let m = self.component(d);
                let mut basis = Vec::new();
                for k in 0..m.rank() {
                    if m.degree(k) <= t {
                        for mono in Monomial::all_of_degree(nvars, t - m.degree(k)) {
                            basis.push((k, mono));
                        }
                    }
                }
                basis
            })
            .collect();
        let positions: Vec<HashMap<(usize, Monomial), usize>> = bases
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(pos, key)| (key, pos)).collect())
            .collect();
        let mut differentials = Vec::with_capacity(bases.len());
        for d in 0..bases.len() {
            let rows = if d == 0 { 0 } else { bases[d - 1].len() };
            let mut m = Matrix::zeros(rows, bases[d].len());
            if d > 0 {
                let block = &self.differential.blocks()[d];
                for (col, (k, mono)) in bases[d].iter().enumerate() {
                    for (r, entry) in block.column(*k).entries() {
                        for (nu, c) in entry.terms() {
                            let key = (r, nu.mul(mono));
                            let row = positions[d - 1][&key];
                            m.add_to(row, col, c.clone());
                        }
                    }
                }
            }
            differentials.push(m);
        }
        Strand { degree: t, bases, differentials }
    }

    pub fn strand_homology_dims(&self, t: u32) -> Vec<usize> {
        self.strand(t).homology_dims()
    }

    pub fn try_map_coefficients<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<ChainComplex<G>> {
        Some(ChainComplex { modules: self.modules.clone(), differential: self.differential.try_map_coefficients(f)? })
    }
}

/// One internal degree of a graded complex: a complex of finite-dimensional
/// vector spaces. `differentials[d]` maps degree `d` to degree `d − 1`.
#[derive(Clone, Debug)]
pub struct Strand<F: Field> {
    pub degree: u32,
    /// Basis of each degree: (module basis index, x-monomial).
    pub bases: Vec<Vec<(usize, Monomial)>>,
    pub differentials: Vec<Matrix<F>>,
}

impl<F: Field> Strand<F> {
    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    pub fn squares_to_zero(&self) -> bool {
        (2..self.differentials.len()).all(|d| self.differentials[d - 1].mul(&self.differentials[d]).is_zero())
    }

    /// `dim ker d_k − rank d_{k+1}` for each degree.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.iter().map(Matrix::rank).collect();
        (0..self.bases.len())
            .map(|d| {
                let incoming = ranks.get(d + 1).copied().unwrap_or(0);
                self.bases[d].len() - ranks[d] - incoming
            })
            .collect()
    }
}

/// Whether the homogeneous `v` lies in the `R`-span of the homogeneous `gens`
/// (all in `module`), decided in the single internal degree of `v`.
pub fn in_submodule<F: Field>(module: &BasedModule, v: &ModuleElement<F>, gens: &[ModuleElement<F>]) -> Result<bool> {
    if v.is_zero() {
        return Ok(true);
    }
    let degree = v.internal_degree(module).ok_or_else(|| Error::Inhomogeneous("element".into()))?;
    let nvars = v.nvars();
    let mut coords: HashMap<(usize, Monomial), usize> = HashMap::new();
    let expand = |w: &ModuleElement<F>, coords: &mut HashMap<(usize, Monomial), usize>| -> Vec<(usize, F)> {
        let mut out = Vec::new();
        for (k, c) in w.entries() {
            for (mono, value) in c.terms() {
                let next = coords.len();
                let pos = *coords.entry((k, mono.clone())).or_insert(next);
                out.push((pos, value.clone()));
            }
        }
        out
    };
    let mut columns = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let dg = g.internal_degree(module).ok_or_else(|| Error::Inhomogeneous("generator".into()))?;
        if dg > degree {
            continue;
        }
        for mono in Monomial::all_of_degree(nvars, degree - dg) {
            let shifted = g.scale_ring(&crate::poly::RingElement::monomial(mono, F::one()));
            columns.push(expand(&shifted, &mut coords));
        }
    }
    let target = expand(v, &mut coords);
    let mut m = Matrix::zeros(coords.len(), columns.len());
    for (c, col) in columns.iter().enumerate() {
        for (r, value) in col {
            m.add_to(*r, c, value.clone());
        }
    }
    let mut rhs = vec![F::zero(); coords.len()];
    for (r, value) in target {
        rhs[r] = rhs[r].clone() + value;
    }
    Ok(m.column_span_contains(&rhs))
}
