use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homological::module::{same_module, BasedModule, GradedElement, GradedModule, ModuleElement};
use crate::poly::RingElement;
use crate::report::Check;
use crate::scalar::Field;

/// An `R`-linear map between based free modules, stored column by column.
#[derive(Clone, Debug)]
pub struct ModuleMap<F: Field> {
    source: Arc<BasedModule>,
    target: Arc<BasedModule>,
    nvars: usize,
    columns: Vec<ModuleElement<F>>,
}

impl<F: Field> PartialEq for ModuleMap<F> {
    fn eq(&self, other: &Self) -> bool {
        same_module(&self.source, &other.source) && same_module(&self.target, &other.target) && self.columns == other.columns
    }
}

impl<F: Field> ModuleMap<F> {
    pub fn zero(source: Arc<BasedModule>, target: Arc<BasedModule>, nvars: usize) -> Self {
        let columns = vec![ModuleElement::zero(nvars); source.rank()];
        ModuleMap { source, target, nvars, columns }
    }

    pub fn identity(module: Arc<BasedModule>, nvars: usize) -> Self {
        let columns = (0..module.rank()).map(|k| ModuleElement::basis(nvars, k)).collect();
        ModuleMap { source: module.clone(), target: module, nvars, columns }
    }

    /// `columns[k]` is the image of the `k`-th source basis vector.
    pub fn from_columns(source: Arc<BasedModule>, target: Arc<BasedModule>, nvars: usize, columns: Vec<ModuleElement<F>>) -> Result<Self> {
        if columns.len() != source.rank() {
            return Err(Error::ShapeMismatch(format!("{} columns for a source of rank {}", columns.len(), source.rank())));
        }
        for c in &columns {
            if c.nvars() != nvars {
                return Err(Error::VariableMismatch(c.nvars(), nvars));
            }
            if c.max_index().is_some_and(|m| m >= target.rank()) {
                return Err(Error::ShapeMismatch(format!("column entry outside a target of rank {}", target.rank())));
            }
        }
        Ok(ModuleMap { source, target, nvars, columns })
    }

    pub fn source(&self) -> &Arc<BasedModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<BasedModule> {
        &self.target
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn column(&self, k: usize) -> &ModuleElement<F> {
        &self.columns[k]
    }

    pub fn columns(&self) -> &[ModuleElement<F>] {
        &self.columns
    }

    pub fn entry(&self, row: usize, col: usize) -> RingElement<F> {
        self.columns[col].get(row)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(ModuleElement::is_zero)
    }

    pub fn apply(&self, v: &ModuleElement<F>) -> ModuleElement<F> {
        let mut out = ModuleElement::zero(self.nvars);
        for (k, c) in v.entries() {
            out.add_scaled(c, &self.columns[k]);
        }
        out
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ModuleMap<F>) -> Result<Self> {
        if !same_module(&inner.target, &self.source) {
            return Err(Error::ShapeMismatch("composition: target of inner map differs from source of outer map".into()));
        }
        let columns = inner.columns.iter().map(|c| self.apply(c)).collect();
        Ok(ModuleMap { source: inner.source.clone(), target: self.target.clone(), nvars: self.nvars, columns })
    }

    fn check_parallel(&self, other: &Self) -> Result<()> {
        if same_module(&self.source, &other.source) && same_module(&self.target, &other.target) {
            Ok(())
        } else {
            Err(Error::ShapeMismatch("maps have different source or target".into()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_parallel(other)?;
        let columns = self.columns.iter().zip(&other.columns).map(|(a, b)| a.add(b)).collect();
        Ok(ModuleMap { columns, ..self.clone_shape() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_parallel(other)?;
        let columns = self.columns.iter().zip(&other.columns).map(|(a, b)| a.sub(b)).collect();
        Ok(ModuleMap { columns, ..self.clone_shape() })
    }

    pub fn scale(&self, factor: &F) -> Self {
        ModuleMap { columns: self.columns.iter().map(|c| c.scale(factor)).collect(), ..self.clone_shape() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    fn clone_shape(&self) -> Self {
        ModuleMap { source: self.source.clone(), target: self.target.clone(), nvars: self.nvars, columns: Vec::new() }
    }

    /// Positions `(row, col)` where the two maps differ, in column-major order.
    pub fn diff_positions(&self, other: &Self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (col, (a, b)) in self.columns.iter().zip(&other.columns).enumerate() {
            let d = a.sub(b);
            out.extend(d.entries().map(|(row, _)| (row, col)));
        }
        out
    }

    /// Entries violating `deg(entry) + deg(target row) = deg(source column)` (or inhomogeneous).
    pub fn homogeneity_violations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (col, c) in self.columns.iter().enumerate() {
            for (row, e) in c.entries() {
                let ok = match e.homogeneous_degree() {
                    Some(d) => d + self.target.degree(row) == self.source.degree(col),
                    None => false,
                };
                if !ok {
                    out.push((row, col));
                }
            }
        }
        out
    }

    /// Restriction to the given source basis vectors (new source `sub`).
    pub fn restrict_columns(&self, sub: Arc<BasedModule>, indices: &[usize]) -> Self {
        let columns = indices.iter().map(|&k| self.columns[k].clone()).collect();
        ModuleMap { source: sub, target: self.target.clone(), nvars: self.nvars, columns }
    }

    /// Entrywise `R → R'` coefficient change; `None` if some coefficient fails.
    pub fn try_map_coefficients<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<ModuleMap<G>> {
        let columns = self.columns.iter().map(|c| c.try_map_coefficients(&f)).collect::<Option<Vec<_>>>()?;
        Some(ModuleMap { source: self.source.clone(), target: self.target.clone(), nvars: self.nvars, columns })
    }

    /// Every entry satisfies `pred`.
    pub fn all_entries(&self, mut pred: impl FnMut(&RingElement<F>) -> bool) -> bool {
        self.columns.iter().all(|c| c.entries().all(|(_, e)| pred(e)))
    }

    /// Sparse triples `(row, col, entry)` in column-major order.
    pub fn triples(&self) -> Vec<(usize, usize, &RingElement<F>)> {
        let mut out = Vec::new();
        for (col, c) in self.columns.iter().enumerate() {
            out.extend(c.entries().map(|(row, e)| (row, col, e)));
        }
        out
    }
}

/// A map of graded modules of fixed homological shift; `block(d)` goes from
/// degree `d` to degree `d + shift`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap<F: Field> {
    source: Arc<GradedModule>,
    target: Arc<GradedModule>,
    shift: i64,
    blocks: Vec<ModuleMap<F>>,
}

impl<F: Field> GradedMap<F> {
    pub fn zero(source: Arc<GradedModule>, target: Arc<GradedModule>, shift: i64) -> Self {
        let nvars = source.nvars();
        let blocks = (0..source.len() as i64)
            .map(|d| ModuleMap::zero(source.component(d).clone(), target.component(d + shift).clone(), nvars))
            .collect();
        GradedMap { source, target, shift, blocks }
    }

    pub fn identity(module: Arc<GradedModule>) -> Self {
        let nvars = module.nvars();
        let blocks = (0..module.len() as i64).map(|d| ModuleMap::identity(module.component(d).clone(), nvars)).collect();
        GradedMap { source: module.clone(), target: module, shift: 0, blocks }
    }

    /// Built from the images of basis vectors: `f(degree, index)` lies in
    /// `target.component(degree + shift)`.
    pub fn from_fn(
        source: Arc<GradedModule>,
        target: Arc<GradedModule>,
        shift: i64,
        mut f: impl FnMut(i64, usize) -> Result<ModuleElement<F>>,
    ) -> Result<Self> {
        let nvars = source.nvars();
        let mut blocks = Vec::with_capacity(source.len());
        for d in 0..source.len() as i64 {
            let src = source.component(d).clone();
            let tgt = target.component(d + shift).clone();
            let columns = (0..src.rank()).map(|k| f(d, k)).collect::<Result<Vec<_>>>()?;
            blocks.push(ModuleMap::from_columns(src, tgt, nvars, columns)?);
        }
        Ok(GradedMap { source, target, shift, blocks })
    }

    /// `blocks[d]` must map `source(d)` to `target(d + shift)`.
    pub fn from_blocks(source: Arc<GradedModule>, target: Arc<GradedModule>, shift: i64, blocks: Vec<ModuleMap<F>>) -> Result<Self> {
        if blocks.len() != source.len() {
            return Err(Error::ShapeMismatch(format!("{} blocks for {} source degrees", blocks.len(), source.len())));
        }
        for (d, b) in blocks.iter().enumerate() {
            let d = d as i64;
            if !same_module(b.source(), source.component(d)) || !same_module(b.target(), target.component(d + shift)) {
                return Err(Error::ShapeMismatch(format!("block in degree {} has the wrong shape", d)));
            }
        }
        Ok(GradedMap { source, target, shift, blocks })
    }

    pub fn source(&self) -> &Arc<GradedModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedModule> {
        &self.target
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn nvars(&self) -> usize {
        self.source.nvars()
    }

    pub fn blocks(&self) -> &[ModuleMap<F>] {
        &self.blocks
    }

    /// The block leaving degree `d`, or `None` outside the stored range.
    pub fn block(&self, d: i64) -> Option<&ModuleMap<F>> {
        if d < 0 {
            None
        } else {
            self.blocks.get(d as usize)
        }
    }

    pub fn apply(&self, x: &GradedElement<F>) -> GradedElement<F> {
        let degree = x.degree + self.shift;
        match self.block(x.degree) {
            Some(b) => GradedElement::new(degree, b.apply(&x.vector)),
            None => GradedElement::zero(degree, self.nvars()),
        }
    }

    /// Copy with the entry `(row, col)` of the block leaving degree `d`
    /// replaced by `value` (for negative controls).
    pub fn with_entry(&self, d: i64, row: usize, col: usize, value: RingElement<F>) -> Self {
        let mut out = self.clone();
        let block = &mut out.blocks[d as usize];
        let column = &mut block.columns[col];
        column.add_term(row, value.sub(&column.get(row)));
        out
    }

    /// Image of the `k`-th basis vector of degree `d`.
    pub fn apply_basis(&self, d: i64, k: usize) -> ModuleElement<F> {
        self.blocks[d as usize].column(k).clone()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GradedMap<F>) -> Result<Self> {
        if *inner.target != *self.source {
            return Err(Error::ShapeMismatch("graded composition of incompatible maps".into()));
        }
        let shift = self.shift + inner.shift;
        let nvars = self.nvars();
        let mut blocks = Vec::with_capacity(inner.source.len());
        for (d, b) in inner.blocks.iter().enumerate() {
            let mid = d as i64 + inner.shift;
            let composed = match self.block(mid) {
                Some(outer) => outer.compose(b)?,
                None => ModuleMap::zero(b.source().clone(), self.target.component(d as i64 + shift).clone(), nvars),
            };
            blocks.push(composed);
        }
        Ok(GradedMap { source: inner.source.clone(), target: self.target.clone(), shift, blocks })
    }

    fn check_parallel(&self, other: &Self) -> Result<()> {
        if self.shift == other.shift && *self.source == *other.source && *self.target == *other.target {
            Ok(())
        } else {
            Err(Error::ShapeMismatch("graded maps have different shapes".into()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_parallel(other)?;
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(GradedMap { blocks, ..self.clone_shape() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_parallel(other)?;
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.sub(b)).collect::<Result<_>>()?;
        Ok(GradedMap { blocks, ..self.clone_shape() })
    }

    pub fn scale(&self, factor: &F) -> Self {
        GradedMap { blocks: self.blocks.iter().map(|b| b.scale(factor)).collect(), ..self.clone_shape() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    fn clone_shape(&self) -> Self {
        GradedMap { source: self.source.clone(), target: self.target.clone(), shift: self.shift, blocks: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(ModuleMap::is_zero)
    }

    /// Compares entrywise with `other`; every differing entry is a located failure.
    pub fn compare(&self, other: &Self, name: &str) -> Check {
        let mut check = Check::new(name);
        if self.check_parallel(other).is_err() {
            check.fail("shape mismatch".into());
            return check;
        }
        for (d, (a, b)) in self.blocks.iter().zip(&other.blocks).enumerate() {
            let diffs = a.diff_positions(b);
            check.items += a.source().rank() * a.target().rank().max(1);
            for (row, col) in diffs {
                check.fail(format!(
                    "degree {} entry ({}, {}) [{} -> {}]",
                    d,
                    row,
                    col,
                    a.source().label(col),
                    a.target().label(row)
                ));
            }
        }
        check
    }

    /// Checks that `self` vanishes, locating nonzero entries.
    pub fn check_zero(&self, name: &str) -> Check {
        let zero = GradedMap::zero(self.source.clone(), self.target.clone(), self.shift);
        self.compare(&zero, name)
    }

    pub fn check_homogeneous(&self, name: &str) -> Check {
        let mut check = Check::new(name);
        for (d, b) in self.blocks.iter().enumerate() {
            check.items += b.triples().len();
            for (row, col) in b.homogeneity_violations() {
                check.fail(format!("degree {} entry ({}, {})", d, row, col));
            }
        }
        check
    }

    pub fn try_map_coefficients<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<GradedMap<G>> {
        let blocks = self.blocks.iter().map(|b| b.try_map_coefficients(&f)).collect::<Option<Vec<_>>>()?;
        Some(GradedMap { source: self.source.clone(), target: self.target.clone(), shift: self.shift, blocks })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homological::module::Label;
    use crate::scalar::Rational;

    fn free(names: &[&str], degree: u32) -> Arc<BasedModule> {
        Arc::new(BasedModule::new(names.iter().map(|s| (Label::Named(s.to_string()), degree)).collect()))
    }

    fn x(k: usize) -> RingElement<Rational> {
        RingElement::variable(2, k)
    }

    #[test]
    fn compose_identity_and_zero() {
        let a = free(&["u", "v"], 1);
        let b = free(&["w"], 0);
        let f = ModuleMap::from_columns(a.clone(), b.clone(), 2, vec![ModuleElement::term(0, x(0)), ModuleElement::term(0, x(1))]).unwrap();
        assert_eq!(f.compose(&ModuleMap::identity(a.clone(), 2)).unwrap(), f);
        assert_eq!(ModuleMap::identity(b.clone(), 2).compose(&f).unwrap(), f);
        let z = ModuleMap::<Rational>::zero(b.clone(), a.clone(), 2);
        assert!(z.compose(&f).unwrap().is_zero());
        assert!(f.compose(&f).is_err());
        assert!(f.homogeneity_violations().is_empty());
    }

    #[test]
    fn homogeneity_violation_is_located() {
        let a = free(&["u"], 0);
        let b = free(&["w"], 2);
        let f = ModuleMap::from_columns(a, b, 2, vec![ModuleElement::term(0, x(0))]).unwrap();
        assert_eq!(f.homogeneity_violations(), vec![(0, 0)]);
    }
}
