use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::bielement::{write_linear_combination, BiBasisVector};
use crate::poly::RingElement;
use crate::scalar::Field;

/// Name of a basis vector of a based free module.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Label {
    /// The generator of `R` sitting in homological degree 0.
    One,
    /// A standard basis vector `e_T ⊗ y^μ`.
    Bi(BiBasisVector),
    /// The `index`-th chosen generator of a block (shown 1-based as `b<k>`).
    Gen { block: usize, index: usize },
    Named(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::One => write!(f, "1"),
            Label::Bi(v) => write!(f, "{}", v),
            Label::Gen { index, .. } => write!(f, "b{}", index + 1),
            Label::Named(s) => write!(f, "{}", s),
        }
    }
}

/// A free `R`-module with an ordered basis; each basis vector carries an
/// internal degree.
#[derive(Clone, Debug, Default)]
pub struct BasedModule {
    labels: Vec<Label>,
    degrees: Vec<u32>,
    index: HashMap<Label, usize>,
}

impl PartialEq for BasedModule {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.degrees == other.degrees
    }
}

impl Eq for BasedModule {}

impl BasedModule {
    /// Panics on a repeated label.
    pub fn new(basis: Vec<(Label, u32)>) -> Self {
        let mut labels = Vec::with_capacity(basis.len());
        let mut degrees = Vec::with_capacity(basis.len());
        let mut index = HashMap::with_capacity(basis.len());
        for (k, (label, degree)) in basis.into_iter().enumerate() {
            let previous = index.insert(label.clone(), k);
            assert!(previous.is_none(), "duplicate basis label {}", label);
            labels.push(label);
            degrees.push(degree);
        }
        BasedModule { labels, degrees, index }
    }

    pub fn empty() -> Self {
        BasedModule::default()
    }

    /// Module whose basis is a list of `e_T ⊗ y^μ`, with their internal degrees.
    pub fn from_bi_basis(basis: impl IntoIterator<Item = BiBasisVector>) -> Self {
        BasedModule::new(basis.into_iter().map(|v| {
            let d = v.internal_degree();
            (Label::Bi(v), d)
        }).collect())
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, k: usize) -> &Label {
        &self.labels[k]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn degree(&self, k: usize) -> u32 {
        self.degrees[k]
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Concatenation of bases; labels must stay distinct.
    pub fn direct_sum<'a>(parts: impl IntoIterator<Item = &'a BasedModule>) -> BasedModule {
        let mut basis = Vec::new();
        for p in parts {
            basis.extend(p.labels.iter().cloned().zip(p.degrees.iter().copied()));
        }
        BasedModule::new(basis)
    }
}

pub(crate) fn same_module(a: &Arc<BasedModule>, b: &Arc<BasedModule>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A family of based modules indexed by homological degree `0..len`; any
/// other degree holds the zero module.
#[derive(Clone, Debug)]
pub struct GradedModule {
    nvars: usize,
    components: Vec<Arc<BasedModule>>,
    empty: Arc<BasedModule>,
}

impl PartialEq for GradedModule {
    fn eq(&self, other: &Self) -> bool {
        let top = self.components.len().max(other.components.len()) as i64;
        self.nvars == other.nvars && (0..top).all(|d| same_module(self.component(d), other.component(d)))
    }
}

impl GradedModule {
    pub fn new(nvars: usize, components: Vec<BasedModule>) -> Self {
        GradedModule { nvars, components: components.into_iter().map(Arc::new).collect(), empty: Arc::new(BasedModule::empty()) }
    }

    pub fn from_arcs(nvars: usize, components: Vec<Arc<BasedModule>>) -> Self {
        GradedModule { nvars, components, empty: Arc::new(BasedModule::empty()) }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of stored degrees (`0..len`).
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.iter().all(|c| c.is_empty())
    }

    pub fn component(&self, degree: i64) -> &Arc<BasedModule> {
        if degree < 0 {
            return &self.empty;
        }
        self.components.get(degree as usize).unwrap_or(&self.empty)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.rank()).collect()
    }

    pub fn components(&self) -> &[Arc<BasedModule>] {
        &self.components
    }
}

/// A vector in a based free module: sparse map basis index → coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModuleElement<F: Field> {
    nvars: usize,
    entries: BTreeMap<usize, RingElement<F>>,
}

impl<F: Field> ModuleElement<F> {
    pub fn zero(nvars: usize) -> Self {
        ModuleElement { nvars, entries: BTreeMap::new() }
    }

    pub fn basis(nvars: usize, k: usize) -> Self {
        Self::term(k, RingElement::one(nvars))
    }

    pub fn term(k: usize, coefficient: RingElement<F>) -> Self {
        let mut out = Self::zero(coefficient.nvars());
        out.add_term(k, coefficient);
        out
    }

    pub fn from_scalars(nvars: usize, values: &[F]) -> Self {
        let mut out = Self::zero(nvars);
        for (k, v) in values.iter().enumerate() {
            out.add_term(k, RingElement::constant(nvars, v.clone()));
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &RingElement<F>)> {
        self.entries.iter().map(|(&k, c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, k: usize) -> RingElement<F> {
        self.entries.get(&k).cloned().unwrap_or_else(|| RingElement::zero(self.nvars))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    pub fn add_term(&mut self, k: usize, coefficient: RingElement<F>) {
        if coefficient.is_zero() {
            return;
        }
        match self.entries.get_mut(&k) {
            Some(c) => {
                c.add_assign_ref(&coefficient);
                if c.is_zero() {
                    self.entries.remove(&k);
                }
            }
            None => {
                self.entries.insert(k, coefficient);
            }
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: &RingElement<F>, other: &Self) {
        for (&k, c) in &other.entries {
            self.add_term(k, factor.mul(c));
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (&k, c) in &other.entries {
            self.add_term(k, c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.entries {
            out.add_term(k, c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn scale(&self, factor: &F) -> Self {
        let mut out = Self::zero(self.nvars);
        for (&k, c) in &self.entries {
            out.add_term(k, c.scale(factor));
        }
        out
    }

    pub fn scale_ring(&self, factor: &RingElement<F>) -> Self {
        let mut out = Self::zero(self.nvars);
        out.add_scaled(factor, self);
        out
    }

    /// Internal degree `deg(coefficient) + deg(basis vector)`, when constant.
    pub fn internal_degree(&self, module: &BasedModule) -> Option<u32> {
        let mut out = None;
        for (&k, c) in &self.entries {
            let d = c.homogeneous_degree()? + module.degree(k);
            match out {
                None => out = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        out
    }

    pub fn try_map_coefficients<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<ModuleElement<G>> {
        let mut out = ModuleElement::zero(self.nvars);
        for (&k, c) in &self.entries {
            out.add_term(k, c.try_map_coefficients(&f)?);
        }
        Some(out)
    }

    pub fn permute_variables(&self, perm: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (&k, c) in &self.entries {
            out.add_term(k, c.permute_variables(perm));
        }
        out
    }

    /// Display with the labels of `module`, e.g. `-x2*b1 - x1*b2`.
    pub fn display_in<'a>(&'a self, module: &'a BasedModule) -> impl fmt::Display + 'a {
        DisplayIn { element: self, module }
    }
}

struct DisplayIn<'a, F: Field> {
    element: &'a ModuleElement<F>,
    module: &'a BasedModule,
}

impl<F: Field> fmt::Display for DisplayIn<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear_combination(
            f,
            self.element.entries.iter().map(|(&k, c)| {
                let symbol = match self.module.label(k) {
                    Label::One => String::new(),
                    other => other.to_string(),
                };
                (symbol, c)
            }),
        )
    }
}

/// A homogeneous element of a graded module.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GradedElement<F: Field> {
    pub degree: i64,
    pub vector: ModuleElement<F>,
}

impl<F: Field> GradedElement<F> {
    pub fn new(degree: i64, vector: ModuleElement<F>) -> Self {
        GradedElement { degree, vector }
    }

    pub fn zero(degree: i64, nvars: usize) -> Self {
        GradedElement { degree, vector: ModuleElement::zero(nvars) }
    }

    pub fn basis(degree: i64, nvars: usize, k: usize) -> Self {
        GradedElement { degree, vector: ModuleElement::basis(nvars, k) }
    }

    pub fn is_zero(&self) -> bool {
        self.vector.is_zero()
    }

    pub fn scale(&self, factor: &F) -> Self {
        GradedElement { degree: self.degree, vector: self.vector.scale(factor) }
    }

    pub fn neg(&self) -> Self {
        GradedElement { degree: self.degree, vector: self.vector.neg() }
    }

    /// Sum of two elements; a zero summand may sit in any degree.
    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        assert_eq!(self.degree, other.degree, "adding elements of different degrees");
        GradedElement { degree: self.degree, vector: self.vector.add(&other.vector) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn display_with_labels() {
        let module = BasedModule::new(vec![(Label::Gen { block: 1, index: 0 }, 3), (Label::Gen { block: 1, index: 1 }, 3)]);
        let x1 = RingElement::<Rational>::variable(2, 0);
        let x2 = RingElement::<Rational>::variable(2, 1);
        let mut v = ModuleElement::term(0, x2.neg());
        v.add_term(1, x1.neg());
        assert_eq!(v.display_in(&module).to_string(), "-x2*b1 - x1*b2");
        assert_eq!(v.internal_degree(&module), Some(4));
        let r = BasedModule::new(vec![(Label::One, 0)]);
        let w = ModuleElement::term(0, x1.mul(&x1).neg());
        assert_eq!(w.display_in(&r).to_string(), "-x1^2");
    }

    #[test]
    #[should_panic]
    fn duplicate_labels_rejected() {
        BasedModule::new(vec![(Label::One, 0), (Label::One, 0)]);
    }
}
