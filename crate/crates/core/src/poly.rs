//! Sparse multivariate polynomials over an exact field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Field;

/// Exponent vector of a monomial in a fixed number of variables.
///
/// Ordered lexicographically with `x_1 > x_2 > ... > x_n`, so that iteration
/// over an ordered collection visits the lexicographically largest monomial
/// first (`x1^2`, `x1*x2`, `x2^2`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exponents: vec![0; nvars] }
    }

    /// The monomial `x_var` (0-based index).
    pub fn variable(nvars: usize, var: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exponents[var] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exponents[var]
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.nvars(), other.nvars(), "variable count mismatch");
        Monomial {
            exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self / x_var`, or `None` when `x_var` does not divide.
    pub fn divide_by_variable(&self, var: usize) -> Option<Monomial> {
        if self.exponents[var] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exponents[var] -= 1;
        Some(m)
    }

    pub fn times_variable(&self, var: usize) -> Monomial {
        let mut m = self.clone();
        m.exponents[var] += 1;
        m
    }

    /// Relabels variables: variable `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Monomial {
        let mut exponents = vec![0; self.nvars()];
        for (v, &e) in self.exponents.iter().enumerate() {
            exponents[perm[v]] = e;
        }
        Monomial { exponents }
    }

    /// All monomials of total degree `degree`, lexicographically largest first.
    pub fn all_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
        fn fill(prefix: &mut Vec<u32>, nvars: usize, remaining: u32, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == nvars {
                prefix.push(remaining);
                out.push(Monomial::new(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=remaining).rev() {
                prefix.push(e);
                fill(prefix, nvars, remaining - e, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if degree == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        fill(&mut Vec::with_capacity(nvars), nvars, degree, &mut out);
        out
    }

    /// Formats as `x1^2*x3`, or `1` for the empty monomial.
    pub fn to_x_string(&self) -> String {
        let factors: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| if e == 1 { format!("x{}", v + 1) } else { format!("x{}^{}", v + 1, e) })
            .collect();
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed so that ordered maps iterate from the lex-largest monomial.
        other.exponents.cmp(&self.exponents)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of `R = k[x_1, ..., x_n]`, stored sparsely with no zero terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RingElement<F: Field> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> RingElement<F> {
    pub fn zero(nvars: usize) -> Self {
        RingElement { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn constant(nvars: usize, value: F) -> Self {
        Self::monomial(Monomial::one(nvars), value)
    }

    pub fn monomial(monomial: Monomial, coefficient: F) -> Self {
        let nvars = monomial.nvars();
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(monomial, coefficient);
        }
        RingElement { nvars, terms }
    }

    /// The variable `x_var` (0-based).
    pub fn variable(nvars: usize, var: usize) -> Self {
        Self::monomial(Monomial::variable(nvars, var), F::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut out = Self::zero(nvars);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, monomial: &Monomial) -> F {
        self.terms.get(monomial).cloned().unwrap_or_else(F::zero)
    }

    /// The constant coefficient, if the element is a constant.
    pub fn as_constant(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, monomial: Monomial, coefficient: F) {
        debug_assert_eq!(monomial.nvars(), self.nvars);
        if coefficient.is_zero() {
            return;
        }
        match self.terms.get_mut(&monomial) {
            Some(c) => {
                let sum = c.clone() + coefficient;
                if sum.is_zero() {
                    self.terms.remove(&monomial);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(monomial, coefficient);
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: &Self, other: &Self) {
        for (m1, c1) in &factor.terms {
            for (m2, c2) in &other.terms {
                self.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
    }

    pub fn scale(&self, factor: &F) -> Self {
        if factor.is_zero() {
            return Self::zero(self.nvars);
        }
        RingElement {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * factor.clone())).collect(),
        }
    }

    pub fn mul_monomial(&self, monomial: &Monomial) -> Self {
        RingElement {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.mul(monomial), c.clone())).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&(-F::one()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Self::zero(self.nvars);
        out.add_scaled(self, other);
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Total degrees of the terms, when all agree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Whether every monomial has total degree at least `power`, i.e. the
    /// element lies in `m^power` for the homogeneous maximal ideal `m`.
    pub fn in_maximal_ideal_power(&self, power: u32) -> bool {
        self.terms.keys().all(|m| m.degree() >= power)
    }

    pub fn permute_variables(&self, perm: &[usize]) -> Self {
        RingElement {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.permute(perm), c.clone())).collect(),
        }
    }

    /// Maps coefficients into another field; `None` if some coefficient has
    /// no image there.
    pub fn try_map_coefficients<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<RingElement<G>> {
        let mut out = RingElement::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Some(out)
    }

    /// Whether the display form needs parentheses when used as a factor.
    pub(crate) fn needs_parentheses(&self) -> bool {
        self.terms.len() > 1
    }

    /// Display form of a single signed coefficient times a basis symbol,
    /// e.g. `-x2*b1`, `1/2*e[1]*y^[0,1]`, `(x1 + x2)*b3`.
    pub(crate) fn format_times(&self, symbol: &str) -> (bool, String) {
        if symbol.is_empty() {
            let text = self.to_string();
            return match text.strip_prefix('-') {
                Some(rest) if self.terms.len() == 1 => (true, rest.to_string()),
                _ => (false, text),
            };
        }
        if self.needs_parentheses() {
            return (false, format!("({})*{}", self, symbol));
        }
        let (m, c) = self.terms.iter().next().expect("nonzero coefficient");
        let negative = c.is_negative();
        let magnitude = if negative { -c.clone() } else { c.clone() };
        let mut factors = Vec::new();
        if !magnitude.is_one() {
            factors.push(magnitude.to_string());
        }
        if !m.is_one() {
            factors.push(m.to_x_string());
        }
        factors.push(symbol.to_string());
        (negative, factors.join("*"))
    }
}

impl<F: Field> fmt::Display for RingElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            let body = if m.is_one() {
                magnitude.to_string()
            } else if magnitude.is_one() {
                m.to_x_string()
            } else {
                format!("{}*{}", magnitude, m.to_x_string())
            };
            match (k, negative) {
                (0, false) => write!(f, "{}", body)?,
                (0, true) => write!(f, "-{}", body)?,
                (_, false) => write!(f, " + {}", body)?,
                (_, true) => write!(f, " - {}", body)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};
    use proptest::prelude::*;

    type P = RingElement<Rational>;

    fn x(v: usize) -> P {
        P::variable(2, v)
    }

    fn c(v: i64) -> P {
        P::constant(2, Rational::from_i64(v))
    }

    #[test]
    fn lex_order_puts_largest_first() {
        let ms = Monomial::all_of_degree(2, 2);
        let shown: Vec<String> = ms.iter().map(Monomial::to_x_string).collect();
        assert_eq!(shown, vec!["x1^2", "x1*x2", "x2^2"]);
        let mut sorted = ms.clone();
        sorted.reverse();
        sorted.sort();
        assert_eq!(sorted, ms);
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(3, 0), vec![Monomial::one(3)]);
    }

    #[test]
    fn display_is_signed_and_ordered() {
        let p = x(0).mul(&x(0)).sub(&x(1).scale(&Rational::parse("1/2").unwrap())).add(&c(3));
        assert_eq!(p.to_string(), "x1^2 - 1/2*x2 + 3");
        assert_eq!(P::zero(2).to_string(), "0");
        assert_eq!(x(1).neg().format_times("b1"), (true, "x2*b1".to_string()));
    }

    #[test]
    fn maximal_ideal_membership() {
        let x1sq = x(0).mul(&x(0));
        assert!(x1sq.in_maximal_ideal_power(2));
        assert!(!x(0).in_maximal_ideal_power(2));
        assert!(P::zero(2).in_maximal_ideal_power(5));
        assert!(!c(1).in_maximal_ideal_power(1));
    }

    #[test]
    fn reduction_mod_p_matches() {
        let p = x(0).scale(&Rational::parse("3/2").unwrap()).add(&c(7));
        let reduced = p.try_map_coefficients(Fp::<7>::from_rational).unwrap();
        assert_eq!(reduced.to_string(), "5*x1");
        let bad = x(0).scale(&Rational::parse("1/7").unwrap());
        assert!(bad.try_map_coefficients(Fp::<7>::from_rational).is_none());
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        prop::collection::vec(((0u32..3, 0u32..3), -5i64..6), 0..5).prop_map(|terms| {
            P::from_terms(
                2,
                terms.into_iter().map(|((a, b), c)| (Monomial::new(vec![a, b]), Rational::from_i64(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), d in arb_poly()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b).mul(&d), a.mul(&b.mul(&d)));
            prop_assert_eq!(a.mul(&b.add(&d)), a.mul(&b).add(&a.mul(&d)));
            prop_assert!(a.sub(&a).is_zero());
            prop_assert_eq!(a.mul(&P::one(2)), a.clone());
        }
    }
}
