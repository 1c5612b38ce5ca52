//! Elements of `Λ ⊗ S` with coefficients in `R`, where `Λ` is the exterior
//! algebra on `e_1..e_n` and `S = R[y_1..y_n]`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exterior::{wedge, ExtMonomial};
use crate::poly::{Monomial, RingElement};
use crate::scalar::Field;

/// Standard basis vector `e_T ⊗ y^μ` of `Λ^{|T|} ⊗ S_{|μ|}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BiBasisVector {
    pub ext: ExtMonomial,
    pub sym: Monomial,
}

impl BiBasisVector {
    pub fn new(ext: ExtMonomial, sym: Monomial) -> Self {
        BiBasisVector { ext, sym }
    }

    /// Exterior degree `i`, the homological degree in the totalization.
    pub fn lambda_degree(&self) -> usize {
        self.ext.degree()
    }

    /// Symmetric degree `j`, the column index.
    pub fn column(&self) -> usize {
        self.sym.degree() as usize
    }

    /// Internal degree `|T| + |μ|` of the bare basis vector.
    pub fn internal_degree(&self) -> u32 {
        self.ext.degree() as u32 + self.sym.degree()
    }

    pub fn nvars(&self) -> usize {
        self.sym.nvars()
    }
}

impl fmt::Display for BiBasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps: Vec<String> = self.sym.exponents().iter().map(|e| e.to_string()).collect();
        write!(f, "{}*y^[{}]", self.ext, exps.join(","))
    }
}

/// A finite `R`-linear combination of basis vectors `e_T ⊗ y^μ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BiElement<F: Field> {
    nvars: usize,
    terms: BTreeMap<BiBasisVector, RingElement<F>>,
}

impl<F: Field> BiElement<F> {
    pub fn zero(nvars: usize) -> Self {
        BiElement { nvars, terms: BTreeMap::new() }
    }

    pub fn basis(vector: BiBasisVector) -> Self {
        let n = vector.nvars();
        Self::term(vector, RingElement::one(n))
    }

    pub fn term(vector: BiBasisVector, coefficient: RingElement<F>) -> Self {
        let mut out = Self::zero(vector.nvars());
        out.add_term(vector, coefficient);
        out
    }

    /// The unit `1 ⊗ 1`.
    pub fn one(nvars: usize) -> Self {
        Self::basis(BiBasisVector::new(ExtMonomial::one(), Monomial::one(nvars)))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BiBasisVector, &RingElement<F>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, vector: &BiBasisVector) -> RingElement<F> {
        self.terms.get(vector).cloned().unwrap_or_else(|| RingElement::zero(self.nvars))
    }

    pub fn add_term(&mut self, vector: BiBasisVector, coefficient: RingElement<F>) {
        debug_assert_eq!(vector.nvars(), self.nvars);
        if coefficient.is_zero() {
            return;
        }
        match self.terms.get_mut(&vector) {
            Some(c) => {
                c.add_assign_ref(&coefficient);
                if c.is_zero() {
                    self.terms.remove(&vector);
                }
            }
            None => {
                self.terms.insert(vector, coefficient);
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (v, c) in &other.terms {
            self.add_term(v.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn scale(&self, factor: &F) -> Self {
        let mut out = Self::zero(self.nvars);
        for (v, c) in &self.terms {
            out.add_term(v.clone(), c.scale(factor));
        }
        out
    }

    pub fn scale_ring(&self, factor: &RingElement<F>) -> Self {
        let mut out = Self::zero(self.nvars);
        for (v, c) in &self.terms {
            out.add_term(v.clone(), c.mul(factor));
        }
        out
    }

    /// Keeps only the terms whose basis vector satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&BiBasisVector) -> bool) -> Self {
        BiElement {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(v, _)| keep(v)).map(|(v, c)| (v.clone(), c.clone())).collect(),
        }
    }

    /// The exterior degree shared by all terms, if any.
    pub fn lambda_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(BiBasisVector::lambda_degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Internal degree `deg(coefficient) + |T| + |μ|` when constant across terms.
    pub fn internal_degree(&self) -> Option<u32> {
        let mut out = None;
        for (v, c) in &self.terms {
            let d = c.homogeneous_degree()? + v.internal_degree();
            match out {
                None => out = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        out
    }

    /// Whether every coefficient is a constant.
    pub fn is_constant(&self) -> bool {
        self.terms.values().all(|c| c.as_constant().is_some())
    }

    /// Product in `Λ ⊗ S`: `(c e_T ⊗ μ)(c' e_U ⊗ ν) = c c' sign(T, U) e_{T ∪ U} ⊗ μν`.
    ///
    /// The symmetric factor is even, so the wedge sign is the only sign.
    pub fn bi_product(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch(self.nvars, other.nvars));
        }
        let mut out = Self::zero(self.nvars);
        for (v, c) in &self.terms {
            for (w, d) in &other.terms {
                if let Some((sign, ext)) = wedge(&v.ext, &w.ext) {
                    let coefficient = c.mul(d).scale(&F::from_i64(sign));
                    out.add_term(BiBasisVector::new(ext, v.sym.mul(&w.sym)), coefficient);
                }
            }
        }
        Ok(out)
    }

    /// Applies the permutation `v -> perm[v]` (0-based) to the variables
    /// `x`, `y` and the generators `e` simultaneously.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (v, c) in &self.terms {
            let (sign, ext) = v.ext.permute(perm);
            let coefficient = c.permute_variables(perm).scale(&F::from_i64(sign));
            out.add_term(BiBasisVector::new(ext, v.sym.permute(perm)), coefficient);
        }
        out
    }

    pub fn try_map_coefficients<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<BiElement<G>> {
        let mut out = BiElement::zero(self.nvars);
        for (v, c) in &self.terms {
            out.add_term(v.clone(), c.try_map_coefficients(&f)?);
        }
        Some(out)
    }

    /// Parses the element grammar `coef*e[i,j,...]*y^[exponents]` with terms
    /// joined by `+`/`-`; a term without `e[...]` sits in `Λ^0`, a term
    /// without `y^[...]` in `S_0`.
    pub fn parse(text: &str, nvars: usize) -> Result<Self> {
        match parse_element::<F>(text, nvars)? {
            Parsed::Bi(b) => Ok(b),
            Parsed::Ring(r) => {
                let mut out = Self::zero(nvars);
                out.add_term(BiBasisVector::new(ExtMonomial::one(), Monomial::one(nvars)), r);
                Ok(out)
            }
        }
    }
}

impl<F: Field> fmt::Display for BiElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear_combination(f, self.terms.iter().map(|(v, c)| (v.to_string(), c)))
    }
}

/// Writes `c_1*s_1 + c_2*s_2 - ...`, or `0` for an empty combination.
pub(crate) fn write_linear_combination<'a, F: Field>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a RingElement<F>)>,
) -> fmt::Result {
    let mut first = true;
    for (symbol, c) in terms {
        let (negative, body) = c.format_times(&symbol);
        match (first, negative) {
            (true, false) => write!(f, "{}", body)?,
            (true, true) => write!(f, "-{}", body)?,
            (false, false) => write!(f, " + {}", body)?,
            (false, true) => write!(f, " - {}", body)?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Result of parsing: either a pure element of `R`, or a bigraded element.
#[derive(Clone, Debug, PartialEq)]
pub enum Parsed<F: Field> {
    Ring(RingElement<F>),
    Bi(BiElement<F>),
}

impl<F: Field> Parsed<F> {
    fn mul(self, other: Parsed<F>) -> Result<Parsed<F>> {
        Ok(match (self, other) {
            (Parsed::Ring(a), Parsed::Ring(b)) => Parsed::Ring(a.mul(&b)),
            (Parsed::Ring(a), Parsed::Bi(b)) | (Parsed::Bi(b), Parsed::Ring(a)) => Parsed::Bi(b.scale_ring(&a)),
            (Parsed::Bi(a), Parsed::Bi(b)) => Parsed::Bi(a.bi_product(&b)?),
        })
    }

    fn add(self, other: Parsed<F>) -> Result<Parsed<F>> {
        match (self, other) {
            (Parsed::Ring(a), Parsed::Ring(b)) => Ok(Parsed::Ring(a.add(&b))),
            (Parsed::Bi(a), Parsed::Bi(b)) => Ok(Parsed::Bi(a.add(&b))),
            (Parsed::Ring(r), Parsed::Bi(b)) | (Parsed::Bi(b), Parsed::Ring(r)) if r.is_zero() => Ok(Parsed::Bi(b)),
            _ => Err(Error::Parse("expression mixes ring terms with e[..]/y^[..] terms".into())),
        }
    }

    fn neg(self) -> Parsed<F> {
        match self {
            Parsed::Ring(a) => Parsed::Ring(a.neg()),
            Parsed::Bi(b) => Parsed::Bi(b.neg()),
        }
    }
}

/// Parses either a ring element (`x1^2 - 1/2*x2`) or a bigraded element.
pub fn parse_element<F: Field>(text: &str, nvars: usize) -> Result<Parsed<F>> {
    let mut parser = Parser { chars: text.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, nvars };
    let out = parser.expression::<F>()?;
    if parser.pos != parser.chars.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    nvars: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, message: &str) -> Error {
        let rest: String = self.chars[self.pos.min(self.chars.len())..].iter().collect();
        Error::Parse(format!("{} at position {} (near {:?})", message, self.pos, rest))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c)))
        }
    }

    fn expression<F: Field>(&mut self) -> Result<Parsed<F>> {
        let mut negate = false;
        match self.peek() {
            Some('-') => {
                negate = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term::<F>()?;
        if negate {
            acc = acc.neg();
        }
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term::<F>()?;
            acc = acc.add(if op == '-' { t.neg() } else { t })?;
        }
        Ok(acc)
    }

    fn term<F: Field>(&mut self) -> Result<Parsed<F>> {
        let mut acc = self.factor::<F>()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = acc.mul(self.factor::<F>()?)?;
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("integer out of range"))
    }

    fn integer_list(&mut self) -> Result<Vec<u64>> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.peek() == Some(']') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.integer()?);
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.error("expected ',' or ']'")),
            }
        }
    }

    fn factor<F: Field>(&mut self) -> Result<Parsed<F>> {
        let n = self.nvars;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expression::<F>()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                self.integer()?;
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.integer()?;
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                let value = F::parse(&text).ok_or_else(|| self.error("invalid or non-invertible scalar"))?;
                Ok(Parsed::Ring(RingElement::constant(n, value)))
            }
            Some('x') => {
                self.pos += 1;
                let var = self.integer()? as usize;
                if var == 0 || var > n {
                    return Err(self.error("variable index out of range"));
                }
                let mut exp = 1;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    exp = self.integer()? as u32;
                }
                Ok(Parsed::Ring(RingElement::variable(n, var - 1).pow(exp)))
            }
            Some('e') => {
                self.pos += 1;
                let list = self.integer_list()?;
                let indices: Vec<usize> = list.into_iter().map(|t| t as usize).collect();
                if indices.iter().any(|&t| t == 0 || t > n) {
                    return Err(self.error("exterior index out of range"));
                }
                let zero_sym = Monomial::one(n);
                Ok(Parsed::Bi(match ExtMonomial::from_unsorted(&indices) {
                    Some((sign, ext)) => {
                        BiElement::term(BiBasisVector::new(ext, zero_sym), RingElement::constant(n, F::from_i64(sign)))
                    }
                    None => BiElement::zero(n),
                }))
            }
            Some('y') => {
                self.pos += 1;
                self.expect('^')?;
                let list = self.integer_list()?;
                if list.len() != n {
                    return Err(self.error("exponent vector length differs from the variable count"));
                }
                let sym = Monomial::new(list.into_iter().map(|e| e as u32).collect());
                Ok(Parsed::Bi(BiElement::basis(BiBasisVector::new(ExtMonomial::one(), sym))))
            }
            _ => Err(self.error("expected a factor")),
        }
    }
}

/// Exhaustive list of basis vectors of `Λ^i ⊗ S_j`, in basis order.
pub fn component_basis(nvars: usize, i: usize, j: usize) -> Vec<BiBasisVector> {
    let syms = Monomial::all_of_degree(nvars, j as u32);
    let mut out = Vec::new();
    for ext in ExtMonomial::all_of_degree(nvars, i) {
        for sym in &syms {
            out.push(BiBasisVector::new(ext.clone(), sym.clone()));
        }
    }
    out
}
