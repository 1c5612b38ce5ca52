use crate::error::{Error, Result};
use crate::homological::{ChainComplex, GradedElement, GradedMap, SdrData};
use crate::scalar::Field;
use crate::transfer::product::DgProduct;
use crate::transfer::trees::{enumerate_pbt, PlanarTree};

/// Operations `m_k` of an A∞-algebra on a chain complex; `m_1` is the
/// differential and operations above `max_arity` vanish.
pub trait AinfinityStructure<F: Field> {
    fn complex(&self) -> &ChainComplex<F>;

    fn max_arity(&self) -> usize;

    /// `m_k(inputs)` with `k = inputs.len() >= 1`, of degree `k − 2`.
    fn op(&self, inputs: &[GradedElement<F>]) -> GradedElement<F>;
}

fn degree_of<F: Field>(inputs: &[GradedElement<F>]) -> i64 {
    inputs.iter().map(|x| x.degree).sum()
}

/// A DG algebra viewed as an A∞-algebra: `m_1 = ∂`, `m_2` the product,
/// `m_k = 0` for `k >= 3`.
pub struct DgAsAinfinity<'a, P>(pub &'a P);

impl<F: Field, P: DgProduct<F>> AinfinityStructure<F> for DgAsAinfinity<'_, P> {
    fn complex(&self) -> &ChainComplex<F> {
        self.0.complex()
    }

    fn max_arity(&self) -> usize {
        2
    }

    fn op(&self, inputs: &[GradedElement<F>]) -> GradedElement<F> {
        match inputs {
            [x] => self.0.complex().differential().apply(x),
            [x, y] => self.0.multiply(x, y),
            _ => GradedElement::zero(degree_of(inputs) + inputs.len() as i64 - 2, self.0.complex().nvars()),
        }
    }
}

/// `m_n^Y = p ∘ m_n^X ∘ (i ⊗ … ⊗ i)` for `n >= 2`, `m_1^Y = ∂^Y`.
pub struct DescendedAinfinity<'a, F: Field, A> {
    sdr: &'a SdrData<F>,
    source: &'a A,
}

/// The simplified transfer along an SDR whose homotopy satisfies the
/// generalized Leibniz rule and `hi = 0`; those hypotheses are the caller's.
pub fn ainfty_descend_simplified<'a, F: Field, A: AinfinityStructure<F>>(sdr: &'a SdrData<F>, source: &'a A) -> DescendedAinfinity<'a, F, A> {
    DescendedAinfinity { sdr, source }
}

impl<F: Field, A: AinfinityStructure<F>> AinfinityStructure<F> for DescendedAinfinity<'_, F, A> {
    fn complex(&self) -> &ChainComplex<F> {
        &self.sdr.y
    }

    fn max_arity(&self) -> usize {
        self.source.max_arity()
    }

    fn op(&self, inputs: &[GradedElement<F>]) -> GradedElement<F> {
        if inputs.len() == 1 {
            return self.sdr.y.differential().apply(&inputs[0]);
        }
        let lifted: Vec<GradedElement<F>> = inputs.iter().map(|x| self.sdr.i.apply(x)).collect();
        self.sdr.p.apply(&self.source.op(&lifted))
    }
}

fn koszul_sign<F: Field>(map_degree: i64, passed_degree: i64) -> F {
    if (map_degree * passed_degree).rem_euclid(2) == 1 {
        -F::one()
    } else {
        F::one()
    }
}

/// Degree of the map a subtree applies: `m_k` has degree `k − 2`, and every
/// internal node below the root is followed by `h` (degree +1).
fn subtree_map_degree(t: &PlanarTree) -> i64 {
    match t {
        PlanarTree::Leaf => 0,
        node => node.operation_degree() + node.internal_nodes() as i64,
    }
}

/// Evaluates `tree` on `inputs` (in `X`) with `leaf` on leaves, `h` after
/// every internal node except the root, and no final map.
fn evaluate<F: Field, A: AinfinityStructure<F>>(
    tree: &PlanarTree,
    inputs: &[GradedElement<F>],
    leaf: &GradedMap<F>,
    h: &GradedMap<F>,
    ops: &A,
) -> GradedElement<F> {
    match tree {
        PlanarTree::Leaf => leaf.apply(&inputs[0]),
        PlanarTree::Node(children) => {
            let mut values = Vec::with_capacity(children.len());
            let mut coefficient = F::one();
            let mut offset = 0;
            let mut passed = 0;
            for child in children {
                let width = child.arity();
                let block = &inputs[offset..offset + width];
                let value = match child {
                    PlanarTree::Leaf => evaluate(child, block, leaf, h, ops),
                    _ => h.apply(&evaluate(child, block, leaf, h, ops)),
                };
                coefficient = coefficient * koszul_sign::<F>(subtree_map_degree(child), passed);
                passed += degree_of(block);
                offset += width;
                values.push(value);
            }
            ops.op(&values).scale(&coefficient)
        }
    }
}

/// One homotopy-transfer tree term, without any global tree sign: `i` on
/// the leaves, the operations of `ops` at internal nodes, `h` after each
/// non-root node and `p` at the root, with Koszul signs.
pub fn htt_term<F: Field, A: AinfinityStructure<F>>(
    tree: &PlanarTree,
    inputs: &[GradedElement<F>],
    sdr: &SdrData<F>,
    ops: &A,
) -> Result<GradedElement<F>> {
    if tree.arity() != inputs.len() {
        return Err(Error::ArityMismatch { leaves: tree.arity(), inputs: inputs.len() });
    }
    if **ops.complex().modules() != **sdr.x.modules() {
        return Err(Error::ShapeMismatch("operations live on a different complex".into()));
    }
    let inner = evaluate(tree, inputs, &sdr.i, &sdr.h, ops);
    Ok(sdr.p.apply(&inner))
}

/// Whether every binary tree term of arity `n` vanishes on `inputs`.
pub fn check_higher_ops_vanish<F: Field, A: AinfinityStructure<F>>(n: usize, sdr: &SdrData<F>, ops: &A, inputs: &[GradedElement<F>]) -> Result<bool> {
    if n < 3 {
        return Err(Error::InvalidConfig("higher operations start at arity 3".into()));
    }
    for tree in enumerate_pbt(n) {
        if !htt_term(&tree, inputs, sdr, ops)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Evaluates `Σ_{r+s+t=n} (−1)^{r+st} m_{r+1+t}(1^r ⊗ m_s ⊗ 1^t)` on `inputs`,
/// with the Koszul sign of `m_s` passing the first `r` inputs.
pub fn stasheff_sum<F: Field, A: AinfinityStructure<F>>(a: &A, inputs: &[GradedElement<F>]) -> GradedElement<F> {
    let n = inputs.len();
    let nvars = a.complex().nvars();
    let mut total: Option<GradedElement<F>> = None;
    for s in 1..=n {
        if s > a.max_arity() {
            continue;
        }
        for r in 0..=n - s {
            let t = n - s - r;
            if r + 1 + t > a.max_arity() {
                continue;
            }
            let inner = a.op(&inputs[r..r + s]);
            let passed: i64 = degree_of(&inputs[..r]);
            let mut sign = koszul_sign::<F>(s as i64 - 2, passed);
            if (r + s * t) % 2 == 1 {
                sign = -sign;
            }
            let mut args: Vec<GradedElement<F>> = inputs[..r].to_vec();
            args.push(inner);
            args.extend_from_slice(&inputs[r + s..]);
            let term = a.op(&args).scale(&sign);
            total = Some(match total {
                None => term,
                Some(acc) => acc.add(&term),
            });
        }
    }
    total.unwrap_or_else(|| GradedElement::zero(degree_of(inputs) + n as i64 - 2, nvars))
}

/// Whether the Stasheff identity of arity `inputs.len()` holds on `inputs`.
pub fn check_stasheff<F: Field, A: AinfinityStructure<F>>(a: &A, inputs: &[GradedElement<F>]) -> bool {
    stasheff_sum(a, inputs).is_zero()
}
