use crate::bicomplex::{binomial, permutations};
use crate::homological::{ChainComplex, GradedElement};
use crate::report::{Check, Report};
use crate::resolution::{expected_rank, LaResolution};
use crate::scalar::{Field, Rational};
use crate::transfer::{basis_elements, DgProduct};

/// `dim_k (R/m^a)_t`.
pub fn hilbert_function(n: usize, a: usize, t: usize) -> usize {
    if t < a {
        binomial(n + t - 1, t)
    } else {
        0
    }
}

/// Checks that `c` is a minimal graded free resolution of `R/m^a`:
/// `∂² = 0`, homogeneous entries in `m`, ranks `1, rank L_{0,a}, ...`,
/// and on every strand `t <= max_internal_degree` homology only in degree 0,
/// of dimension the Hilbert function.
pub fn verify_resolution_complex<F: Field>(c: &ChainComplex<F>, n: usize, a: usize, max_internal_degree: u32) -> Report {
    let mut r = Report::new();
    r.push(c.verify_square_zero());
    let d = c.differential();
    let homogeneous = d.check_homogeneous("differential homogeneous");
    let strands_defined = homogeneous.passed;
    r.push(homogeneous);
    let mut minimal = Check::new("minimality");
    for (deg, block) in d.blocks().iter().enumerate() {
        for (row, col, e) in block.triples() {
            minimal.item(e.in_maximal_ideal_power(1), || format!("degree {} entry ({}, {})", deg, row, col));
        }
    }
    r.push(minimal);
    let mut ranks = Check::new("ranks");
    let expected: Vec<usize> = std::iter::once(1).chain((0..n).map(|i| expected_rank(n, a, i))).collect();
    let actual = c.modules().ranks();
    for (deg, e) in expected.iter().enumerate() {
        ranks.item(actual.get(deg) == Some(e), || format!("degree {}: {:?} vs {}", deg, actual.get(deg), e));
    }
    ranks.item(actual.len() <= expected.len(), || format!("extra degrees {:?}", actual));
    r.push(ranks);
    let mut exact = Check::new("strand exactness");
    let mut h0 = Check::new("H0 is R/m^a");
    if !strands_defined {
        exact.fail("strands undefined for an inhomogeneous differential".into());
        h0.fail("strands undefined for an inhomogeneous differential".into());
    }
    for t in (0..=max_internal_degree).filter(|_| strands_defined) {
        let dims = c.strand_homology_dims(t);
        for (deg, &h) in dims.iter().enumerate().skip(1) {
            exact.item(h == 0, || format!("strand {} degree {}: homology of dimension {}", t, deg, h));
        }
        let expected = hilbert_function(n, a, t as usize);
        h0.item(dims.first().copied().unwrap_or(0) == expected, || format!("strand {}: {:?} vs {}", t, dims.first(), expected));
    }
    r.push(exact);
    r.push(h0);
    r
}

/// [`verify_resolution_complex`] on `L_a`, plus the kernel bases lying in
/// `ker κ` with the expected ranks.
pub fn verify_resolution<F: Field>(res: &LaResolution<F>, max_internal_degree: u32) -> Report {
    let mut r = verify_resolution_complex(res.complex(), res.n(), res.a(), max_internal_degree);
    let mut kernel = Check::new("basis in ker kappa");
    for i in 0..res.n() {
        for (k, b) in res.basis(i).vectors.iter().enumerate() {
            kernel.item(crate::bicomplex::kappa(b).is_zero(), || format!("L_{{{},{}}} vector {}", i, res.a(), k + 1));
        }
    }
    r.push(kernel);
    r
}

/// `π(αβ) = π(α)π(β)` for every permutation `π` of the variables and every
/// basis pair (and the differential), computed on representatives.
pub fn verify_equivariance<F: Field>(res: &LaResolution<F>) -> Report {
    let perms = permutations(res.n());
    let basis = basis_elements(res.complex());
    let act = |x: &GradedElement<F>, perm: &[usize]| res.element_from_bi(&res.element_to_bi(x).permute(perm));
    let mut product = Check::new("product equivariance");
    let mut differential = Check::new("differential equivariance");
    for perm in &perms {
        for x in &basis {
            let loc = || format!("{} under {:?}", res.display(x), perm);
            let lhs = act(&res.differential().apply(x), perm);
            let rhs = act(x, perm).map(|px| res.differential().apply(&px));
            differential.item(matches!((lhs, rhs), (Ok(l), Ok(r)) if l.vector == r.vector), loc);
            for y in &basis {
                let lhs = act(&res.multiply(x, y), perm);
                let rhs = act(x, perm).and_then(|px| Ok(res.multiply(&px, &act(y, perm)?)));
                let ok = matches!((lhs, rhs), (Ok(l), Ok(r)) if l.vector == r.vector);
                product.item(ok, || format!("({}, {}) under {:?}", res.display(x), res.display(y), perm));
            }
        }
    }
    let mut r = Report::new();
    r.push(differential);
    r.push(product);
    r
}

/// Every matrix of `res` equals the corresponding rational matrix reduced
/// into `F`.
pub fn verify_reduction<F: Field>(res: &LaResolution<F>, rational: &LaResolution<Rational>) -> Report {
    let reduce = |q: &Rational| F::from_rational(q);
    let mut r = Report::new();
    let mut pairs = vec![
        ("differential", rational.differential().try_map_coefficients(reduce), res.differential()),
        ("i-infinity", rational.sdr().i.try_map_coefficients(reduce), &res.sdr().i),
        ("p-infinity", rational.sdr().p.try_map_coefficients(reduce), &res.sdr().p),
        ("h-infinity", rational.sdr().h.try_map_coefficients(reduce), &res.sdr().h),
    ];
    for (name, reduced, actual) in pairs.drain(..) {
        let name = format!("{} reduces", name);
        match reduced {
            Some(m) => r.push(m.compare(actual, &name)),
            None => {
                let mut c = Check::new(name);
                c.fail("denominator divisible by the characteristic".into());
                r.push(c);
            }
        }
    }
    let mut product = Check::new("product reduces");
    match rational.product().try_map_coefficients(reduce) {
        Some(p) => {
            let basis = basis_elements(res.complex());
            for x in &basis {
                for y in &basis {
                    product.item(p.multiply(x, y).vector == res.multiply(x, y).vector, || {
                        format!("({}, {})", res.display(x), res.display(y))
                    });
                }
            }
        }
        None => product.fail("denominator divisible by the characteristic".into()),
    }
    r.push(product);
    r
}
