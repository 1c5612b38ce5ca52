//! Named verification suites over a single `(n, a)` configuration.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bicomplex::{binomial, check_admissible, verify_rows, verify_scaled_leibniz_exhaustive, verify_scaled_leibniz_sampled};
use crate::error::{Error, Result};
use crate::homological::GradedElement;
use crate::report::{Check, Report};
use crate::resolution::{build_la, comparison_map, verify_equivariance, verify_reduction, verify_resolution, LaResolution};
use crate::scalar::{Field, Rational};
use crate::transfer::{
    ainfty_descend_simplified, basis_elements, check_generalized_leibniz, check_higher_ops_vanish, check_stasheff, enumerate_pbt,
    enumerate_pt, htt_term, verify_dg_axioms, verify_i_multiplicative, AinfinityStructure, DgAsAinfinity, DgProduct, PlanarTree,
    Sampling,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Rows,
    Sdr,
    Dg,
    Resolution,
    Comparison,
    Htt,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Rows, Suite::Sdr, Suite::Dg, Suite::Resolution, Suite::Comparison, Suite::Htt];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Rows => "rows",
            Suite::Sdr => "sdr",
            Suite::Dg => "dg",
            Suite::Resolution => "resolution",
            Suite::Comparison => "comparison",
            Suite::Htt => "htt",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Suite::All].iter().chain(Suite::ALL.iter()).copied().find(|x| x.name() == s).ok_or_else(|| Error::InvalidConfig(format!("unknown suite {:?}", s)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub n: usize,
    pub a: usize,
    /// Source of the comparison map; defaults to `a + 1`, or to `a` when
    /// `a + 1` is inadmissible for the field.
    pub b: Option<usize>,
    /// Optional third level for the composition check.
    pub c: Option<usize>,
    /// Strand bound for the resolution suite; defaults to `a + n + 2`.
    pub max_internal_degree: Option<u32>,
    pub seed: u64,
}

impl SuiteConfig {
    pub fn new(n: usize, a: usize) -> Self {
        SuiteConfig { n, a, b: None, c: None, max_internal_degree: None, seed: 0 }
    }

    pub fn b<F: Field>(&self) -> usize {
        self.b.unwrap_or(if check_admissible::<F>(self.n, self.a + 1).is_ok() { self.a + 1 } else { self.a })
    }

    /// Largest `a`, `b`, `c` in use for the given suite.
    pub fn top_level<F: Field>(&self, suite: Suite) -> usize {
        match suite {
            Suite::All | Suite::Comparison => self.a.max(self.b::<F>()).max(self.c.unwrap_or(0)),
            _ => self.a,
        }
    }

    pub fn validate<F: Field>(&self, suite: Suite) -> Result<()> {
        if self.n == 0 || self.a == 0 {
            return Err(Error::InvalidConfig("need n >= 1 and a >= 1".into()));
        }
        if let Some(m) = self.max_internal_degree {
            if (m as usize) < self.a + self.n {
                return Err(Error::InvalidConfig(format!("max internal degree must be at least a + n = {}", self.a + self.n)));
            }
        }
        if matches!(suite, Suite::All | Suite::Comparison) {
            let b = self.b::<F>();
            if b < self.a || self.c.is_some_and(|c| c < b) {
                return Err(Error::InvalidConfig("comparison levels need c >= b >= a".into()));
            }
        }
        check_admissible::<F>(self.n, self.top_level::<F>(suite))
    }
}

/// Runs `suite`; an inadmissible configuration is an error, failed checks
/// are reported (construction failures become failed checks too).
pub fn run_suite<F: Field>(suite: Suite, config: &SuiteConfig) -> Result<Report> {
    config.validate::<F>(suite)?;
    let suites: Vec<Suite> = if suite == Suite::All { Suite::ALL.to_vec() } else { vec![suite] };
    let needs_la = suites.iter().any(|s| *s != Suite::Rows);
    let la = if needs_la { Some(build_checked::<F>(config.n, config.a)) } else { None };
    let mut report = Report::new();
    for s in suites {
        let part = match (s, &la) {
            (Suite::Rows, _) => rows::<F>(config),
            (_, Some(Err(e))) => failed_build(e),
            (Suite::Sdr, Some(Ok(res))) => sdr(res, config),
            (Suite::Dg, Some(Ok(res))) => dg(res, config),
            (Suite::Resolution, Some(Ok(res))) => verify_resolution(res, config.max_internal_degree.unwrap_or((config.a + config.n + 2) as u32)),
            (Suite::Comparison, Some(Ok(res))) => comparison(res, config),
            (Suite::Htt, Some(Ok(res))) => htt(res, config),
            _ => unreachable!("every suite but rows has a resolution"),
        };
        report.extend(part.prefixed(&format!("{}/", s)));
    }
    Ok(report)
}

fn build_checked<F: Field>(n: usize, a: usize) -> std::result::Result<LaResolution<F>, String> {
    build_la::<F>(n, a).map_err(|e| match e {
        Error::Verification(r) => r.failure_summary(),
        other => other.to_string(),
    })
}

fn failed_build(message: &str) -> Report {
    let mut c = Check::new("build");
    c.fail(message.to_string());
    let mut r = Report::new();
    r.push(c);
    r
}

fn pair_limit<F: Field>() -> usize {
    match F::characteristic() {
        0 => usize::MAX,
        p => p as usize - 1,
    }
}

fn rows<F: Field>(config: &SuiteConfig) -> Report {
    let (n, a) = (config.n, config.a);
    let limit = pair_limit::<F>();
    let max_column = (a + n - 1).min(limit.saturating_sub(n));
    let mut r = verify_rows::<F>(n, max_column);
    let degree = 3.min(limit / 2);
    r.push(verify_scaled_leibniz_exhaustive::<F>(n, degree));
    r.push(verify_scaled_leibniz_sampled::<F>(n, degree, 500, config.seed));
    r
}

fn sdr<F: Field>(res: &LaResolution<F>, _config: &SuiteConfig) -> Report {
    let mut r = res.build_report().clone();
    r.extend(res.verify_closed_forms());
    if F::characteristic() != 0 {
        match build_la::<Rational>(res.n(), res.a()) {
            Ok(q) => r.extend(verify_reduction(res, &q)),
            Err(e) => r.extend(failed_build(&e.to_string())),
        }
    }
    r
}

fn triples_sampling(basis_len: usize, seed: u64) -> Sampling {
    if basis_len.pow(3) <= 20_000 {
        Sampling::Exhaustive
    } else {
        Sampling::Sampled { seed, count: 1000 }
    }
}

fn dg<F: Field>(res: &LaResolution<F>, config: &SuiteConfig) -> Report {
    let basis = basis_elements(res.complex());
    let mut r = verify_dg_axioms(res.product(), Sampling::Exhaustive, triples_sampling(basis.len(), config.seed));
    r.push(verify_i_multiplicative(res.sdr(), res.xa(), res.product(), Sampling::Exhaustive));
    let mut explicit = Check::new("explicit product formula");
    let mut minimal = Check::new("products of positive degree in m*L");
    for x in &basis {
        for y in &basis {
            let loc = || format!("({}, {})", res.display(x), res.display(y));
            let value = res.multiply(x, y);
            explicit.item(res.multiply_explicit(x, y).map(|e| e.vector == value.vector).unwrap_or(false), loc);
            if res.a() >= 2 && x.degree > 0 && y.degree > 0 {
                minimal.item(value.vector.entries().all(|(_, c)| c.in_maximal_ideal_power(1)), loc);
            }
        }
    }
    r.push(explicit);
    r.push(minimal);
    r.extend(verify_equivariance(res));
    r
}

fn comparison<F: Field>(la: &LaResolution<F>, config: &SuiteConfig) -> Report {
    let mut r = Report::new();
    let b = config.b::<F>();
    let built = |level: usize| build_checked::<F>(config.n, level);
    let lb = match built(b) {
        Ok(x) => x,
        Err(e) => return failed_build(&e),
    };
    let f_ba = match comparison_map(&lb, la) {
        Ok(f) => f,
        Err(e) => return failed_build(&e.to_string()),
    };
    r.extend(f_ba.verify(&lb, la).prefixed(&format!("f_{{{},{}}}/", b, config.a)));
    if let Some(c) = config.c {
        let lc = match built(c) {
            Ok(x) => x,
            Err(e) => return failed_build(&e),
        };
        match (comparison_map(&lc, &lb), comparison_map(&lc, la)) {
            (Ok(f_cb), Ok(f_ca)) => {
                r.extend(f_cb.verify(&lc, &lb).prefixed(&format!("f_{{{},{}}}/", c, b)));
                r.extend(f_ca.verify(&lc, la).prefixed(&format!("f_{{{},{}}}/", c, config.a)));
                r.push(f_ca.verify_composition(&f_ba, &f_cb));
            }
            (Err(e), _) | (_, Err(e)) => r.extend(failed_build(&e.to_string())),
        }
    }
    r
}

fn catalan(n: usize) -> usize {
    binomial(2 * n, n) / (n + 1)
}

/// Little Schröder numbers `s_1 = s_2 = 1`, `(k+1)s_{k+1} = 3(2k−1)s_k − (k−2)s_{k−1}`.
fn little_schroeder(n: usize) -> usize {
    let mut s = vec![0i64, 1, 1];
    for k in 2..n {
        let next = (3 * (2 * k as i64 - 1) * s[k] - (k as i64 - 2) * s[k - 1]) / (k as i64 + 1);
        s.push(next);
    }
    s[n] as usize
}

fn htt<F: Field>(res: &LaResolution<F>, config: &SuiteConfig) -> Report {
    let mut r = Report::new();
    let mut counts = Check::new("tree counts");
    for n in 1..=6 {
        let pbt = enumerate_pbt(n).len();
        let pt = enumerate_pt(n).len();
        counts.item(pbt == catalan(n - 1), || format!("PBT_{}: {}", n, pbt));
        counts.item(pt == little_schroeder(n), || format!("PT_{}: {}", n, pt));
    }
    r.push(counts);

    let sdr = res.sdr();
    let xa = DgAsAinfinity(res.xa());
    let basis = basis_elements(res.complex());
    let describe = |t: &[GradedElement<F>]| t.iter().map(|x| format!("[{}]{}", x.degree, res.display(x))).collect::<Vec<_>>().join(", ");

    // The perturbed homotopy need not satisfy the rule; the hypotheses are
    // checked on the special retract before perturbation.
    let h = &res.perturbed().h;
    let mut hypotheses = Check::new("unperturbed h satisfies hi=0 and the generalized Leibniz rule");
    hypotheses.item(h.compose(&res.unperturbed().i).map(|m| m.is_zero()).unwrap_or(false), || "hi".into());
    let xbasis = basis_elements(res.xa().complex());
    let sampling = if xbasis.len() <= 40 { Sampling::Exhaustive } else { Sampling::Sampled { seed: config.seed, count: 500 } };
    for t in &crate::transfer::tuples(&xbasis, 2, sampling) {
        let ok = check_generalized_leibniz(h, res.xa(), &t[0], &t[1]).unwrap_or(false);
        hypotheses.item(ok, || format!("({}, {})", res.xa().to_bi(&t[0]), res.xa().to_bi(&t[1])));
    }
    r.push(hypotheses);

    let mut vanish = Check::new("all PBT3/PBT4 terms vanish");
    let triples = crate::transfer::tuples(&basis, 3, triples_sampling(basis.len(), config.seed));
    let quads = crate::transfer::tuples(&basis, 4, Sampling::Sampled { seed: config.seed, count: 200 });
    for t in triples.iter().chain(&quads) {
        let ok = check_higher_ops_vanish(t.len(), sdr, &xa, t).unwrap_or(false);
        vanish.item(ok, || describe(t));
    }
    r.push(vanish);

    let descended = ainfty_descend_simplified(sdr, &xa);
    let mut m2 = Check::new("descended m2 equals the product table");
    for t in crate::transfer::tuples(&basis, 2, Sampling::Exhaustive) {
        let table = res.product().multiply(&t[0], &t[1]);
        let corolla = htt_term(&PlanarTree::corolla(2), &t, sdr, &xa).map(|v| v == table).unwrap_or(false);
        m2.item(descended.op(&t) == table && corolla, || describe(&t));
    }
    r.push(m2);

    let la = DgAsAinfinity(res.product());
    let mut stasheff = Check::new("Stasheff identities n<=4");
    for len in 1..=4 {
        let sampling = match len {
            1 | 2 => Sampling::Exhaustive,
            3 => triples_sampling(basis.len(), config.seed),
            _ => Sampling::Sampled { seed: config.seed, count: 200 },
        };
        for t in crate::transfer::tuples(&basis, len, sampling) {
            stasheff.item(check_stasheff(&la, &t) && check_stasheff(&descended, &t), || describe(&t));
        }
    }
    r.push(stasheff);
    r
}
