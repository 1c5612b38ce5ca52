//! Acceptance criteria 1-10, one line each. Runs without the libtest harness
//! so the lines are always printed.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use koszul_transfer::bicomplex::{build_xa, verify_rows, verify_scaled_leibniz_exhaustive, verify_scaled_leibniz_sampled};
use koszul_transfer::homological::GradedElement;
use koszul_transfer::report::Report;
use koszul_transfer::resolution::{build_la, comparison_map, verify_reduction, verify_resolution, LaResolution};
use koszul_transfer::transfer::{
    ainfty_descend_simplified, basis_elements, check_higher_ops_vanish, check_stasheff, enumerate_pbt, enumerate_pt, htt_term,
    verify_dg_axioms, verify_i_multiplicative, AinfinityStructure, DgAsAinfinity, DgProduct, PlanarTree, Sampling,
};
use koszul_transfer::{Error, Field, Rational, F11, F3};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, Box<dyn Fn() -> Outcome>);

fn report_outcome(r: &Report, detail: String) -> Outcome {
    if r.passed() {
        Ok(detail)
    } else {
        Err(r.failure_summary())
    }
}

fn c1<F: Field>() -> Outcome {
    let mut items = 0;
    for n in [2, 3] {
        let r = verify_rows::<F>(n, 4);
        for name in ["kappa*sigma+sigma*kappa=1", "sigma^2=0"] {
            let c = r.check(name).ok_or("missing check")?;
            if !c.passed {
                return Err(format!("n={} {}: {:?}", n, name, c.failures));
            }
            items += c.items;
        }
    }
    Ok(format!("{} basis vectors", items))
}

fn c2<F: Field>() -> Outcome {
    let exhaustive = verify_scaled_leibniz_exhaustive::<F>(2, 3);
    let sampled = verify_scaled_leibniz_sampled::<F>(3, 3, 500, 1);
    let mut r = Report::new();
    let detail = format!("{} pairs (n=2), {} samples (n=3)", exhaustive.items, sampled.items);
    r.push(exhaustive);
    r.push(sampled);
    report_outcome(&r, detail)
}

fn c3<F: Field>(cases: &[(usize, usize)]) -> Outcome {
    for &(n, a) in cases {
        let res = build_la::<F>(n, a).map_err(|e| format!("n={} a={}: {}", n, a, e))?;
        let r = res.sdr().verify(true);
        if !r.passed() {
            return Err(format!("n={} a={}: {}", n, a, r.failure_summary()));
        }
    }
    Ok(format!("{} retracts", cases.len()))
}

fn c4<F: Field>(cases: &[(usize, usize)]) -> Outcome {
    for &(n, a) in cases {
        let res = build_la::<F>(n, a).map_err(|e| e.to_string())?;
        let r = verify_resolution(&res, (a + n + 2) as u32);
        if !r.passed() {
            return Err(format!("n={} a={}: {}", n, a, r.failure_summary()));
        }
    }
    Ok(format!("{} resolutions", cases.len()))
}

fn c5<F: Field>(exhaustive: (usize, usize), sampled: &[(usize, usize)]) -> Outcome {
    let (n, a) = exhaustive;
    let res = build_la::<F>(n, a).map_err(|e| e.to_string())?;
    let mut r = verify_dg_axioms(res.product(), Sampling::Exhaustive, Sampling::Exhaustive);
    r.push(verify_i_multiplicative(res.sdr(), res.xa(), res.product(), Sampling::Exhaustive));
    for &(n, a) in sampled {
        let res = build_la::<F>(n, a).map_err(|e| e.to_string())?;
        r.extend(verify_dg_axioms(res.product(), Sampling::Exhaustive, Sampling::Sampled { seed: 3, count: 1000 }).prefixed(&format!("n={} a={}/", n, a)));
    }
    let triples: usize = r.checks.iter().filter(|c| c.name.ends_with("associativity")).map(|c| c.items).sum();
    report_outcome(&r, format!("{} associativity triples", triples))
}

fn c6<F: Field>() -> Outcome {
    let l: Vec<LaResolution<F>> = (1..=3).map(|a| build_la::<F>(2, a)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let f21 = comparison_map(&l[1], &l[0]).map_err(|e| e.to_string())?;
    let f32 = comparison_map(&l[2], &l[1]).map_err(|e| e.to_string())?;
    let f31 = comparison_map(&l[2], &l[0]).map_err(|e| e.to_string())?;
    let mut r = f21.verify(&l[1], &l[0]);
    r.extend(f32.verify(&l[2], &l[1]));
    r.extend(f31.verify(&l[2], &l[0]));
    r.push(f31.verify_composition(&f21, &f32));
    report_outcome(&r, "f_{2,1}, f_{3,2}, f_{3,1}".into())
}

/// Independent tree enumeration: binary trees by grafting cherries onto
/// leaves, general trees as edge contractions of binary ones.
fn oracle_trees(n: usize) -> (BTreeSet<PlanarTree>, BTreeSet<PlanarTree>) {
    fn graft(t: &PlanarTree) -> Vec<PlanarTree> {
        match t {
            PlanarTree::Leaf => vec![PlanarTree::corolla(2)],
            PlanarTree::Node(cs) => (0..cs.len())
                .flat_map(|k| {
                    graft(&cs[k]).into_iter().map(move |g| {
                        let mut v = cs.clone();
                        v[k] = g;
                        PlanarTree::Node(v)
                    })
                })
                .collect(),
        }
    }
    fn contract(t: &PlanarTree) -> Vec<PlanarTree> {
        let PlanarTree::Node(cs) = t else { return vec![PlanarTree::Leaf] };
        let mut out: Vec<Vec<PlanarTree>> = vec![Vec::new()];
        for c in cs {
            let mut options: Vec<Vec<PlanarTree>> = Vec::new();
            for ct in contract(c) {
                if let PlanarTree::Node(g) = &ct {
                    options.push(g.clone());
                }
                options.push(vec![ct]);
            }
            out = out
                .iter()
                .flat_map(|p| options.iter().map(move |o| p.iter().chain(o).cloned().collect::<Vec<_>>()))
                .collect();
        }
        out.into_iter().map(PlanarTree::Node).collect()
    }
    let mut pbt: BTreeSet<PlanarTree> = [PlanarTree::Leaf].into();
    for _ in 1..n {
        pbt = pbt.iter().flat_map(graft).collect();
    }
    let pt = pbt.iter().flat_map(contract).collect();
    (pbt, pt)
}

fn c7() -> Outcome {
    for n in 2..=5 {
        let (pbt, pt) = oracle_trees(n);
        let ours: Vec<PlanarTree> = enumerate_pbt(n);
        if ours.len() != pbt.len() || ours.iter().cloned().collect::<BTreeSet<_>>() != pbt {
            return Err(format!("PBT_{} differs from the oracle", n));
        }
        let ours_pt: Vec<PlanarTree> = enumerate_pt(n);
        if ours_pt.len() != pt.len() || ours_pt.iter().cloned().collect::<BTreeSet<_>>() != pt {
            return Err(format!("PT_{} differs from the oracle", n));
        }
    }
    let counts: Vec<usize> = (2..=5).map(|n| enumerate_pbt(n).len()).collect();
    if counts != [1, 2, 5, 14] || enumerate_pt(3).len() != 3 || enumerate_pt(4).len() != 11 {
        return Err(format!("counts {:?}", counts));
    }
    let res = build_la::<Rational>(2, 2).map_err(|e| e.to_string())?;
    let xa = DgAsAinfinity(res.xa());
    let basis = basis_elements(res.complex());
    let mut checked = 0;
    for x in &basis {
        for y in &basis {
            for z in &basis {
                let t = [x.clone(), y.clone(), z.clone()];
                if !check_higher_ops_vanish(3, res.sdr(), &xa, &t).map_err(|e| e.to_string())? {
                    return Err(format!("PBT3 term nonzero on {:?}", t));
                }
                checked += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let t: Vec<GradedElement<Rational>> = (0..4).map(|_| basis[rng.gen_range(0..basis.len())].clone()).collect();
        if !check_higher_ops_vanish(4, res.sdr(), &xa, &t).map_err(|e| e.to_string())? {
            return Err(format!("PBT4 term nonzero on {:?}", t));
        }
    }
    Ok(format!("{} triples, 200 quadruples; counts {:?}", checked, counts))
}

fn c8() -> Outcome {
    let res = build_la::<Rational>(2, 2).map_err(|e| e.to_string())?;
    let la = DgAsAinfinity(res.product());
    let xa = DgAsAinfinity(res.xa());
    let descended = ainfty_descend_simplified(res.sdr(), &xa);
    let basis = basis_elements(res.complex());
    let mut tuples: Vec<Vec<GradedElement<Rational>>> = vec![Vec::new()];
    let mut checked = 0;
    for _ in 1..=4 {
        tuples = tuples.iter().flat_map(|t| basis.iter().map(move |b| t.iter().chain([b]).cloned().collect())).collect();
        for t in &tuples {
            if !check_stasheff(&la, t) {
                return Err(format!("Stasheff fails on {:?}", t));
            }
            checked += 1;
        }
    }
    for x in &basis {
        for y in &basis {
            let pair = [x.clone(), y.clone()];
            let corolla = htt_term(&PlanarTree::corolla(2), &pair, res.sdr(), &xa).map_err(|e| e.to_string())?;
            if descended.op(&pair) != res.product().multiply(x, y) || corolla != res.multiply(x, y) {
                return Err(format!("m2 differs on ({:?}, {:?})", x, y));
            }
        }
    }
    Ok(format!("{} Stasheff tuples, {} m2 entries", checked, basis.len() * basis.len()))
}

fn c9() -> Outcome {
    let mut parts = Vec::new();
    for (k, outcome) in [
        c1::<F11>(),
        c2::<F11>(),
        c3::<F11>(&[(2, 3)]),
        c4::<F11>(&[(2, 3)]),
        c5::<F11>((2, 3), &[]),
        c6::<F11>(),
    ]
    .into_iter()
    .enumerate()
    {
        outcome.map_err(|e| format!("criterion {} over F_11: {}", k + 1, e))?;
        parts.push(k + 1);
    }
    let q = build_la::<Rational>(2, 3).map_err(|e| e.to_string())?;
    let p = build_la::<F11>(2, 3).map_err(|e| e.to_string())?;
    let r = verify_reduction(&p, &q);
    if !r.passed() {
        return Err(r.failure_summary());
    }
    match build_xa::<F3>(2, 2) {
        Err(Error::InadmissibleCharacteristic { characteristic: 3, required: 4 }) => {}
        other => return Err(format!("p = 3 not rejected: {:?}", other.map(|_| ()))),
    }
    Ok(format!("criteria {:?} over F_11, reduction exact, p = 3 rejected", parts))
}

fn c10() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_koszul-transfer"))
            .args(["verify", "--suite", "all", "--n", "2", "--a", "2", "--seed", "7"])
            .output()
            .map_err(|e| e.to_string())
    };
    let first = run()?;
    let second = run()?;
    if !first.status.success() {
        return Err(format!("exit status {:?}", first.status.code()));
    }
    if first.stdout != second.stdout {
        return Err("outputs differ".into());
    }
    Ok(format!("{} identical bytes", first.stdout.len()))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("row contraction", Duration::from_secs(10), Box::new(c1::<Rational>)),
        ("scaled Leibniz", Duration::from_secs(30), Box::new(c2::<Rational>)),
        ("perturbation lemma", Duration::from_secs(60), Box::new(|| c3::<Rational>(&GRID))),
        ("resolution certification", Duration::from_secs(120), Box::new(|| c4::<Rational>(&GRID))),
        ("DG axioms", Duration::from_secs(300), Box::new(|| c5::<Rational>((2, 2), &[(3, 2), (3, 3)]))),
        ("comparison maps", Duration::from_secs(120), Box::new(c6::<Rational>)),
        ("HTT termwise vanishing", Duration::from_secs(120), Box::new(c7)),
        ("A-infinity machinery", Duration::from_secs(60), Box::new(c8)),
        ("positive characteristic", Duration::from_secs(180), Box::new(c9)),
        ("determinism", Duration::from_secs(120), Box::new(c10)),
    ];
    let mut failed = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *budget => Err(format!("{} but took {:.2?} (budget {:?})", detail, elapsed, budget)),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} {:<26} PASS ({}; {:.2?})", k + 1, name, detail, elapsed),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} {:<26} FAIL ({})", k + 1, name, e);
            }
        }
    }
    if failed > 0 {
        eprintln!("{} acceptance criteria failed", failed);
        std::process::exit(1);
    }
}

const GRID: [(usize, usize); 6] = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)];
