//! Deterministic JSON documents for resolutions, maps and reports.

use serde::Serialize;
use serde_json::{json, Value};

use crate::homological::GradedMap;
use crate::resolution::{ComparisonMap, LaResolution};
use crate::scalar::Field;
use crate::transfer::{basis_elements, DgProduct};

#[derive(Serialize)]
struct Entry {
    row: usize,
    col: usize,
    value: String,
}

#[derive(Serialize)]
struct Block {
    degree: usize,
    source: Vec<String>,
    target: Vec<String>,
    entries: Vec<Entry>,
}

/// Sparse blocks of a graded map, one per source degree.
pub fn map_document<F: Field>(map: &GradedMap<F>) -> Value {
    let blocks: Vec<Block> = map
        .blocks()
        .iter()
        .enumerate()
        .map(|(degree, b)| Block {
            degree,
            source: b.source().labels().iter().map(ToString::to_string).collect(),
            target: b.target().labels().iter().map(ToString::to_string).collect(),
            entries: b.triples().into_iter().map(|(row, col, e)| Entry { row, col, value: e.to_string() }).collect(),
        })
        .collect();
    json!({ "shift": map.shift(), "blocks": blocks })
}

pub fn comparison_document<F: Field>(f: &ComparisonMap<F>) -> Value {
    json!({ "b": f.b, "a": f.a, "map": map_document(&f.map) })
}

/// Ranks, bases with representatives, `∂`, `i∞`, `p∞`, `h∞`, the nonzero
/// product table entries, and the given comparison maps.
pub fn resolution_document<F: Field>(res: &LaResolution<F>, comparisons: &[ComparisonMap<F>]) -> Value {
    let complex = res.complex();
    let bases: Vec<Value> = (0..complex.len() as i64)
        .map(|d| {
            let module = complex.component(d);
            let reps: Vec<String> = (0..module.rank())
                .map(|k| res.element_to_bi(&crate::homological::GradedElement::basis(d, res.n(), k)).to_string())
                .collect();
            json!({
                "degree": d,
                "labels": module.labels().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "internal_degrees": (0..module.rank()).map(|k| module.degree(k)).collect::<Vec<_>>(),
                "representatives": reps,
            })
        })
        .collect();
    let basis = basis_elements(complex);
    let mut product = Vec::new();
    for x in &basis {
        for y in &basis {
            let value = res.multiply(x, y);
            if value.is_zero() {
                continue;
            }
            product.push(json!({
                "left": [x.degree, x.vector.max_index()],
                "right": [y.degree, y.vector.max_index()],
                "value": res.display(&value),
            }));
        }
    }
    json!({
        "n": res.n(),
        "a": res.a(),
        "characteristic": F::characteristic(),
        "ranks": res.ranks(),
        "bases": bases,
        "differential": map_document(res.differential()),
        "i_infinity": map_document(&res.sdr().i),
        "p_infinity": map_document(&res.sdr().p),
        "h_infinity": map_document(&res.sdr().h),
        "nilpotency_order": res.perturbed().nilpotency_order,
        "unit": res.display(&crate::homological::GradedElement::new(0, res.product().unit())),
        "product": product,
        "comparison_maps": comparisons.iter().map(comparison_document).collect::<Vec<_>>(),
    })
}
