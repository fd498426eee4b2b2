//! Cross-section data for plotting tree cones and their path-cone
//! decompositions.
//!
//! Every canonically oriented edge `e_j - e_i` has positive weight under
//! `w(x) = x(1) + 2 x(2) + ... + n x(n)`, so each generator ray meets the
//! cut `w(x) = 1` exactly once. The planar chart of that cut for n = 3 is
//! `(x(1), x(2))`; for n = 2 the cut is a segment and the chart is `x(1)`.

use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use treecone::linalg::{rational, Rational};
use treecone::{decompose, path_tree, SpanningTree};

fn generator(n: usize, tail: usize, head: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[head - 1] += 1;
    if tail != 0 {
        v[tail - 1] -= 1;
    }
    v
}

fn cut_point(v: &[i64]) -> Vec<Rational> {
    let weight: i64 = v.iter().enumerate().map(|(k, x)| (k as i64 + 1) * x).sum();
    debug_assert!(weight > 0);
    v.iter().map(|&x| Rational::new(x.into(), weight.into())).collect()
}

fn chart(point: &[Rational]) -> Vec<Rational> {
    if point.len() == 2 {
        vec![point[0].clone()]
    } else {
        vec![point[0].clone(), point[1].clone()]
    }
}

fn cone_json(tree: &SpanningTree) -> Value {
    let n = tree.n();
    let mut rays = Vec::new();
    let mut exact = Vec::new();
    let mut xy = Vec::new();
    for e in tree.edges() {
        let v = generator(n, e.tail, e.head);
        let c = chart(&cut_point(&v));
        exact.push(c.iter().map(ToString::to_string).collect::<Vec<_>>());
        xy.push(c.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect::<Vec<_>>());
        rays.push(v);
    }
    json!({ "tree": tree.to_string(), "rays": rays, "cut": exact, "cut_xy": xy })
}

/// One entry per tree: the target cone and the signed path cones.
pub fn figure_data(n: usize, trees: &[SpanningTree]) -> Value {
    let entries: Vec<Value> = trees
        .iter()
        .map(|t| {
            let d = decompose(t);
            let mut target = cone_json(t);
            target["label"] = json!("target");
            let pieces: Vec<Value> = d
                .coefficients
                .iter()
                .map(|(s, c)| {
                    let mut piece = cone_json(&path_tree(s));
                    piece["perm"] = json!(s.to_string());
                    piece["label"] = json!(if *c > Rational::zero() { "+1" } else { "-1" });
                    piece
                })
                .collect();
            json!({ "target": target, "pieces": pieces })
        })
        .collect();
    let weights: Vec<Value> = (1..=n as i64).map(|k| json!(rational(k).to_string())).collect();
    json!({ "n": n, "cut_weights": weights, "cut_level": "1", "cones": entries })
}
