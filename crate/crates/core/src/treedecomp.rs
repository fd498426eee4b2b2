//! Closed-form expansion of a tree cone indicator in the path-cone basis.
//!
//! `c(T, s)` is `(-1)^(d(T) + d(T_s))` when the orders induced by `T` and by
//! the path tree `T_s` are compatible, and 0 otherwise.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{path_tree, Permutation, SpanningTree};
use crate::linalg::{rational, Rational};
use crate::poset::linear_extensions;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Tree(SpanningTree),
    Combination(Vec<(SpanningTree, Rational)>),
}

/// `Σ_s coefficients[s] · χ_s`, stored sparsely (zeros omitted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub n: usize,
    pub target: Target,
    pub coefficients: BTreeMap<Permutation, Rational>,
}

impl Decomposition {
    pub fn coefficient(&self, s: &Permutation) -> Rational {
        self.coefficients.get(s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &Permutation> {
        self.coefficients.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Sets the coefficient of `s`, dropping it when zero.
    pub fn set(&mut self, s: Permutation, value: Rational) {
        if value.is_zero() {
            self.coefficients.remove(&s);
        } else {
            self.coefficients.insert(s, value);
        }
    }

    pub fn to_json(&self) -> Value {
        let target = match &self.target {
            Target::Tree(t) => json!({ "tree": t.to_string() }),
            Target::Combination(terms) => json!({
                "combination": terms
                    .iter()
                    .map(|(t, w)| json!({ "tree": t.to_string(), "w": w.to_string() }))
                    .collect::<Vec<_>>()
            }),
        };
        json!({
            "n": self.n,
            "target": target,
            "coefficients": self
                .coefficients
                .iter()
                .map(|(s, c)| json!({ "perm": s.to_string(), "c": c.to_string() }))
                .collect::<Vec<_>>(),
        })
    }
}

pub fn coefficient(tree: &SpanningTree, s: &Permutation) -> i8 {
    assert_eq!(tree.n(), s.n(), "tree and permutation disagree on n");
    let path = path_tree(s);
    if !crate::poset::compatible(tree, &path) {
        return 0;
    }
    if (tree.distortion() + path.distortion()).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn decompose(tree: &SpanningTree) -> Decomposition {
    let mut coefficients = BTreeMap::new();
    for s in linear_extensions(tree) {
        let c = coefficient(tree, &s);
        debug_assert_ne!(c, 0);
        coefficients.insert(s, rational(c.into()));
    }
    Decomposition {
        n: tree.n(),
        target: Target::Tree(tree.clone()),
        coefficients,
    }
}

/// Expands `Σ_T w_T χ_T` by linearity.
pub fn decompose_combination(weights: &[(SpanningTree, Rational)]) -> Result<Decomposition> {
    let n = weights.first().map(|(t, _)| t.n()).ok_or(Error::Degenerate)?;
    if let Some((t, _)) = weights.iter().find(|(t, _)| t.n() != n) {
        return Err(Error::MixedN {
            expected: n,
            found: t.n(),
        });
    }
    let mut out = Decomposition {
        n,
        target: Target::Combination(weights.to_vec()),
        coefficients: BTreeMap::new(),
    };
    for (tree, w) in weights {
        for (s, c) in decompose(tree).coefficients {
            let v = out.coefficient(&s) + c * w;
            out.set(s, v);
        }
    }
    Ok(out)
}

/// Decomposition of the path cone `χ_s` itself.
pub fn unit(s: &Permutation) -> Decomposition {
    Decomposition {
        n: s.n(),
        target: Target::Tree(path_tree(s)),
        coefficients: BTreeMap::from([(s.clone(), Rational::one())]),
    }
}
