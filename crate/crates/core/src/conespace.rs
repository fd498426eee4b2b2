//! Exact geometry of the tree cones `pos(T)`.
//!
//! Indicators are evaluated only at *generic* points, meaning points whose
//! coordinates in every spanning-tree basis are nonzero. Facet points are
//! rejected with [`Error::BoundaryPoint`] so no closure convention is ever
//! needed.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{enumerate_spanning_trees, path_tree, Permutation, SpanningTree};
use crate::linalg::{rational, Rational, RationalMatrix, RationalVector};
use crate::treedecomp::Decomposition;

pub const DEFAULT_BOUND: u64 = 1_000_000;
pub const DEFAULT_ATTEMPTS: usize = 10_000;

/// Coordinates of `x` in the edge basis of `tree`, in the order of
/// `tree.edges()`.
///
/// The coefficient of an edge is the total mass of `x` on the subtree below
/// it, negated when the edge points toward the root.
pub fn tree_coordinates(tree: &SpanningTree, x: &RationalVector) -> Vec<Rational> {
    let n = tree.n();
    assert_eq!(x.dim(), n, "point dimension does not match tree");
    let children = tree.children();
    let mut order = vec![0];
    let mut i = 0;
    while i < order.len() {
        order.extend_from_slice(&children[order[i]]);
        i += 1;
    }
    let mut mass = vec![Rational::zero(); n + 1];
    for &v in order.iter().rev().filter(|&&v| v != 0) {
        mass[v] += &x.0[v - 1];
        let m = mass[v].clone();
        mass[tree.parent(v).expect("non-root")] += m;
    }
    tree.edges()
        .iter()
        .map(|e| {
            if tree.parent(e.head) == Some(e.tail) {
                mass[e.head].clone()
            } else {
                -mass[e.tail].clone()
            }
        })
        .collect()
}

/// `χ_T(x)` at a generic point.
pub fn cone_indicator(tree: &SpanningTree, x: &RationalVector) -> Result<bool> {
    let mut inside = true;
    for a in tree_coordinates(tree, x) {
        if a.is_zero() {
            return Err(Error::BoundaryPoint {
                tree: tree.to_string(),
            });
        }
        inside &= a.is_positive();
    }
    Ok(inside)
}

/// How candidate points are drawn before the genericity filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sampling {
    /// Integer coordinates uniform in `[-bound, bound]`.
    #[default]
    Uniform,
    /// Spanning trees taken round-robin from a seeded shuffle, then integer
    /// edge weights uniform in `[1, bound]`; every tree cone gets the same
    /// share of points no matter how narrow it is.
    TreeCones,
}

/// Seeded sampler of points that avoid every facet hyperplane of every
/// spanning-tree cone in n-space.
#[derive(Debug, Clone)]
pub struct GenericSampler {
    n: usize,
    sampling: Sampling,
    bound: u64,
    attempts: usize,
    trees: Vec<SpanningTree>,
    rng: ChaCha8Rng,
    rejected: usize,
    drawn: usize,
}

impl GenericSampler {
    pub fn new(n: usize, seed: u64, bound: u64) -> Result<Self> {
        if bound == 0 {
            return Err(Error::SamplingExhausted { attempts: 0, bound });
        }
        Ok(Self {
            n,
            sampling: Sampling::Uniform,
            bound,
            attempts: DEFAULT_ATTEMPTS,
            trees: enumerate_spanning_trees(n)?,
            rng: ChaCha8Rng::seed_from_u64(seed),
            rejected: 0,
            drawn: 0,
        })
    }

    pub fn with_sampling(mut self, sampling: Sampling) -> Self {
        self.sampling = sampling;
        self
    }

    pub fn with_attempts(mut self, attempts: usize) -> Self {
        self.attempts = attempts;
        self
    }

    pub fn is_generic(&self, x: &RationalVector) -> bool {
        self.trees
            .iter()
            .all(|t| tree_coordinates(t, x).iter().all(|a| !a.is_zero()))
    }

    pub fn next_point(&mut self) -> Result<RationalVector> {
        let b = self.bound as i64;
        for _ in 0..self.attempts {
            self.drawn += 1;
            let coords = match self.sampling {
                Sampling::Uniform => (0..self.n).map(|_| self.rng.random_range(-b..=b)).collect(),
                Sampling::TreeCones => {
                    if self.drawn % self.trees.len() == 1 || self.trees.len() == 1 {
                        self.trees.shuffle(&mut self.rng);
                    }
                    let tree = &self.trees[(self.drawn - 1) % self.trees.len()];
                    let mut coords = vec![0i64; self.n];
                    for e in tree.edges() {
                        let w = self.rng.random_range(1..=b);
                        coords[e.head - 1] += w;
                        if e.tail != 0 {
                            coords[e.tail - 1] -= w;
                        }
                    }
                    coords
                }
            };
            let x = RationalVector::from_integers(&coords);
            if self.is_generic(&x) {
                return Ok(x);
            }
            self.rejected += 1;
        }
        Err(Error::SamplingExhausted {
            attempts: self.attempts,
            bound: self.bound,
        })
    }

    pub fn take(&mut self, count: usize) -> Result<Vec<RationalVector>> {
        (0..count).map(|_| self.next_point()).collect()
    }

    /// Fraction of draws accepted so far.
    pub fn acceptance_rate(&self) -> f64 {
        if self.drawn == 0 {
            return 1.0;
        }
        1.0 - self.rejected as f64 / self.drawn as f64
    }
}

pub fn sample_generic_point(n: usize, seed: u64, bound: u64) -> Result<RationalVector> {
    GenericSampler::new(n, seed, bound)?.next_point()
}

/// `count` uniform generic points from one seeded stream; a larger `count`
/// with the same seed extends the smaller set.
pub fn sample_generic_points(n: usize, seed: u64, bound: u64, count: usize) -> Result<Vec<RationalVector>> {
    sample_points(n, seed, bound, count, Sampling::Uniform)
}

pub fn sample_points(
    n: usize,
    seed: u64,
    bound: u64,
    count: usize,
    sampling: Sampling,
) -> Result<Vec<RationalVector>> {
    GenericSampler::new(n, seed, bound)?.with_sampling(sampling).take(count)
}

pub fn evaluate_decomposition(d: &Decomposition, x: &RationalVector) -> Result<Rational> {
    let mut total = Rational::zero();
    for (s, c) in &d.coefficients {
        if cone_indicator(&path_tree(s), x)? {
            total += c;
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointFailure {
    pub point: RationalVector,
    /// `χ_T(x)`
    pub lhs: Rational,
    /// The decomposition evaluated at `x`.
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub n: usize,
    pub tree: SpanningTree,
    pub points: usize,
    pub failures: Vec<PointFailure>,
    /// How many points fell in `pos(T)`.
    pub target_hits: usize,
    /// How many points fell in each path cone of the support.
    pub cone_hits: BTreeMap<Permutation, usize>,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "tree": self.tree.to_string(),
            "points": self.points,
            "failures": self.failures.iter().map(|f| json!({
                "point": f.point.to_string(),
                "lhs": f.lhs.to_string(),
                "rhs": f.rhs.to_string(),
            })).collect::<Vec<_>>(),
            "target_hits": self.target_hits,
            "cone_hits": self.cone_hits.iter()
                .map(|(s, k)| (s.to_string(), json!(k)))
                .collect::<serde_json::Map<_, _>>(),
            "pass": self.pass(),
        })
    }
}

pub fn verify_decomposition(
    tree: &SpanningTree,
    d: &Decomposition,
    points: &[RationalVector],
) -> Result<VerificationReport> {
    let paths: Vec<(SpanningTree, &Permutation, &Rational)> =
        d.coefficients.iter().map(|(s, c)| (path_tree(s), s, c)).collect();
    let mut report = VerificationReport {
        n: tree.n(),
        tree: tree.clone(),
        points: points.len(),
        failures: Vec::new(),
        target_hits: 0,
        cone_hits: d.coefficients.keys().map(|s| (s.clone(), 0)).collect(),
    };
    for x in points {
        let lhs = if cone_indicator(tree, x)? {
            report.target_hits += 1;
            Rational::one()
        } else {
            Rational::zero()
        };
        let mut rhs = Rational::zero();
        for (path, s, c) in &paths {
            if cone_indicator(path, x)? {
                rhs += *c;
                *report.cone_hits.get_mut(*s).expect("support key") += 1;
            }
        }
        if lhs != rhs {
            report.failures.push(PointFailure {
                point: x.clone(),
                lhs,
                rhs,
            });
        }
    }
    Ok(report)
}

/// Rows are trees, columns are points, entries `χ_T(x) ∈ {0, 1}`.
pub fn evaluation_matrix(trees: &[SpanningTree], points: &[RationalVector]) -> Result<RationalMatrix> {
    let rows = trees
        .par_iter()
        .map(|t| {
            points
                .iter()
                .map(|x| cone_indicator(t, x).map(|b| rational(b.into())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut m = RationalMatrix::from_rows(rows);
    if trees.is_empty() {
        m = RationalMatrix::zeros(0, points.len());
    }
    Ok(m)
}

pub fn rank(m: &RationalMatrix) -> usize {
    m.rank()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimensionReport {
    pub n: usize,
    pub points: usize,
    pub rank: usize,
    /// Rank on a point set twice as large (a superset of the first).
    pub doubled_rank: usize,
}

impl DimensionReport {
    pub fn stable(&self) -> bool {
        self.rank == self.doubled_rank
    }
}

/// Rank of the sampled span of all tree indicators, on cone-stratified
/// points.
pub fn space_dimension(n: usize, seed: u64, point_count: usize) -> Result<DimensionReport> {
    space_dimension_with_bound(n, seed, point_count, DEFAULT_BOUND)
}

pub fn space_dimension_with_bound(n: usize, seed: u64, point_count: usize, bound: u64) -> Result<DimensionReport> {
    let trees = enumerate_spanning_trees(n)?;
    let points = sample_points(n, seed, bound, 2 * point_count, Sampling::TreeCones)?;
    let rank = evaluation_matrix(&trees, &points[..point_count])?.rank();
    let doubled_rank = evaluation_matrix(&trees, &points)?.rank();
    Ok(DimensionReport {
        n,
        points: point_count,
        rank,
        doubled_rank,
    })
}

/// Recovers the path-cone coefficients of `χ_T` from samples alone: solves
/// `Σ_s c_s χ_s(x) = χ_T(x)` over all sample points. Zero coefficients are
/// omitted from the result.
pub fn solve_coefficients_with_points(
    tree: &SpanningTree,
    points: &[RationalVector],
) -> Result<BTreeMap<Permutation, Rational>> {
    let perms = Permutation::all(tree.n());
    let paths: Vec<SpanningTree> = perms.iter().map(path_tree).collect();
    // columns of the system are permutations, rows are points
    let system = evaluation_matrix(&paths, points)?.transpose();
    let rhs = points
        .iter()
        .map(|x| cone_indicator(tree, x).map(|b| rational(b.into())))
        .collect::<Result<Vec<_>>>()?;
    let solution = system.solve(&rhs)?;
    Ok(perms
        .into_iter()
        .zip(solution)
        .filter(|(_, c)| !c.is_zero())
        .collect())
}

pub fn solve_coefficients_oracle(
    tree: &SpanningTree,
    seed: u64,
    point_count: usize,
) -> Result<BTreeMap<Permutation, Rational>> {
    let points = sample_points(tree.n(), seed, DEFAULT_BOUND, point_count, Sampling::TreeCones)?;
    solve_coefficients_with_points(tree, &points)
}
