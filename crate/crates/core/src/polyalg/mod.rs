//! Polynomial side of the story: edge polynomials `p_x`, products `p_Y`,
//! the span of the `p_{G∖T}`, the basis `P_s` and its dual `M_s` under
//! `⟨p, q⟩ = p(D)q(0)`.
//!
//! The dual polynomial of a single-source acyclic orientation `H` is the
//! unique (up to scale) homogeneous polynomial of degree `|H| - n`
//! annihilated by `p_{X_i}(D)` for every `i`, where `X_i` is the set of
//! inflow edges of vertex `i`. It is computed as an exact nullspace on one
//! homogeneous component.

mod polynomial;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

pub use polynomial::{index_of, monomials_of_degree, Monomial, Polynomial};

use crate::error::{Error, Result};
use crate::graph::{
    complete_graph, enumerate_spanning_trees, mismatch, path_tree, reorient, sources, OrientedEdge,
    OrientedGraph, Permutation, SpanningTree, Vertex,
};
use crate::linalg::{rational, Rational, RationalMatrix};
use crate::poset::compatible;

/// `t(head) - t(tail)`, with `t(0) ≡ 0`.
pub fn edge_polynomial(n: usize, e: OrientedEdge) -> Polynomial {
    let head = Polynomial::var(n, e.head);
    if e.tail == 0 {
        head
    } else {
        &head - &Polynomial::var(n, e.tail)
    }
}

pub fn product_polynomial(y: &OrientedGraph) -> Polynomial {
    y.edges()
        .iter()
        .fold(Polynomial::one(y.n()), |acc, &e| &acc * &edge_polynomial(y.n(), e))
}

/// `p(D) q`.
pub fn apply_operator(p: &Polynomial, q: &Polynomial) -> Polynomial {
    p.apply_to(q)
}

/// `⟨p, q⟩ = p(D)q(0)`.
pub fn pairing(p: &Polynomial, q: &Polynomial) -> Rational {
    p.pair(q)
}

fn binomial2(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

/// Matrix of `p(D)` from degree-`d` polynomials to degree `d - deg p`.
fn operator_matrix(p: &Polynomial, domain: &[Monomial]) -> RationalMatrix {
    let n = p.n();
    let k = p.homogeneous_degree().expect("operator must be homogeneous and nonzero");
    let d = domain.first().map_or(0, Monomial::degree);
    if k > d {
        return RationalMatrix::zeros(0, domain.len());
    }
    let codomain = monomials_of_degree(n, d - k);
    let index = index_of(&codomain);
    let mut m = RationalMatrix::zeros(codomain.len(), domain.len());
    for (j, mono) in domain.iter().enumerate() {
        let mut q = Polynomial::zero(n);
        q.add_term(mono.clone(), Rational::one());
        for (out, c) in p.apply_to(&q).terms() {
            m[(index[out], j)] = c.clone();
        }
    }
    m
}

/// Rank of `{p_{G∖T} : T spanning}` in the degree-`C(n,2)` component.
pub fn soc_dimension(n: usize) -> Result<usize> {
    let g = complete_graph(n)?;
    let basis = monomials_of_degree(n, binomial2(n));
    let index = index_of(&basis);
    let rows = enumerate_spanning_trees(n)?
        .iter()
        .map(|t| product_polynomial(&g.minus(&t.as_graph())).coordinates(&index, basis.len()))
        .collect();
    Ok(RationalMatrix::from_rows(rows).rank())
}

/// `P_s = p_{G^s ∖ T_{s,on}}`.
pub fn p_basis(s: &Permutation) -> Polynomial {
    let g = complete_graph(s.n()).expect("permutations have n >= 1");
    let gs = reorient(&g, s);
    product_polynomial(&gs.minus(&path_tree(s).as_graph()))
}

/// Edges of `h` whose head is `i`.
pub fn inflow_partition(h: &OrientedGraph, i: Vertex) -> OrientedGraph {
    OrientedGraph::new(h.n(), h.edges().iter().copied().filter(|e| e.head == i))
        .expect("subset of a simple graph")
}

/// For a complete orientation (a transitive tournament), the permutation
/// whose order it encodes.
fn tournament_order(h: &OrientedGraph) -> Option<Permutation> {
    let n = h.n();
    if h.len() != (n + 1) * n / 2 {
        return None;
    }
    let mut by_indegree = vec![None; n + 1];
    for v in 0..=n {
        let slot = by_indegree.get_mut(h.in_degree(v))?;
        if slot.replace(v).is_some() {
            return None;
        }
    }
    let values: Option<Vec<Vertex>> = by_indegree.into_iter().skip(1).collect();
    Permutation::new(values?).ok()
}

/// The joint-kernel polynomial of `h`.
///
/// For `h = G^s` it is scaled so that `⟨P_s, M⟩ = 1`; otherwise its leading
/// coefficient is 1.
pub fn dual_polynomial(h: &OrientedGraph) -> Result<Polynomial> {
    let n = h.n();
    if n == 0 || !h.is_single_source_acyclic() {
        return Err(Error::InvalidOrientation(format!(
            "{h} is not acyclic with single source 0"
        )));
    }
    let degree = (h.len() - n) as u32;
    let domain = monomials_of_degree(n, degree);
    let mut stacked = RationalMatrix::zeros(0, domain.len());
    for i in 1..=n {
        let op = product_polynomial(&inflow_partition(h, i));
        stacked.stack(&operator_matrix(&op, &domain));
    }
    let kernel = stacked.nullspace();
    if kernel.len() != 1 {
        return Err(Error::KernelDimension(kernel.len()));
    }
    let m = Polynomial::from_coordinates(n, &domain, &kernel[0]);
    let scale = match tournament_order(h) {
        Some(s) => {
            let value = p_basis(&s).pair(&m);
            if value.is_zero() {
                m.leading_coefficient().expect("kernel vector is nonzero").clone()
            } else {
                value
            }
        }
        None => m.leading_coefficient().expect("kernel vector is nonzero").clone(),
    };
    Ok(m.scale(&scale.recip()))
}

/// `M_s`, the dual polynomial of `G^s`.
pub fn dual_for(s: &Permutation) -> Result<Polynomial> {
    dual_polynomial(&reorient(&complete_graph(s.n())?, s))
}

/// Precomputed `P_s` and `M_s` for every `s ∈ S_n`.
#[derive(Debug, Clone)]
pub struct SymbolicBasis {
    n: usize,
    graph: OrientedGraph,
    perms: Vec<Permutation>,
    p: Vec<Polynomial>,
    m: Vec<Polynomial>,
}

impl SymbolicBasis {
    pub fn new(n: usize) -> Result<Self> {
        use rayon::prelude::*;
        let graph = complete_graph(n)?;
        let perms = Permutation::all(n);
        let p = perms.iter().map(p_basis).collect();
        let m = perms.par_iter().map(dual_for).collect::<Result<Vec<_>>>()?;
        Ok(Self { n, graph, perms, p, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn permutations(&self) -> &[Permutation] {
        &self.perms
    }

    fn index(&self, s: &Permutation) -> usize {
        self.perms.binary_search(s).expect("permutation of the basis size")
    }

    pub fn p(&self, s: &Permutation) -> &Polynomial {
        &self.p[self.index(s)]
    }

    pub fn m(&self, s: &Permutation) -> &Polynomial {
        &self.m[self.index(s)]
    }

    /// `⟨p_{G∖T}, M_s⟩`, checked against `(-1)^{mm(G∖T,s)} C(T, T_s)`.
    pub fn expansion_coefficient(&self, tree: &SpanningTree, s: &Permutation) -> Result<Rational> {
        let complement = self.graph.minus(&tree.as_graph());
        let value = product_polynomial(&complement).pair(self.m(s));
        let closed_form = if compatible(tree, &path_tree(s)) {
            rational(if mismatch(&complement, s).is_multiple_of(2) { 1 } else { -1 })
        } else {
            Rational::zero()
        };
        if value != closed_form {
            return Err(Error::Mismatch {
                perm: s.clone(),
                pairing: value.to_string(),
                closed_form: closed_form.to_string(),
            });
        }
        Ok(value)
    }

    /// Path-cone coefficients of `χ_T` via the dual basis: the expansion
    /// coefficient of `P_s`, converted to the `p_{G∖T_s}` normalization.
    pub fn crosscheck(&self, tree: &SpanningTree) -> Result<BTreeMap<Permutation, Rational>> {
        let mut out = BTreeMap::new();
        for s in &self.perms {
            let c = self.expansion_coefficient(tree, s)?;
            if c.is_zero() {
                continue;
            }
            let flip = mismatch(&self.graph.minus(&path_tree(s).as_graph()), s) % 2 == 1;
            out.insert(s.clone(), if flip { -c } else { c });
        }
        Ok(out)
    }

    /// `(p_Y(D) M_s == 0, G^s ∖ Y^s has a source other than 0)`.
    pub fn kernel_property_check(&self, s: &Permutation, y: &OrientedGraph) -> (bool, bool) {
        let lhs = product_polynomial(y).apply_to(self.m(s)).is_zero();
        let remaining = reorient(&self.graph, s).minus(y);
        let rhs = sources(&remaining).into_iter().any(|v| v != 0);
        (lhs, rhs)
    }

    /// `⟨p_{(G∖T)^s}, M_s⟩`, which should always be 0 or 1.
    pub fn reoriented_complement_value(&self, tree: &SpanningTree, s: &Permutation) -> Rational {
        let y = reorient(&self.graph.minus(&tree.as_graph()), s);
        product_polynomial(&y).pair(self.m(s))
    }

    pub fn biorthogonality(&self) -> BiorthogonalityReport {
        let k = self.perms.len();
        let mut matrix = RationalMatrix::zeros(k, k);
        for (i, p) in self.p.iter().enumerate() {
            for (j, m) in self.m.iter().enumerate() {
                matrix[(i, j)] = p.pair(m);
            }
        }
        let two_valued = (0..k).all(|i| (0..k).all(|j| matrix[(i, j)].is_zero() || matrix[(i, j)].is_one()));
        BiorthogonalityReport {
            n: self.n,
            identity: matrix.is_identity(),
            two_valued,
            matrix,
        }
    }
}

/// `[⟨P_{s'}, M_s⟩]` with rows `s'` and columns `s`, both lexicographic.
#[derive(Debug, Clone)]
pub struct BiorthogonalityReport {
    pub n: usize,
    pub matrix: RationalMatrix,
    pub identity: bool,
    pub two_valued: bool,
}

pub fn biorthogonality_check(n: usize) -> Result<BiorthogonalityReport> {
    Ok(SymbolicBasis::new(n)?.biorthogonality())
}

pub fn expansion_coefficient(tree: &SpanningTree, s: &Permutation) -> Result<Rational> {
    let g = complete_graph(tree.n())?;
    let basis = SymbolicBasis {
        n: tree.n(),
        graph: g,
        perms: vec![s.clone()],
        p: vec![p_basis(s)],
        m: vec![dual_for(s)?],
    };
    basis.expansion_coefficient(tree, s)
}

pub fn crosscheck(tree: &SpanningTree) -> Result<BTreeMap<Permutation, Rational>> {
    SymbolicBasis::new(tree.n())?.crosscheck(tree)
}

pub fn kernel_property_check(s: &Permutation, y: &OrientedGraph) -> Result<(bool, bool)> {
    let basis = SymbolicBasis {
        n: s.n(),
        graph: complete_graph(s.n())?,
        perms: vec![s.clone()],
        p: vec![p_basis(s)],
        m: vec![dual_for(s)?],
    };
    Ok(basis.kernel_property_check(s, y))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecursionCase {
    /// `x` is the only inflow edge of its head; `p_x(D) M_H` must vanish.
    SoleInflow,
    /// `p_x(D) M_H` must be a nonzero multiple of `M_{H∖x}`.
    Proportional,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursionReport {
    pub edge: OrientedEdge,
    pub case: RecursionCase,
    pub derivative: Polynomial,
    /// `derivative / M_{H∖x}` in the proportional case.
    pub ratio: Option<Rational>,
    pub pass: bool,
}

pub fn recursion_check(h: &OrientedGraph, x: OrientedEdge) -> Result<RecursionReport> {
    if !h.edges().contains(&x) {
        return Err(Error::InvalidOrientation(format!("{x} is not an edge of {h}")));
    }
    let m = dual_polynomial(h)?;
    let derivative = edge_polynomial(h.n(), x).apply_to(&m);
    if inflow_partition(h, x.head).len() == 1 {
        return Ok(RecursionReport {
            edge: x,
            case: RecursionCase::SoleInflow,
            pass: derivative.is_zero(),
            derivative,
            ratio: None,
        });
    }
    let reduced = dual_polynomial(&h.without_edge(x))?;
    let ratio = derivative.ratio_to(&reduced);
    Ok(RecursionReport {
        edge: x,
        case: RecursionCase::Proportional,
        pass: ratio.is_some(),
        derivative,
        ratio,
    })
}
