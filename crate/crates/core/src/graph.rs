//! The complete graph on `[0:n]`, its spanning trees, and the three
//! orientations in play: canonical (`tail < head`), natural (rooted at 0),
//! and the orientation induced by a permutation.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Vertex = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrientedEdge {
    pub tail: Vertex,
    pub head: Vertex,
}

impl OrientedEdge {
    pub fn new(tail: Vertex, head: Vertex) -> Self {
        assert_ne!(tail, head, "loops are not edges");
        Self { tail, head }
    }

    /// The same edge pointing from the smaller to the larger endpoint.
    pub fn canonical(self) -> Self {
        if self.tail < self.head {
            self
        } else {
            self.reversed()
        }
    }

    pub fn reversed(self) -> Self {
        Self {
            tail: self.head,
            head: self.tail,
        }
    }

    pub fn is_canonical(self) -> bool {
        self.tail < self.head
    }

    /// Unordered endpoint pair `(min, max)`.
    pub fn key(self) -> (Vertex, Vertex) {
        let c = self.canonical();
        (c.tail, c.head)
    }

    pub fn touches(self, v: Vertex) -> bool {
        self.tail == v || self.head == v
    }
}

impl fmt::Display for OrientedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.tail, self.head)
    }
}

/// A simple oriented graph on `[0:n]`. Edges are kept sorted by their
/// unordered endpoint pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrientedGraph {
    n: usize,
    edges: Vec<OrientedEdge>,
}

impl OrientedGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = OrientedEdge>) -> Result<Self> {
        let mut edges: Vec<_> = edges.into_iter().collect();
        edges.sort_by_key(|e| e.key());
        for e in &edges {
            if e.tail > n || e.head > n {
                return Err(Error::InvalidOrientation(format!("edge {e} outside [0:{n}]")));
            }
        }
        if edges.windows(2).any(|w| w[0].key() == w[1].key()) {
            return Err(Error::InvalidOrientation("repeated edge".into()));
        }
        Ok(Self { n, edges })
    }

    pub fn empty(n: usize) -> Self {
        Self { n, edges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[OrientedEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains_pair(&self, e: OrientedEdge) -> bool {
        self.edges.binary_search_by_key(&e.key(), |x| x.key()).is_ok()
    }

    /// Edges of `self` whose endpoint pair does not occur in `other`.
    pub fn minus(&self, other: &OrientedGraph) -> OrientedGraph {
        Self {
            n: self.n,
            edges: self.edges.iter().copied().filter(|&e| !other.contains_pair(e)).collect(),
        }
    }

    pub fn without_edge(&self, x: OrientedEdge) -> OrientedGraph {
        Self {
            n: self.n,
            edges: self.edges.iter().copied().filter(|e| e.key() != x.key()).collect(),
        }
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|e| e.head == v).count()
    }

    /// Whether the directed graph has no directed cycle.
    pub fn is_acyclic(&self) -> bool {
        let mut indeg = vec![0usize; self.n + 1];
        let mut out = vec![Vec::new(); self.n + 1];
        for e in &self.edges {
            indeg[e.head] += 1;
            out[e.tail].push(e.head);
        }
        let mut queue: VecDeque<_> = (0..=self.n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        seen == self.n + 1
    }

    /// Acyclic with 0 as its only source (so every vertex is reachable
    /// from 0).
    pub fn is_single_source_acyclic(&self) -> bool {
        self.is_acyclic() && sources(self) == BTreeSet::from([0])
    }
}

impl fmt::Display for OrientedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// A spanning tree of the complete graph on `[0:n]`, stored in canonical
/// orientation. Ordering is lexicographic on the sorted edge list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpanningTree {
    n: usize,
    edges: Vec<OrientedEdge>,
    // parent[v] in the rooting at 0; parent[0] is unused.
    parent: Vec<Vertex>,
}

impl SpanningTree {
    /// Builds a tree from undirected edges given as vertex pairs.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Degenerate);
        }
        let mut edges = Vec::new();
        for (a, b) in pairs {
            if a == b || a > n || b > n {
                return Err(Error::NotSpanning(format!("bad edge {a}-{b} for n = {n}")));
            }
            edges.push(OrientedEdge::new(a.min(b), a.max(b)));
        }
        edges.sort();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotSpanning("repeated edge".into()));
        }
        if edges.len() != n {
            return Err(Error::NotSpanning(format!("{} edges, need {n}", edges.len())));
        }
        let mut adj = vec![Vec::new(); n + 1];
        for e in &edges {
            adj[e.tail].push(e.head);
            adj[e.head].push(e.tail);
        }
        let mut parent = vec![usize::MAX; n + 1];
        let mut visited = vec![false; n + 1];
        visited[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if visited.iter().any(|&v| !v) {
            return Err(Error::NotSpanning("edges do not connect all vertices".into()));
        }
        Ok(Self { n, edges, parent })
    }

    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let tree: SpanningTree = text.parse()?;
        if tree.n != n {
            return Err(Error::NotSpanning(format!(
                "tree {text:?} spans [0:{}], expected [0:{n}]",
                tree.n
            )));
        }
        Ok(tree)
    }

    /// The star `{e_1, ..., e_n}`, i.e. the positive orthant.
    pub fn star(n: usize) -> Self {
        Self::from_pairs(n, (1..=n).map(|i| (0, i))).expect("star is a tree")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[OrientedEdge] {
        &self.edges
    }

    /// Parent of `v` in the rooting at 0 (`None` for the root).
    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        (v != 0).then(|| self.parent[v])
    }

    pub fn as_graph(&self) -> OrientedGraph {
        OrientedGraph {
            n: self.n,
            edges: self.edges.clone(),
        }
    }

    /// The tree re-oriented away from 0.
    pub fn natural_orientation(&self) -> OrientedGraph {
        OrientedGraph::new(
            self.n,
            self.edges.iter().map(|e| {
                if self.parent[e.head] == e.tail {
                    *e
                } else {
                    e.reversed()
                }
            }),
        )
        .expect("tree edges are distinct")
    }

    /// Number of edges whose canonical and natural orientations differ,
    /// i.e. edges whose parent endpoint is the larger one.
    pub fn distortion(&self) -> usize {
        self.edges.iter().filter(|e| self.parent[e.tail] == e.head).count()
    }

    /// Vertices of the subtree hanging below `v` (including `v`).
    pub fn subtree(&self, v: Vertex) -> Vec<Vertex> {
        let children = self.children();
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            out.extend_from_slice(&children[out[i]]);
            i += 1;
        }
        out
    }

    /// Children lists of the rooting at 0, each sorted ascending.
    pub fn children(&self) -> Vec<Vec<Vertex>> {
        let mut children = vec![Vec::new(); self.n + 1];
        for v in 1..=self.n {
            children[self.parent[v]].push(v);
        }
        children
    }

    /// The permutation `s` with `path_tree(s) == self`, if this is a path
    /// tree.
    pub fn as_path(&self) -> Option<Permutation> {
        let children = self.children();
        let mut values = Vec::with_capacity(self.n);
        let mut v = 0;
        loop {
            match children[v].as_slice() {
                [] => break,
                [w] => {
                    values.push(*w);
                    v = *w;
                }
                _ => return None,
            }
        }
        Some(Permutation { values })
    }
}

impl FromStr for SpanningTree {
    type Err = Error;

    /// Parses `"0-1,1-2,1-3"`; `n` is the number of edges.
    fn from_str(text: &str) -> Result<Self> {
        let pairs = text
            .split(',')
            .map(|tok| {
                let (a, b) = tok
                    .trim()
                    .split_once('-')
                    .ok_or_else(|| Error::Parse(format!("bad edge {tok:?}")))?;
                let a: Vertex = a.trim().parse().map_err(|_| Error::Parse(format!("bad vertex {a:?}")))?;
                let b: Vertex = b.trim().parse().map_err(|_| Error::Parse(format!("bad vertex {b:?}")))?;
                Ok((a, b))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairs(pairs.len(), pairs)
    }
}

impl fmt::Display for SpanningTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}-{}", e.tail, e.head)?;
        }
        Ok(())
    }
}

/// A permutation `s` of `[1:n]`, with the implicit `s(0) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    values: Vec<Vertex>,
}

impl Permutation {
    pub fn new(values: Vec<Vertex>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::Parse(format!("{values:?} is not a permutation of [1:{n}]")));
            }
        }
        Ok(Self { values })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            values: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Vertex] {
        &self.values
    }

    /// `s(i)` for `i` in `[0:n]`.
    pub fn at(&self, i: usize) -> Vertex {
        if i == 0 {
            0
        } else {
            self.values[i - 1]
        }
    }

    /// `s^{-1}` extended by `0 -> 0`, as a lookup table over `[0:n]`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.n() + 1];
        for (i, &v) in self.values.iter().enumerate() {
            pos[v] = i + 1;
        }
        pos
    }

    pub fn inversions(&self) -> usize {
        let v = &self.values;
        (0..v.len())
            .flat_map(|i| (i + 1..v.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| v[i] > v[j])
            .count()
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n + 1];
        fn rec(n: usize, current: &mut Vec<Vertex>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if current.len() == n {
                out.push(Permutation {
                    values: current.clone(),
                });
                return;
            }
            for v in 1..=n {
                if !used[v] {
                    used[v] = true;
                    current.push(v);
                    rec(n, current, used, out);
                    current.pop();
                    used[v] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `"213"`, `"[213]"`, `"0213"` and, for `n >= 10`,
    /// comma-separated `"10,1,2,..."`.
    fn from_str(text: &str) -> Result<Self> {
        let inner = text.trim();
        let inner = inner
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .unwrap_or(inner)
            .trim();
        let bad = || Error::Parse(format!("bad permutation {text:?}"));
        let mut values: Vec<Vertex> = if inner.contains(',') {
            inner
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            inner
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as Vertex).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        if values.first() == Some(&0) {
            values.remove(0);
        }
        if values.is_empty() {
            return Err(bad());
        }
        Permutation::new(values)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() < 10 {
            for v in &self.values {
                write!(f, "{v}")?;
            }
        } else {
            for (i, v) in self.values.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// All `C(n+1, 2)` edges `i -> j`, `0 <= i < j <= n`.
pub fn complete_graph(n: usize) -> Result<OrientedGraph> {
    if n == 0 {
        return Err(Error::Degenerate);
    }
    let edges = (0..=n).flat_map(|i| (i + 1..=n).map(move |j| OrientedEdge::new(i, j)));
    OrientedGraph::new(n, edges)
}

/// Decodes a Prüfer sequence over `[0:n]` (length `n - 1`).
pub fn decode_prufer(n: usize, seq: &[Vertex]) -> SpanningTree {
    assert_eq!(seq.len() + 1, n, "Prüfer sequence length must be n - 1");
    let mut degree = vec![1usize; n + 1];
    for &v in seq {
        degree[v] += 1;
    }
    let mut leaves: BTreeSet<Vertex> = (0..=n).filter(|&v| degree[v] == 1).collect();
    let mut pairs = Vec::with_capacity(n);
    for &v in seq {
        let leaf = leaves.pop_first().expect("a leaf always exists");
        pairs.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.insert(v);
        }
    }
    let a = leaves.pop_first().expect("two leaves remain");
    let b = leaves.pop_first().expect("two leaves remain");
    pairs.push((a, b));
    SpanningTree::from_pairs(n, pairs).expect("Prüfer decoding yields a tree")
}

/// Every spanning tree of the complete graph on `[0:n]`, sorted.
pub fn enumerate_spanning_trees(n: usize) -> Result<Vec<SpanningTree>> {
    if n == 0 {
        return Err(Error::Degenerate);
    }
    let len = n - 1;
    let mut seq = vec![0; len];
    let mut trees = Vec::with_capacity((n + 1).pow(len as u32));
    loop {
        trees.push(decode_prufer(n, &seq));
        // odometer over [0:n]^(n-1)
        let Some(k) = seq.iter().rposition(|&v| v < n) else {
            break;
        };
        seq[k] += 1;
        seq[k + 1..].iter_mut().for_each(|v| *v = 0);
    }
    trees.sort();
    Ok(trees)
}

pub fn path_tree(s: &Permutation) -> SpanningTree {
    let n = s.n();
    SpanningTree::from_pairs(n, (1..=n).map(|i| (s.at(i - 1), s.at(i)))).expect("a path is a tree")
}

/// Orients every edge of `y` from the endpoint that comes first in the
/// order `0, s(1), ..., s(n)` to the one that comes later.
pub fn reorient(y: &OrientedGraph, s: &Permutation) -> OrientedGraph {
    let pos = s.positions();
    OrientedGraph {
        n: y.n,
        edges: y
            .edges
            .iter()
            .map(|&e| if pos[e.tail] < pos[e.head] { e } else { e.reversed() })
            .collect(),
    }
}

/// Number of edges of `y` oriented differently in `reorient(y, s)`.
pub fn mismatch(y: &OrientedGraph, s: &Permutation) -> usize {
    let pos = s.positions();
    y.edges.iter().filter(|e| pos[e.tail] > pos[e.head]).count()
}

/// Vertices of `[0:n]` with no inflow edge in `y` (isolated vertices
/// included).
pub fn sources(y: &OrientedGraph) -> BTreeSet<Vertex> {
    let mut has_inflow = vec![false; y.n + 1];
    for e in &y.edges {
        has_inflow[e.head] = true;
    }
    (0..=y.n).filter(|&v| !has_inflow[v]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn graph(n: usize, edges: &[(Vertex, Vertex)]) -> OrientedGraph {
        OrientedGraph::new(n, edges.iter().map(|&(a, b)| OrientedEdge::new(a, b))).unwrap()
    }

    #[test]
    fn complete_graph_edges() {
        assert_eq!(complete_graph(1).unwrap(), graph(1, &[(0, 1)]));
        assert_eq!(complete_graph(2).unwrap(), graph(2, &[(0, 1), (0, 2), (1, 2)]));
        assert_eq!(complete_graph(3).unwrap().len(), 6);
        assert_eq!(complete_graph(0), Err(Error::Degenerate));
    }

    #[test]
    fn spanning_tree_counts() {
        for (n, count) in [(1, 1), (2, 3), (3, 16), (4, 125), (5, 1296)] {
            let trees = enumerate_spanning_trees(n).unwrap();
            assert_eq!(trees.len(), count);
            let distinct: BTreeSet<_> = trees.iter().collect();
            assert_eq!(distinct.len(), count);
        }
        assert!(enumerate_spanning_trees(0).is_err());
    }

    #[test]
    fn n2_trees_are_all_two_edge_acyclic_subsets() {
        let expected: Vec<SpanningTree> = ["0-1,0-2", "0-1,1-2", "0-2,1-2"]
            .iter()
            .map(|t| t.parse().unwrap())
            .collect();
        assert_eq!(enumerate_spanning_trees(2).unwrap(), expected);
    }

    #[test]
    fn natural_orientation_examples() {
        let star = SpanningTree::star(4);
        assert_eq!(star.natural_orientation(), star.as_graph());

        let t: SpanningTree = "0-2,1-2".parse().unwrap();
        assert_eq!(t.natural_orientation(), graph(2, &[(0, 2), (2, 1)]));

        let t: SpanningTree = "0-1,1-2,1-3".parse().unwrap();
        assert_eq!(t.natural_orientation(), graph(3, &[(0, 1), (1, 2), (1, 3)]));
    }

    #[test]
    fn distortion_examples() {
        assert_eq!(SpanningTree::star(5).distortion(), 0);
        assert_eq!(path_tree(&perm("21")).distortion(), 1);
        assert_eq!(path_tree(&perm("321")).distortion(), 2);
    }

    #[test]
    fn path_tree_examples() {
        assert_eq!(path_tree(&perm("12")).as_graph(), graph(2, &[(0, 1), (1, 2)]));
        let t = path_tree(&perm("4123"));
        assert_eq!(
            t.natural_orientation(),
            graph(4, &[(0, 4), (4, 1), (1, 2), (2, 3)])
        );
        assert_eq!(
            path_tree(&Permutation::identity(4)).as_graph(),
            graph(4, &[(0, 1), (1, 2), (2, 3), (3, 4)])
        );
    }

    #[test]
    fn path_detection() {
        assert_eq!(path_tree(&perm("213")).as_path(), Some(perm("213")));
        assert_eq!(SpanningTree::star(2).as_path(), None);
        let paths = enumerate_spanning_trees(3)
            .unwrap()
            .iter()
            .filter(|t| t.as_path().is_some())
            .count();
        assert_eq!(paths, 6);
    }

    #[test]
    fn reorient_examples() {
        let g = complete_graph(3).unwrap();
        assert_eq!(reorient(&g, &Permutation::identity(3)), g);
        let s = perm("21");
        assert_eq!(reorient(&path_tree(&s).as_graph(), &s), graph(2, &[(0, 2), (2, 1)]));
        assert_eq!(
            reorient(&complete_graph(2).unwrap(), &s),
            graph(2, &[(0, 1), (0, 2), (2, 1)])
        );
    }

    #[test]
    fn mismatch_counts_inversions() {
        for n in 1..=4 {
            let g = complete_graph(n).unwrap();
            for s in Permutation::all(n) {
                assert_eq!(mismatch(&g, &s), s.inversions());
                assert_eq!(mismatch(&g, &Permutation::identity(n)), 0);
                let t = path_tree(&s);
                assert_eq!(mismatch(&t.as_graph(), &s), t.distortion());
            }
        }
    }

    #[test]
    fn sources_examples() {
        for t in enumerate_spanning_trees(3).unwrap() {
            assert_eq!(sources(&t.natural_orientation()), BTreeSet::from([0]));
        }
        assert_eq!(sources(&graph(2, &[(0, 1), (2, 1)])), BTreeSet::from([0, 2]));
        assert_eq!(sources(&OrientedGraph::empty(2)), BTreeSet::from([0, 1, 2]));
    }

    #[test]
    fn permutation_text_formats() {
        assert_eq!(perm("[4123]"), perm("04123"));
        assert_eq!(perm("4123").values(), &[4, 1, 2, 3]);
        assert_eq!(perm("4123").to_string(), "4123");
        let big: Permutation = "10,1,2,3,4,5,6,7,8,9".parse().unwrap();
        assert_eq!(big.at(1), 10);
        assert_eq!(big.to_string(), "10,1,2,3,4,5,6,7,8,9");
        assert!("112".parse::<Permutation>().is_err());
        assert!("13".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().is_err());
        assert!("[]".parse::<Permutation>().is_err());
    }

    #[test]
    fn tree_text_format() {
        let t: SpanningTree = "1-3, 2-1,0-1".parse().unwrap();
        assert_eq!(t.to_string(), "0-1,1-2,1-3");
        assert!(matches!("0-1,1-2,0-2".parse::<SpanningTree>(), Err(Error::NotSpanning(_))));
        assert!(matches!("0-1,2-3".parse::<SpanningTree>(), Err(Error::NotSpanning(_))));
        assert!(matches!("0-1,1".parse::<SpanningTree>(), Err(Error::Parse(_))));
        assert!(SpanningTree::parse(3, "0-1,0-2").is_err());
    }
}
