//! The partial order a spanning tree induces on `[0:n]` by rooting it at 0,
//! compatibility of two such orders, and their linear extensions.

use crate::graph::{OrientedEdge, OrientedGraph, Permutation, SpanningTree, Vertex};

/// `i ≺ j` iff `i` lies strictly above `j` on the tree path from 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePartialOrder {
    n: usize,
    parent: Vec<Vertex>,
}

impl TreePartialOrder {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        (v != 0).then(|| self.parent[v])
    }

    /// Strict ancestor test.
    pub fn precedes(&self, i: Vertex, j: Vertex) -> bool {
        let mut v = j;
        while v != 0 {
            v = self.parent[v];
            if v == i {
                return true;
            }
        }
        false
    }

    /// Cover arcs `parent -> child`.
    fn cover_arcs(&self) -> impl Iterator<Item = OrientedEdge> + '_ {
        (1..=self.n).map(|v| OrientedEdge::new(self.parent[v], v))
    }
}

pub fn tree_partial_order(tree: &SpanningTree) -> TreePartialOrder {
    let n = tree.n();
    let mut parent = vec![0; n + 1];
    for (v, p) in parent.iter_mut().enumerate().skip(1) {
        *p = tree.parent(v).expect("non-root vertex has a parent");
    }
    TreePartialOrder { n, parent }
}

/// Whether the two induced orders admit a common linear extension.
pub fn compatible(a: &SpanningTree, b: &SpanningTree) -> bool {
    assert_eq!(a.n(), b.n(), "trees over different vertex sets");
    let pa = tree_partial_order(a);
    let pb = tree_partial_order(b);
    // Arcs present in both orders collapse to one; opposite arcs are a
    // 2-cycle and reject immediately.
    let mut arcs: Vec<OrientedEdge> = pa.cover_arcs().collect();
    for e in pb.cover_arcs() {
        if arcs.contains(&e.reversed()) {
            return false;
        }
        if !arcs.contains(&e) {
            arcs.push(e);
        }
    }
    OrientedGraph::new(a.n(), arcs.iter().copied())
        .map(|g| g.is_acyclic())
        // A pair in both directions cannot reach here; repeated pairs with
        // the same direction were deduplicated above.
        .unwrap_or(false)
}

/// All topological orders of the rooting of `tree`, restricted to `[1:n]`,
/// in lexicographic order.
pub fn linear_extensions(tree: &SpanningTree) -> Vec<Permutation> {
    let n = tree.n();
    let children = tree.children();
    let mut current = Vec::with_capacity(n);
    let mut out = Vec::new();

    fn rec(
        n: usize,
        children: &[Vec<Vertex>],
        available: &[Vertex],
        current: &mut Vec<Vertex>,
        out: &mut Vec<Permutation>,
    ) {
        if current.len() == n {
            out.push(Permutation::new(current.clone()).expect("extension is a permutation"));
            return;
        }
        for (idx, &v) in available.iter().enumerate() {
            let mut next: Vec<Vertex> = available.to_vec();
            next.remove(idx);
            next.extend_from_slice(&children[v]);
            next.sort_unstable();
            current.push(v);
            rec(n, children, &next, current, out);
            current.pop();
        }
    }

    rec(n, &children, &children[0], &mut current, &mut out);
    out
}

/// `n! / prod |subtree(v)|`, the closed-form count of linear extensions of
/// a rooted forest.
pub fn count_linear_extensions(tree: &SpanningTree) -> u128 {
    let n = tree.n();
    let factorial: u128 = (1..=n as u128).product();
    let hooks: u128 = (1..=n).map(|v| tree.subtree(v).len() as u128).product();
    factorial / hooks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_spanning_trees, path_tree, reorient};
    use std::collections::BTreeMap;

    fn tree(t: &str) -> SpanningTree {
        t.parse().unwrap()
    }

    fn perms(list: &[&str]) -> Vec<Permutation> {
        list.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn star_order_is_antichain() {
        let order = tree_partial_order(&SpanningTree::star(4));
        for i in 1..=4 {
            assert!(order.precedes(0, i));
            for j in 1..=4 {
                assert!(!order.precedes(i, j));
            }
        }
    }

    #[test]
    fn path_order_is_total() {
        let s: Permutation = "3142".parse().unwrap();
        let order = tree_partial_order(&path_tree(&s));
        for a in 1..=4 {
            for b in a + 1..=4 {
                assert!(order.precedes(s.at(a), s.at(b)));
                assert!(!order.precedes(s.at(b), s.at(a)));
            }
        }
    }

    #[test]
    fn branching_order() {
        let order = tree_partial_order(&tree("0-1,1-2,1-3"));
        assert!(order.precedes(1, 2));
        assert!(order.precedes(1, 3));
        assert!(!order.precedes(2, 3) && !order.precedes(3, 2));
        assert_eq!(order.parent(3), Some(1));
    }

    #[test]
    fn compatibility_examples() {
        let trees = enumerate_spanning_trees(3).unwrap();
        let star = SpanningTree::star(3);
        for t in &trees {
            assert!(compatible(t, t));
            assert!(compatible(&star, t));
            for u in &trees {
                assert_eq!(compatible(t, u), compatible(u, t));
            }
        }
        for s in Permutation::all(3) {
            for s2 in Permutation::all(3) {
                assert_eq!(compatible(&path_tree(&s), &path_tree(&s2)), s == s2);
            }
        }
    }

    #[test]
    fn compatibility_by_brute_force() {
        // A common extension exists iff some permutation extends both orders.
        let trees = enumerate_spanning_trees(3).unwrap();
        let all = Permutation::all(3);
        let extends = |t: &SpanningTree, s: &Permutation| {
            let order = tree_partial_order(t);
            let pos = s.positions();
            (1..=3).all(|i| (1..=3).all(|j| !order.precedes(i, j) || pos[i] < pos[j]))
        };
        for a in &trees {
            for b in &trees {
                let brute = all.iter().any(|s| extends(a, s) && extends(b, s));
                assert_eq!(compatible(a, b), brute, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn extension_examples() {
        assert_eq!(linear_extensions(&tree("0-1,1-2,0-3")), perms(&["123", "132", "312"]));
        assert_eq!(linear_extensions(&SpanningTree::star(3)), Permutation::all(3));
        let s: Permutation = "231".parse().unwrap();
        assert_eq!(linear_extensions(&path_tree(&s)), vec![s]);
    }

    #[test]
    fn extensions_match_compatibility_and_reorientation() {
        for n in 1..=4 {
            let all = Permutation::all(n);
            for t in enumerate_spanning_trees(n).unwrap() {
                let ext = linear_extensions(&t);
                let natural = t.natural_orientation();
                let by_compat: Vec<_> =
                    all.iter().filter(|s| compatible(&t, &path_tree(s))).cloned().collect();
                let by_orient: Vec<_> =
                    all.iter().filter(|s| reorient(&t.as_graph(), s) == natural).cloned().collect();
                assert_eq!(ext, by_compat);
                assert_eq!(ext, by_orient);
                assert_eq!(ext.len() as u128, count_linear_extensions(&t));
            }
        }
    }

    #[test]
    fn hook_count_n5() {
        for t in enumerate_spanning_trees(5).unwrap() {
            assert_eq!(linear_extensions(&t).len() as u128, count_linear_extensions(&t));
        }
    }

    #[test]
    fn n3_extension_count_multiset() {
        let mut hist = BTreeMap::new();
        for t in enumerate_spanning_trees(3).unwrap() {
            *hist.entry(linear_extensions(&t).len()).or_insert(0) += 1;
        }
        assert_eq!(hist, BTreeMap::from([(1, 6), (2, 3), (3, 6), (6, 1)]));
    }
}
