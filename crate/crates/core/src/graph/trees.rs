//! Free-tree enumeration and canonical forms.
//!
//! Labeled trees come from decoding every Prüfer sequence. Isomorphism classes
//! are generated by leaf extension: every tree on `n` vertices is a tree on
//! `n - 1` vertices plus one leaf, so extending each class representative at
//! every vertex and deduplicating by canonical form yields all classes.

use super::{Graph, GraphError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Isomorphism-invariant encoding of a tree: the smaller of the AHU
/// parenthesis strings obtained by rooting at each center.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TreeCanonicalForm(pub String);

impl std::fmt::Display for TreeCanonicalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeEnumConfig {
    /// Largest `n` for Prüfer enumeration (`n^(n-2)` trees).
    pub labeled_cap: usize,
    /// Largest `n` for isomorphism-class enumeration.
    pub unlabeled_cap: usize,
}

impl Default for TreeEnumConfig {
    fn default() -> Self {
        TreeEnumConfig {
            labeled_cap: 9,
            unlabeled_cap: 18,
        }
    }
}

/// Lazily decodes every Prüfer sequence of length `n - 2`.
pub struct PruferTrees {
    n: usize,
    seq: Vec<usize>,
    done: bool,
}

impl PruferTrees {
    pub fn new(n: usize) -> Self {
        PruferTrees {
            n,
            seq: vec![0; n.saturating_sub(2)],
            done: n == 0,
        }
    }
}

impl Iterator for PruferTrees {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.done {
            return None;
        }
        let tree = decode_prufer(self.n, &self.seq);
        // odometer increment
        let mut i = self.seq.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.seq[i] += 1;
            if self.seq[i] < self.n {
                break;
            }
            self.seq[i] = 0;
        }
        Some(tree)
    }
}

pub(crate) fn decode_prufer(n: usize, seq: &[usize]) -> Graph {
    if n == 1 {
        return Graph::empty(1);
    }
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut leaves: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..n)
        .filter(|&v| degree[v] == 1)
        .map(std::cmp::Reverse)
        .collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let std::cmp::Reverse(leaf) = leaves.pop().unwrap();
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.push(std::cmp::Reverse(s));
        }
    }
    let std::cmp::Reverse(a) = leaves.pop().unwrap();
    let std::cmp::Reverse(b) = leaves.pop().unwrap();
    edges.push((a, b));
    Graph::from_edges(n, &edges).expect("Prüfer decoding yields a simple tree")
}

pub fn enumerate_labeled_trees(n: usize, cfg: &TreeEnumConfig) -> Result<PruferTrees, GraphError> {
    if n == 0 || n > cfg.labeled_cap {
        return Err(GraphError::EnumerationCap {
            n,
            cap: cfg.labeled_cap,
        });
    }
    Ok(PruferTrees::new(n))
}

/// All trees on `n` vertices. With `dedup`, one canonically labeled
/// representative per isomorphism class, sorted by canonical form; without,
/// every labeled tree in Prüfer order.
pub fn enumerate_trees(
    n: usize,
    dedup: bool,
    cfg: &TreeEnumConfig,
) -> Result<Vec<Graph>, GraphError> {
    if !dedup {
        return Ok(enumerate_labeled_trees(n, cfg)?.collect());
    }
    if n == 0 || n > cfg.unlabeled_cap {
        return Err(GraphError::EnumerationCap {
            n,
            cap: cfg.unlabeled_cap,
        });
    }
    let mut level: Vec<Graph> = vec![Graph::empty(1)];
    for size in 2..=n {
        let mut next: BTreeMap<TreeCanonicalForm, Graph> = BTreeMap::new();
        for t in &level {
            for v in 0..t.n() {
                let mut edges = t.edges().to_vec();
                edges.push((v, size - 1));
                let grown = Graph::from_edges(size, &edges).unwrap();
                let form = canonical_form(&grown).unwrap();
                next.entry(form)
                    .or_insert_with(|| canonical_tree(&grown).unwrap());
            }
        }
        level = next.into_values().collect();
    }
    Ok(level)
}

/// The one or two centers of a tree, by repeated leaf stripping.
pub(crate) fn tree_centers(t: &Graph) -> Vec<usize> {
    let n = t.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for w in t.neighbors(leaf) {
                if degree[w] > 1 {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
            degree[leaf] = 0;
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// Rooted AHU codes of every vertex for the tree rooted at `root`, plus the
/// parent array and a BFS order.
fn rooted_codes(t: &Graph, root: usize) -> (Vec<String>, Vec<usize>, Vec<usize>) {
    let n = t.n();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    order.push(root);
    parent[root] = root;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for w in t.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                order.push(w);
            }
        }
    }
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &v in order.iter().skip(1) {
        children[parent[v]].push(v);
    }
    let mut code = vec![String::new(); n];
    for &v in order.iter().rev() {
        let mut parts: Vec<&str> = children[v].iter().map(|&c| code[c].as_str()).collect();
        parts.sort_unstable();
        let mut s = String::with_capacity(2 + parts.iter().map(|p| p.len()).sum::<usize>());
        s.push('(');
        for p in parts {
            s.push_str(p);
        }
        s.push(')');
        code[v] = s;
    }
    (code, parent, order)
}

pub fn canonical_form(t: &Graph) -> Result<TreeCanonicalForm, GraphError> {
    if !t.is_tree() {
        return Err(GraphError::NotATree);
    }
    let best = tree_centers(t)
        .into_iter()
        .map(|c| rooted_codes(t, c).0.swap_remove(c))
        .min()
        .unwrap();
    Ok(TreeCanonicalForm(best))
}

/// Relabels a tree so that isomorphic inputs produce identical graphs: root at
/// the center with the smallest code, order children by code, number in
/// preorder.
pub fn canonical_tree(t: &Graph) -> Result<Graph, GraphError> {
    if !t.is_tree() {
        return Err(GraphError::NotATree);
    }
    let (root, (code, parent, order)) = tree_centers(t)
        .into_iter()
        .map(|c| (c, rooted_codes(t, c)))
        .min_by(|a, b| a.1 .0[a.0].cmp(&b.1 .0[b.0]))
        .unwrap();
    let n = t.n();
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &v in order.iter().skip(1) {
        children[parent[v]].push(v);
    }
    for list in &mut children {
        list.sort_by(|&a, &b| code[a].cmp(&code[b]));
    }
    let mut perm = vec![0usize; n];
    let mut next = 0;
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        perm[v] = next;
        next += 1;
        stack.extend(children[v].iter().rev());
    }
    Ok(t.relabel(&perm))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_counts_match_cayley() {
        let cfg = TreeEnumConfig::default();
        for n in 1..=7usize {
            let count = enumerate_trees(n, false, &cfg).unwrap().len();
            let expected = if n <= 2 { 1 } else { n.pow(n as u32 - 2) };
            assert_eq!(count, expected, "n = {n}");
        }
    }

    #[test]
    fn small_class_counts() {
        let cfg = TreeEnumConfig::default();
        assert_eq!(enumerate_trees(2, true, &cfg).unwrap().len(), 1);
        assert_eq!(enumerate_trees(3, true, &cfg).unwrap().len(), 1);
        assert_eq!(enumerate_trees(4, true, &cfg).unwrap().len(), 2);
        assert_eq!(enumerate_trees(3, false, &cfg).unwrap().len(), 3);
        assert_eq!(enumerate_trees(4, false, &cfg).unwrap().len(), 16);
    }

    #[test]
    fn caps_are_enforced() {
        let cfg = TreeEnumConfig::default();
        assert!(matches!(
            enumerate_trees(10, false, &cfg),
            Err(GraphError::EnumerationCap { n: 10, cap: 9 })
        ));
        assert!(enumerate_trees(19, true, &cfg).is_err());
        assert!(enumerate_trees(0, true, &cfg).is_err());
    }

    #[test]
    fn canonical_form_examples() {
        let p4 = Graph::path(4);
        let relabeled = Graph::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(
            canonical_form(&p4).unwrap(),
            canonical_form(&relabeled).unwrap()
        );
        assert_ne!(
            canonical_form(&p4).unwrap(),
            canonical_form(&Graph::star(3)).unwrap()
        );
        assert_eq!(canonical_form(&Graph::empty(1)).unwrap().0, "()");
        assert_eq!(canonical_form(&Graph::cycle(4)), Err(GraphError::NotATree));
    }

    #[test]
    fn canonical_tree_is_a_fixpoint() {
        let t = Graph::from_edges(6, &[(5, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap();
        let c = canonical_tree(&t).unwrap();
        assert_eq!(canonical_tree(&c).unwrap(), c);
        assert_eq!(canonical_form(&c).unwrap(), canonical_form(&t).unwrap());
    }

    #[test]
    fn centers() {
        assert_eq!(tree_centers(&Graph::path(5)), vec![2]);
        assert_eq!(tree_centers(&Graph::path(4)), vec![1, 2]);
        assert_eq!(tree_centers(&Graph::star(5)), vec![0]);
    }
}
