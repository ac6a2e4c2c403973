//! Simple undirected graphs over dense vertex ids `0..n`.
//!
//! Everything else in the crate is built on [`Graph`]: parsing of the
//! line-oriented edge-list format, breadth-first distances, the block/cut-vertex
//! decomposition, free-tree enumeration and random block-graph generation.

mod blocks;
mod generate;
mod trees;

pub(crate) use blocks::is_block_graph_with;
pub use blocks::{blocks_and_cut_vertices, is_block_graph, BlockDecomposition};
pub use generate::{random_block_graph, random_tree, BlockGraphParams};
pub(crate) use trees::tree_centers;
pub use trees::{
    canonical_form, canonical_tree, enumerate_labeled_trees, enumerate_trees, PruferTrees,
    TreeCanonicalForm, TreeEnumConfig,
};

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: malformed token {token:?}")]
    Malformed { line: usize, token: String },
    #[error("line {line}: vertex {vertex} outside declared range 0..{n}")]
    OutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    #[error("header declares {declared} edges but {found} were read")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("vertex {0} is not in the graph")]
    NoSuchVertex(usize),
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not a block graph")]
    NotBlockGraph,
    #[error("enumeration of n = {n} exceeds the cap of {cap}")]
    EnumerationCap { n: usize, cap: usize },
    #[error("infeasible generator parameters: {0}")]
    InfeasibleParams(String),
    #[error("invalid graph JSON: {0}")]
    Json(String),
}

/// An undirected simple graph. Immutable after construction.
///
/// Edges are stored once as `(u, v)` with `u < v`; edge ids index into
/// [`Graph::edges`]. Adjacency lists are sorted by neighbor id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops and duplicate edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut seen = HashSet::with_capacity(edges.len());
        let mut normalized = Vec::with_capacity(edges.len());
        for (idx, &(u, v)) in edges.iter().enumerate() {
            let line = idx + 1;
            if u == v {
                return Err(GraphError::SelfLoop { line, vertex: u });
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange { line, vertex: w, n });
                }
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge { line, u, v });
            }
            normalized.push(key);
        }
        Ok(Self::from_normalized(n, normalized))
    }

    fn from_normalized(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_normalized(n, Vec::new())
    }

    pub fn path(n: usize) -> Self {
        Self::from_normalized(n, (1..n).map(|v| (v - 1, v)).collect())
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::from_normalized(n, edges)
    }

    /// `K_{1,leaves}` with the center at vertex 0.
    pub fn star(leaves: usize) -> Self {
        Self::from_normalized(leaves + 1, (1..=leaves).map(|v| (0, v)).collect())
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        if n >= 3 {
            edges.push((0, n - 1));
        }
        Self::from_normalized(n, edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    /// `(neighbor, edge id)` pairs, sorted by neighbor.
    #[inline]
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search_by_key(&v, |&(w, _)| w).is_ok()
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n {
            return None;
        }
        self.adj[u]
            .binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| self.adj[u][i].1)
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::NoSuchVertex(v))
        }
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || bfs_distances(self, 0).is_ok_and(|d| d.iter().all(Option::is_some))
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.m() == self.n - 1 && self.is_connected()
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.n];
        for &v in set {
            member[v] = true;
        }
        set.iter().all(|&v| self.neighbors(v).all(|w| !member[w]))
    }

    /// Subgraph induced on `keep`; vertex `keep[i]` becomes `i`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u].min(pos[v]), pos[u].max(pos[v])))
            .collect();
        Graph::from_normalized(keep.len(), edges)
    }

    /// Same graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (perm[u].min(perm[v]), perm[u].max(perm[v])))
            .collect();
        Graph::from_normalized(self.n, edges)
    }

    /// Edge-list text with a `p <n> <m>` header.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p {} {}", self.n, self.m());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self, GraphError> {
        let edges: Vec<_> = json.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(json.n, &edges)
    }
}

/// JSON form of a graph: `{"n": …, "edges": [[u, v], …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

/// A parsed edge list. Sparse input ids are compacted to `0..n` in increasing
/// order; `ids[v]` is the original id of dense vertex `v`.
#[derive(Clone, Debug)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub ids: Vec<usize>,
}

/// Parses the edge-list format: an optional `p <n> <m>` header, `#` comments
/// and one `<u> <v>` pair per line.
///
/// With a header, ids must lie in `0..n` and are kept as they are (isolated
/// vertices allowed). Without one, the mentioned ids are compacted.
pub fn parse_edge_list(text: &str) -> Result<ParsedGraph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut raw: Vec<(usize, usize, usize)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "p" {
            if header.is_some() || !raw.is_empty() || tokens.len() != 3 {
                return Err(GraphError::Malformed {
                    line: line_no,
                    token: line.to_string(),
                });
            }
            let n = parse_token(tokens[1], line_no)?;
            let m = parse_token(tokens[2], line_no)?;
            header = Some((n, m));
            continue;
        }
        if tokens.len() != 2 {
            return Err(GraphError::Malformed {
                line: line_no,
                token: line.to_string(),
            });
        }
        let u = parse_token(tokens[0], line_no)?;
        let v = parse_token(tokens[1], line_no)?;
        if u == v {
            return Err(GraphError::SelfLoop {
                line: line_no,
                vertex: u,
            });
        }
        raw.push((u, v, line_no));
    }

    let (n, ids, map): (usize, Vec<usize>, BTreeMap<usize, usize>) = match header {
        Some((n, m)) => {
            if m != raw.len() {
                return Err(GraphError::EdgeCountMismatch {
                    declared: m,
                    found: raw.len(),
                });
            }
            for &(u, v, line) in &raw {
                for w in [u, v] {
                    if w >= n {
                        return Err(GraphError::OutOfRange { line, vertex: w, n });
                    }
                }
            }
            (n, (0..n).collect(), (0..n).map(|v| (v, v)).collect())
        }
        None => {
            let mut map = BTreeMap::new();
            for &(u, v, _) in &raw {
                map.insert(u, 0);
                map.insert(v, 0);
            }
            let ids: Vec<usize> = map.keys().copied().collect();
            for (dense, id) in ids.iter().enumerate() {
                map.insert(*id, dense);
            }
            (ids.len(), ids, map)
        }
    };

    let mut seen = HashSet::with_capacity(raw.len());
    let mut edges = Vec::with_capacity(raw.len());
    for &(u, v, line) in &raw {
        let (a, b) = (map[&u], map[&v]);
        let key = (a.min(b), a.max(b));
        if !seen.insert(key) {
            return Err(GraphError::DuplicateEdge { line, u, v });
        }
        edges.push(key);
    }
    Ok(ParsedGraph {
        graph: Graph::from_normalized(n, edges),
        ids,
    })
}

fn parse_token(token: &str, line: usize) -> Result<usize, GraphError> {
    token.parse().map_err(|_| GraphError::Malformed {
        line,
        token: token.to_string(),
    })
}

/// Parses either the edge-list text format or the JSON form, by sniffing the
/// first non-blank character.
pub fn parse_graph(text: &str) -> Result<ParsedGraph, GraphError> {
    if text.trim_start().starts_with('{') {
        let json: GraphJson =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        let graph = Graph::from_json(&json)?;
        let ids = (0..graph.n()).collect();
        Ok(ParsedGraph { graph, ids })
    } else {
        parse_edge_list(text)
    }
}

/// Unweighted shortest-path distances from `source`; `None` marks vertices in
/// other components.
pub fn bfs_distances(g: &Graph, source: usize) -> Result<Vec<Option<usize>>, GraphError> {
    g.check_vertex(source)?;
    let mut dist = vec![None; g.n()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap() + 1;
        for w in g.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(d);
                queue.push_back(w);
            }
        }
    }
    Ok(dist)
}

/// All-pairs distances by repeated BFS; `usize::MAX` for unreachable pairs.
pub fn distance_matrix(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n())
        .map(|s| {
            bfs_distances(g, s)
                .unwrap()
                .into_iter()
                .map(|d| d.unwrap_or(usize::MAX))
                .collect()
        })
        .collect()
}
