//! The 3-dimensional matching gadget: a clique tree on `8p + 6q + 1` nodes
//! whose intersection graph is an undirected path graph on `11p + 6q`
//! vertices.
//!
//! Vertex ids are triple-major: triple `i` (0-based) owns `11i .. 11i + 11`
//! for `A_i .. K_i`, followed by `R_j, S_j, T_j, X_j, Y_j, Z_j` at
//! `11p + 6j ..` for each element index `j`.

use crate::graph::Graph;
use crate::oracles::{gamma_ve_bounded, is_ve_dominating, OracleConfig, OracleError};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("malformed instance: {0}")]
    Malformed(String),
    #[error("triple {index} has coordinate {value} outside 1..={q}")]
    OutOfRange {
        index: usize,
        value: usize,
        q: usize,
    },
    #[error("triple {0} repeats an earlier triple")]
    DuplicateTriple(usize),
    #[error("instance has no triples")]
    Empty,
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("set is not ve-dominating")]
    NotDominating,
    #[error("set has {got} vertices, expected {expected}")]
    WrongSize { got: usize, expected: usize },
    #[error("no matching can be read off the set: {0}")]
    Extraction(String),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("oracle: {0}")]
    Oracle(String),
}

impl From<OracleError> for ReductionError {
    fn from(e: OracleError) -> Self {
        ReductionError::Oracle(e.to_string())
    }
}

/// Triples `(r, s, t)` over `U = V = W = {1..q}`, 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeDmInstance {
    pub q: usize,
    pub triples: Vec<[usize; 3]>,
}

impl ThreeDmInstance {
    pub fn new(q: usize, triples: Vec<[usize; 3]>) -> Result<Self, ReductionError> {
        if q == 0 {
            return Err(ReductionError::Malformed("q must be at least 1".into()));
        }
        if triples.is_empty() {
            return Err(ReductionError::Empty);
        }
        for (index, t) in triples.iter().enumerate() {
            if let Some(&value) = t.iter().find(|&&x| x == 0 || x > q) {
                return Err(ReductionError::OutOfRange { index, value, q });
            }
            if triples[..index].contains(t) {
                return Err(ReductionError::DuplicateTriple(index));
            }
        }
        Ok(ThreeDmInstance { q, triples })
    }

    pub fn p(&self) -> usize {
        self.triples.len()
    }

    /// The cardinality the gadget's γ_ve must hit exactly on yes-instances.
    pub fn threshold(&self) -> usize {
        2 * self.p() + self.q
    }

    pub fn vertex_count(&self) -> usize {
        11 * self.p() + 6 * self.q
    }

    pub fn node_count(&self) -> usize {
        8 * self.p() + 6 * self.q + 1
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instances serialize")
    }
}

pub fn parse_3dm(json: &str) -> Result<ThreeDmInstance, ReductionError> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Raw {
        q: usize,
        triples: Vec<[usize; 3]>,
    }
    let raw: Raw =
        serde_json::from_str(json).map_err(|e| ReductionError::Malformed(e.to_string()))?;
    ThreeDmInstance::new(raw.q, raw.triples)
}

/// Per-triple letters, in id order.
pub const TRIPLE_LETTERS: [char; 11] = ['A', 'B', 'C', 'D', 'E', 'F', 'G', 'H', 'I', 'J', 'K'];
/// Per-element letters, in id order.
pub const ELEMENT_LETTERS: [char; 6] = ['R', 'S', 'T', 'X', 'Y', 'Z'];

/// The eight per-triple cliques, as letter offsets.
const TRIPLE_NODES: [&[usize]; 8] = [
    &[0, 1, 2, 3], // A B C D
    &[0, 1, 3, 5], // A B D F
    &[2, 3, 6],    // C D G
    &[0, 1, 4],    // A B E
    &[2, 6, 10],   // C G K
    &[0, 4, 7],    // A E H
    &[1, 4, 8],    // B E I
    &[1, 8, 9],    // B I J
];

/// Tree edges among the per-triple nodes (local indices) and the central
/// node (`None`).
const TRIPLE_EDGES: [(Option<usize>, usize); 8] = [
    (None, 0),
    (Some(0), 1),
    (Some(0), 2),
    (Some(2), 4),
    (Some(1), 3),
    (Some(3), 5),
    (Some(3), 6),
    (Some(6), 7),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GadgetTag {
    /// Letter `A..K` of triple `i` (0-based).
    Triple { letter: char, i: usize },
    /// Letter `R..Z` of element `j` (0-based).
    Element { letter: char, j: usize },
}

impl std::fmt::Display for GadgetTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            GadgetTag::Triple { letter, i } => write!(f, "{letter}{}", i + 1),
            GadgetTag::Element { letter, j } => write!(f, "{letter}{}", j + 1),
        }
    }
}

pub fn triple_vertex(i: usize, letter: usize) -> usize {
    11 * i + letter
}

pub fn element_vertex(inst: &ThreeDmInstance, j: usize, letter: usize) -> usize {
    11 * inst.p() + 6 * j + letter
}

pub fn tag_of(inst: &ThreeDmInstance, v: usize) -> GadgetTag {
    let base = 11 * inst.p();
    if v < base {
        GadgetTag::Triple {
            letter: TRIPLE_LETTERS[v % 11],
            i: v / 11,
        }
    } else {
        GadgetTag::Element {
            letter: ELEMENT_LETTERS[(v - base) % 6],
            j: (v - base) / 6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueTree {
    /// Number of gadget vertices.
    pub n: usize,
    pub nodes: Vec<Vec<usize>>,
    pub tree_edges: Vec<(usize, usize)>,
}

/// Node 0 is the central `{A_i, B_i, C_i}` node, then eight nodes per triple,
/// then `{R_r} ∪ {A_i}`, `{R_r, X_r}`, `{S_s} ∪ {B_i}`, `{S_s, Y_s}`,
/// `{T_t} ∪ {C_i}`, `{T_t, Z_t}` per element.
pub fn build_clique_tree(inst: &ThreeDmInstance) -> CliqueTree {
    let p = inst.p();
    let mut nodes = vec![(0..p)
        .flat_map(|i| (0..3).map(move |l| triple_vertex(i, l)))
        .collect::<Vec<_>>()];
    let mut tree_edges = Vec::with_capacity(inst.node_count() - 1);
    for i in 0..p {
        let first = nodes.len();
        for set in TRIPLE_NODES {
            nodes.push(set.iter().map(|&l| triple_vertex(i, l)).collect());
        }
        for (from, to) in TRIPLE_EDGES {
            tree_edges.push((from.map_or(0, |f| first + f), first + to));
        }
    }
    for j in 0..inst.q {
        for coord in 0..3 {
            let own = element_vertex(inst, j, coord);
            let mut hub = vec![own];
            hub.extend(
                (0..p)
                    .filter(|&i| inst.triples[i][coord] == j + 1)
                    .map(|i| triple_vertex(i, coord)),
            );
            hub.sort_unstable();
            let h = nodes.len();
            nodes.push(hub);
            let mut pendant = vec![own, element_vertex(inst, j, coord + 3)];
            pendant.sort_unstable();
            nodes.push(pendant);
            tree_edges.push((0, h));
            tree_edges.push((h, h + 1));
        }
    }
    CliqueTree {
        n: inst.vertex_count(),
        nodes,
        tree_edges,
    }
}

/// The intersection graph: `u ~ v` iff some node holds both.
pub fn graph_from_clique_tree(ct: &CliqueTree) -> Graph {
    let mut edges = Vec::new();
    for node in &ct.nodes {
        for (x, &u) in node.iter().enumerate() {
            for &v in &node[x + 1..] {
                edges.push((u.min(v), u.max(v)));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(ct.n, &edges).expect("node sets hold distinct vertices")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathReport {
    pub ok: bool,
    pub tree_ok: bool,
    /// Vertices whose nodes do not induce a path.
    pub offending: Vec<usize>,
}

/// Whether `tree_edges` is a tree and every vertex's nodes induce a path.
pub fn verify_path_property(ct: &CliqueTree) -> PathReport {
    let k = ct.nodes.len();
    let tree_ok = Graph::from_edges(k, &ct.tree_edges).is_ok_and(|t| t.is_tree());
    let mut offending = Vec::new();
    if tree_ok {
        let t = Graph::from_edges(k, &ct.tree_edges).unwrap();
        let mut holds = vec![Vec::new(); ct.n];
        for (x, node) in ct.nodes.iter().enumerate() {
            for &v in node {
                holds[v].push(x);
            }
        }
        for (v, set) in holds.iter().enumerate() {
            if !induces_path(&t, set) {
                offending.push(v);
            }
        }
    }
    PathReport {
        ok: tree_ok && offending.is_empty(),
        tree_ok,
        offending,
    }
}

fn induces_path(t: &Graph, set: &[usize]) -> bool {
    if set.is_empty() {
        return false;
    }
    let mut inside = vec![false; t.n()];
    for &x in set {
        inside[x] = true;
    }
    let mut degree_ok = true;
    let mut edges = 0;
    for &x in set {
        let d = t.neighbors(x).filter(|&y| inside[y]).count();
        degree_ok &= d <= 2;
        edges += d;
    }
    // connected with |set| - 1 edges in a tree
    let mut seen = vec![false; t.n()];
    seen[set[0]] = true;
    let mut q = VecDeque::from([set[0]]);
    let mut reached = 1;
    while let Some(x) = q.pop_front() {
        for y in t.neighbors(x) {
            if inside[y] && !seen[y] {
                seen[y] = true;
                reached += 1;
                q.push_back(y);
            }
        }
    }
    degree_ok && reached == set.len() && edges / 2 == set.len() - 1
}

/// JSON sidecar: tags by vertex id, and the clique tree.
pub fn sidecar_json(inst: &ThreeDmInstance, ct: &CliqueTree) -> String {
    #[derive(Serialize)]
    struct Sidecar<'a> {
        p: usize,
        q: usize,
        tags: Vec<String>,
        nodes: Vec<Vec<String>>,
        tree_edges: &'a [(usize, usize)],
    }
    let name = |v: usize| tag_of(inst, v).to_string();
    serde_json::to_string_pretty(&Sidecar {
        p: inst.p(),
        q: inst.q,
        tags: (0..ct.n).map(name).collect(),
        nodes: ct
            .nodes
            .iter()
            .map(|s| s.iter().map(|&v| name(v)).collect())
            .collect(),
        tree_edges: &ct.tree_edges,
    })
    .expect("sidecars serialize")
}

/// Reads a sidecar back into a clique tree. Node members are resolved by tag.
pub fn parse_sidecar(json: &str) -> Result<CliqueTree, ReductionError> {
    #[derive(Deserialize)]
    struct Sidecar {
        tags: Vec<String>,
        nodes: Vec<Vec<String>>,
        tree_edges: Vec<(usize, usize)>,
    }
    let s: Sidecar =
        serde_json::from_str(json).map_err(|e| ReductionError::Malformed(e.to_string()))?;
    let index: std::collections::HashMap<&str, usize> = s
        .tags
        .iter()
        .enumerate()
        .map(|(v, t)| (t.as_str(), v))
        .collect();
    if index.len() != s.tags.len() {
        return Err(ReductionError::Malformed("repeated tag".into()));
    }
    let nodes = s
        .nodes
        .iter()
        .map(|node| {
            node.iter()
                .map(|t| {
                    index
                        .get(t.as_str())
                        .copied()
                        .ok_or_else(|| ReductionError::Malformed(format!("unknown tag {t}")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(&(a, b)) = s.tree_edges.iter().find(|&&(a, b)| a.max(b) >= nodes.len()) {
        return Err(ReductionError::Malformed(format!(
            "tree edge ({a}, {b}) names a missing node"
        )));
    }
    Ok(CliqueTree {
        n: s.tags.len(),
        nodes,
        tree_edges: s.tree_edges,
    })
}

/// Largest instance the matching search accepts.
pub const MATCHING_CAP: usize = 24;

/// A perfect matching as 0-based triple indices, lexicographically first.
pub fn solve_3dm_bruteforce(inst: &ThreeDmInstance) -> Result<Option<Vec<usize>>, ReductionError> {
    if inst.p() > MATCHING_CAP {
        return Err(ReductionError::TooLarge(format!(
            "{} triples, cap {MATCHING_CAP}",
            inst.p()
        )));
    }
    fn go(
        inst: &ThreeDmInstance,
        start: usize,
        used: &mut [Vec<bool>; 3],
        pick: &mut Vec<usize>,
    ) -> bool {
        if pick.len() == inst.q {
            return true;
        }
        for i in start..inst.p() {
            let t = inst.triples[i];
            if (0..3).any(|c| used[c][t[c] - 1]) {
                continue;
            }
            (0..3).for_each(|c| used[c][t[c] - 1] = true);
            pick.push(i);
            if go(inst, i + 1, used, pick) {
                return true;
            }
            pick.pop();
            (0..3).for_each(|c| used[c][t[c] - 1] = false);
        }
        false
    }
    let mut used = [
        vec![false; inst.q],
        vec![false; inst.q],
        vec![false; inst.q],
    ];
    let mut pick = Vec::new();
    Ok(go(inst, 0, &mut used, &mut pick).then_some(pick))
}

fn check_matching(inst: &ThreeDmInstance, matching: &[usize]) -> Result<(), ReductionError> {
    if matching.len() != inst.q {
        return Err(ReductionError::InvalidMatching(format!(
            "{} triples, expected {}",
            matching.len(),
            inst.q
        )));
    }
    let mut used = [
        vec![false; inst.q],
        vec![false; inst.q],
        vec![false; inst.q],
    ];
    for &i in matching {
        let t = inst
            .triples
            .get(i)
            .ok_or_else(|| ReductionError::InvalidMatching(format!("no triple {i}")))?;
        for c in 0..3 {
            if std::mem::replace(&mut used[c][t[c] - 1], true) {
                return Err(ReductionError::InvalidMatching(format!(
                    "coordinate {c} of triple {i} clashes"
                )));
            }
        }
    }
    Ok(())
}

/// `{A_i, B_i, C_i}` for matched triples and `{D_i, E_i}` for the rest.
pub fn matching_to_ve_set(
    inst: &ThreeDmInstance,
    matching: &[usize],
) -> Result<Vec<usize>, ReductionError> {
    check_matching(inst, matching)?;
    let mut set = Vec::with_capacity(inst.threshold());
    for i in 0..inst.p() {
        let letters: &[usize] = if matching.contains(&i) {
            &[0, 1, 2]
        } else {
            &[3, 4]
        };
        set.extend(letters.iter().map(|&l| triple_vertex(i, l)));
    }
    set.sort_unstable();
    Ok(set)
}

/// Reads a matching off a ve-dominating set of size `2p + q`.
///
/// Element vertices are first moved onto the `A/B/C` vertex of a triple
/// containing the element; triples whose gadget then holds at least three
/// members are taken as the matching.
pub fn ve_set_to_matching(
    inst: &ThreeDmInstance,
    g: &Graph,
    set: &[usize],
) -> Result<Vec<usize>, ReductionError> {
    if set.len() != inst.threshold() {
        return Err(ReductionError::WrongSize {
            got: set.len(),
            expected: inst.threshold(),
        });
    }
    if !is_ve_dominating(g, set)? {
        return Err(ReductionError::NotDominating);
    }
    let mut count = vec![0usize; inst.p()];
    for &v in set {
        match tag_of(inst, v) {
            GadgetTag::Triple { i, .. } => count[i] += 1,
            GadgetTag::Element { letter, j } => {
                let coord = ELEMENT_LETTERS.iter().position(|&l| l == letter).unwrap() % 3;
                if let Some(i) =
                    (0..inst.p()).find(|&i| inst.triples[i][coord] == j + 1 && count[i] < 3)
                {
                    count[i] += 1;
                }
            }
        }
    }
    let matching: Vec<usize> = (0..inst.p()).filter(|&i| count[i] >= 3).collect();
    check_matching(inst, &matching)
        .map_err(|e| ReductionError::Extraction(format!("{matching:?}: {e}")))?;
    Ok(matching)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub p: usize,
    pub q: usize,
    pub nodes: usize,
    pub vertices: usize,
    pub path_property: bool,
    pub threshold: usize,
    /// `min(γ_ve, threshold + 1)`: the search stops one above the threshold.
    pub gamma_ve_capped: usize,
    pub matching: Option<Vec<usize>>,
    /// A ve-dominating set of size at most the threshold, by tag.
    pub witness: Option<Vec<String>>,
    /// Whether `γ_ve = 2p + q` exactly when a matching exists and is larger
    /// otherwise.
    pub agrees: bool,
}

/// Builds the gadget and compares the oracle value with the matching search.
pub fn crosscheck(
    inst: &ThreeDmInstance,
    cfg: &OracleConfig,
) -> Result<CrossCheck, ReductionError> {
    let ct = build_clique_tree(inst);
    let g = graph_from_clique_tree(&ct);
    let threshold = inst.threshold();
    let found = gamma_ve_bounded(&g, threshold + 1, cfg)?;
    let gamma_ve_capped = found.as_ref().map_or(threshold + 1, |r| r.cardinality);
    let matching = solve_3dm_bruteforce(inst)?;
    let agrees = match matching {
        Some(_) => gamma_ve_capped == threshold,
        None => gamma_ve_capped > threshold,
    };
    Ok(CrossCheck {
        p: inst.p(),
        q: inst.q,
        nodes: ct.nodes.len(),
        vertices: g.n(),
        path_property: verify_path_property(&ct).ok,
        threshold,
        gamma_ve_capped,
        witness: found
            .filter(|r| r.cardinality <= threshold)
            .map(|r| r.set.iter().map(|&v| tag_of(inst, v).to_string()).collect()),
        matching,
        agrees,
    })
}

/// Every instance with `p, q ≤ 2`, up to duplicates.
pub fn small_corpus() -> Vec<ThreeDmInstance> {
    let mut out = Vec::new();
    for q in 1..=2usize {
        let all: Vec<[usize; 3]> = (0..q * q * q)
            .map(|x| [x / (q * q) + 1, x / q % q + 1, x % q + 1])
            .collect();
        for (a, &t) in all.iter().enumerate() {
            out.push(ThreeDmInstance::new(q, vec![t]).unwrap());
            for &u in &all[a + 1..] {
                out.push(ThreeDmInstance::new(q, vec![t, u]).unwrap());
            }
        }
    }
    out
}

/// 2-subsets of `{A_i .. K_i}` that ve-dominate the gadget of one triple, by
/// letter.
pub fn triple_two_sets() -> Vec<[char; 2]> {
    let inst = ThreeDmInstance::new(1, vec![[1, 1, 1]]).unwrap();
    let g = graph_from_clique_tree(&build_clique_tree(&inst));
    let keep: Vec<usize> = (0..11).collect();
    let local = g.induced(&keep);
    let mut out = Vec::new();
    for (a, &la) in TRIPLE_LETTERS.iter().enumerate() {
        for (b, &lb) in TRIPLE_LETTERS.iter().enumerate().skip(a + 1) {
            if is_ve_dominating(&local, &[a, b]).unwrap() {
                out.push([la, lb]);
            }
        }
    }
    out
}
