//! Minimum ve-dominating sets of block graphs in `O(n + m)`.
//!
//! The reduction works on a labelled block graph: vertices carry `l` (forced
//! into the solution) and edges carry `m` (must be ve-dominated). Starting
//! from `l = 0`, `m = 1` everywhere, end blocks are peeled off from the
//! deepest level of the block-cut tree towards a fixed root end block `B0`,
//! and the root block is solved directly.

mod dp;

pub use dp::{gamma_ve_dp, solve_independent};

use crate::graph::{
    blocks_and_cut_vertices, is_block_graph_with, BlockDecomposition, Graph, GraphError,
};
use crate::oracles::{SolveResult, Variant};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("the root block cannot be reduced")]
    RootBlock,
    #[error("block {0} is not an end block of the current graph")]
    NotEndBlock(usize),
    #[error("block {0} was already reduced")]
    AlreadyReduced(usize),
    #[error("block {block} is at level {level}, below the current height {height}")]
    NotAtMaxLevel {
        block: usize,
        level: usize,
        height: usize,
    },
    #[error("invariant violated after reducing block {block}: {what}")]
    Invariant { block: usize, what: String },
}

/// Which rule an end block was reduced by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    #[serde(rename = "tB>=2")]
    Many,
    #[serde(rename = "tB=1-not-incident-c")]
    OneAway,
    #[serde(rename = "tB=1-incident-c")]
    OneAtCut,
    #[serde(rename = "tB=0")]
    Zero,
    #[serde(rename = "root-tB>0")]
    RootLabelled,
    #[serde(rename = "root-tB=0")]
    RootClear,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub block: usize,
    pub case: Case,
    /// Vertices whose `l` became 1.
    pub labeled: Vec<usize>,
    /// Vertices added to the output.
    pub collected: Vec<usize>,
    /// Edge ids whose `m` dropped to 0.
    pub relabeled_edges: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    /// Output set obtained by replaying the steps from the initial labelling.
    pub fn replay(&self) -> Vec<usize> {
        let mut set: Vec<usize> = self
            .steps
            .iter()
            .flat_map(|s| s.collected.iter().copied())
            .collect();
        set.sort_unstable();
        set.dedup();
        set
    }

    pub fn labeled_vertices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .steps
            .iter()
            .flat_map(|s| s.labeled.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }

    /// Replays labels and edge relabelings against `g`, checking that every
    /// collected vertex was labelled beforehand (root picks excepted) and that
    /// no labelled vertex is missing from the output.
    pub fn replay_checked(&self, g: &Graph) -> Result<Vec<usize>, String> {
        let mut l = vec![false; g.n()];
        let mut m = vec![true; g.m()];
        let mut set = Vec::new();
        for step in &self.steps {
            for &v in &step.labeled {
                if l[v] {
                    return Err(format!("vertex {v} labelled twice"));
                }
                l[v] = true;
            }
            for &e in &step.relabeled_edges {
                if !m[e] {
                    return Err(format!("edge {e} relabelled twice"));
                }
                m[e] = false;
            }
            for &v in &step.collected {
                if step.case != Case::RootLabelled && !l[v] {
                    return Err(format!("vertex {v} collected without a label"));
                }
                set.push(v);
            }
        }
        set.sort_unstable();
        if let Some(v) = (0..g.n()).find(|&v| l[v] && set.binary_search(&v).is_err()) {
            return Err(format!("labelled vertex {v} never collected"));
        }
        Ok(set)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveOptions {
    /// Re-verify the labelling invariants after every step. Quadratic; meant
    /// for tests.
    pub check_invariants: bool,
}

/// Algorithm state: the original graph plus labels, with reduced blocks and
/// deleted vertices masked out.
#[derive(Clone, Debug)]
pub struct LabeledBlockGraph {
    pub graph: Graph,
    pub l: Vec<bool>,
    /// Indexed by edge id.
    pub m: Vec<bool>,
    pub decomposition: BlockDecomposition,
    pub root_block: usize,
    pub block_levels: Vec<usize>,
    pub height: usize,
    /// Cut vertex joining each block to its parent; `None` for the root.
    parent_cut: Vec<Option<usize>>,
    parent_block: Vec<Option<usize>>,
    /// Number of `m = 1` edges per block.
    t: Vec<usize>,
    open_children: Vec<usize>,
    reduced: Vec<bool>,
    deleted: Vec<bool>,
    /// Every edge at this vertex already has `m = 0`.
    covered: Vec<bool>,
    blocks_at_level: Vec<usize>,
}

/// Sets up `l = 0`, `m = 1`, picks the smallest-id end block as `B0` and
/// computes block levels.
///
/// The level of a block is its depth in the block-cut tree rooted at `B0`.
/// On block graphs this coincides with `max{dist(u, v) : u ∈ B0, v ∈ B} − 1`.
pub fn initial_labeling(g: &Graph) -> Result<LabeledBlockGraph, SolverError> {
    if g.n() == 0 {
        return Err(SolverError::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    let dec = blocks_and_cut_vertices(g);
    if !is_block_graph_with(&dec) {
        return Err(GraphError::NotBlockGraph.into());
    }
    let nb = dec.len();
    let root_block = if nb == 1 {
        0
    } else {
        (0..nb)
            .find(|&b| dec.is_end_block(b))
            .expect("a block graph with two blocks has end blocks")
    };

    let mut level = vec![usize::MAX; nb];
    let mut parent_cut = vec![None; nb];
    let mut parent_block = vec![None; nb];
    let mut open_children = vec![0usize; nb];
    level[root_block] = 0;
    let mut queue = std::collections::VecDeque::from([root_block]);
    while let Some(b) = queue.pop_front() {
        for &v in &dec.blocks[b] {
            if !dec.is_cut[v] || parent_cut[b] == Some(v) {
                continue;
            }
            for &child in &dec.vertex_blocks[v] {
                if level[child] == usize::MAX {
                    level[child] = level[b] + 1;
                    parent_cut[child] = Some(v);
                    parent_block[child] = Some(b);
                    open_children[b] += 1;
                    queue.push_back(child);
                }
            }
        }
    }
    let height = level.iter().copied().max().unwrap_or(0);
    let mut blocks_at_level = vec![0usize; height + 1];
    for &lv in &level {
        blocks_at_level[lv] += 1;
    }
    Ok(LabeledBlockGraph {
        graph: g.clone(),
        l: vec![false; g.n()],
        m: vec![true; g.m()],
        t: dec.block_edges.iter().map(Vec::len).collect(),
        decomposition: dec,
        root_block,
        block_levels: level,
        height,
        parent_cut,
        parent_block,
        open_children,
        reduced: vec![false; nb],
        deleted: vec![false; g.n()],
        covered: vec![false; g.n()],
        blocks_at_level,
    })
}

impl LabeledBlockGraph {
    /// Current count of `m = 1` edges in `block`.
    pub fn t(&self, block: usize) -> usize {
        self.t[block]
    }

    pub fn is_reduced(&self, block: usize) -> bool {
        self.reduced[block]
    }

    pub fn is_deleted(&self, v: usize) -> bool {
        self.deleted[v]
    }

    /// Height of the remaining graph.
    pub fn current_height(&self) -> usize {
        (0..=self.height)
            .rev()
            .find(|&lv| self.blocks_at_level[lv] > 0)
            .unwrap_or(0)
    }

    /// The cut vertex `c` of a non-root block.
    pub fn cut_vertex(&self, block: usize) -> Option<usize> {
        self.parent_cut[block]
    }

    /// `F(c)` for the cut vertex of `block`: the cut vertex in `N[c]` nearest
    /// to `B0`. That is the parent cut vertex of the block above `c`, or `c`
    /// itself when that block is `B0`. No other cut vertex in `N[c]` is as
    /// close, so the choice is unique.
    pub fn nearest_cut(&self, block: usize) -> Option<usize> {
        let c = self.parent_cut[block]?;
        let above = self.parent_block[block]?;
        Some(self.parent_cut[above].unwrap_or(c))
    }

    /// For a block with `t = 1`: whether its live edge touches the cut vertex.
    fn live_edge_at_cut(&self, block: usize) -> bool {
        let c = self.parent_cut[block];
        self.decomposition.block_edges[block]
            .iter()
            .find(|&&e| self.m[e])
            .is_some_and(|&e| {
                let (u, v) = self.graph.edge(e);
                Some(u) == c || Some(v) == c
            })
    }

    /// Labels `x` and zeroes every edge with an endpoint in `N[x]`.
    fn label(&mut self, x: usize, relabeled: &mut Vec<usize>) {
        debug_assert!(!self.l[x]);
        self.l[x] = true;
        let g = &self.graph;
        for y in std::iter::once(x).chain(g.neighbors(x)) {
            if self.deleted[y] || self.covered[y] {
                continue;
            }
            self.covered[y] = true;
            for &(z, e) in g.incident(y) {
                if !self.deleted[z] && self.m[e] {
                    self.m[e] = false;
                    self.t[self.decomposition.edge_block[e]] -= 1;
                    relabeled.push(e);
                }
            }
        }
    }

    fn delete_p(&mut self, block: usize, c: usize) {
        for &v in &self.decomposition.blocks[block] {
            if v != c {
                self.deleted[v] = true;
            }
        }
        self.reduced[block] = true;
        self.blocks_at_level[self.block_levels[block]] -= 1;
        if let Some(p) = self.parent_block[block] {
            self.open_children[p] -= 1;
        }
    }

    fn check_invariants(&self, block: usize) -> Result<(), SolverError> {
        let fail = |what: String| Err(SolverError::Invariant { block, what });
        let g = &self.graph;
        let dec = &self.decomposition;
        for b in (0..dec.len()).filter(|&b| !self.reduced[b]) {
            let live: Vec<usize> = dec.block_edges[b]
                .iter()
                .copied()
                .filter(|&e| self.m[e])
                .collect();
            if live.len() != self.t[b] {
                return fail(format!(
                    "block {b}: t = {} but {} live edges",
                    self.t[b],
                    live.len()
                ));
            }
            let mut ends: Vec<usize> = live
                .iter()
                .flat_map(|&e| [g.edge(e).0, g.edge(e).1])
                .collect();
            ends.sort_unstable();
            ends.dedup();
            for (i, &u) in ends.iter().enumerate() {
                for &v in &ends[i + 1..] {
                    if !self.m[g.edge_id(u, v).unwrap()] {
                        return fail(format!("block {b}: label-1 edges do not form a clique"));
                    }
                }
            }
        }
        for v in (0..g.n()).filter(|&v| self.l[v] && !self.deleted[v]) {
            for x in std::iter::once(v)
                .chain(g.neighbors(v))
                .filter(|&x| !self.deleted[x])
            {
                if g.incident(x)
                    .iter()
                    .any(|&(z, e)| !self.deleted[z] && self.m[e])
                {
                    return fail(format!("labelled vertex {v} leaves a label-1 edge at {x}"));
                }
            }
        }
        Ok(())
    }
}

/// Reduces one end block at the current maximum level, appending the step to
/// `trace`.
pub fn reduce_end_block(
    state: &mut LabeledBlockGraph,
    block: usize,
    trace: &mut ReductionTrace,
) -> Result<(), SolverError> {
    if block >= state.decomposition.len() {
        return Err(SolverError::NotEndBlock(block));
    }
    if block == state.root_block {
        return Err(SolverError::RootBlock);
    }
    if state.reduced[block] {
        return Err(SolverError::AlreadyReduced(block));
    }
    if state.open_children[block] > 0 {
        return Err(SolverError::NotEndBlock(block));
    }
    let height = state.current_height();
    if state.block_levels[block] != height {
        return Err(SolverError::NotAtMaxLevel {
            block,
            level: state.block_levels[block],
            height,
        });
    }
    let c = state.parent_cut[block].expect("non-root block has a cut vertex");
    let mut relabeled = Vec::new();
    let mut labeled = Vec::new();
    let mut collected = Vec::new();
    let tb = state.t[block];
    let case = match tb {
        0 => {
            collected.extend(
                state.decomposition.blocks[block]
                    .iter()
                    .copied()
                    .filter(|&x| x != c && state.l[x]),
            );
            state.delete_p(block, c);
            Case::Zero
        }
        1 => {
            let e = state.decomposition.block_edges[block]
                .iter()
                .copied()
                .find(|&e| state.m[e])
                .expect("t = 1 means one live edge");
            let (u, v) = state.graph.edge(e);
            let (case, x) = if u != c && v != c {
                (Case::OneAway, c)
            } else {
                (Case::OneAtCut, state.nearest_cut(block).unwrap())
            };
            state.delete_p(block, c);
            state.label(x, &mut relabeled);
            labeled.push(x);
            case
        }
        _ => {
            state.delete_p(block, c);
            state.label(c, &mut relabeled);
            labeled.push(c);
            Case::Many
        }
    };
    trace.steps.push(TraceStep {
        block,
        case,
        labeled,
        collected,
        relabeled_edges: relabeled,
    });
    Ok(())
}

/// Solves the single remaining block: one vertex if any edge still needs
/// domination, otherwise exactly the labelled vertices.
pub fn solve_root(state: &LabeledBlockGraph) -> (Case, Vec<usize>) {
    let b = state.root_block;
    let dec = &state.decomposition;
    if state.t[b] > 0 {
        let pick = dec.block_edges[b]
            .iter()
            .filter(|&&e| state.m[e])
            .map(|&e| state.graph.edge(e).0)
            .min()
            .unwrap();
        (Case::RootLabelled, vec![pick])
    } else {
        let set = dec.blocks[b]
            .iter()
            .copied()
            .filter(|&v| state.l[v])
            .collect();
        (Case::RootClear, set)
    }
}

pub fn solve(g: &Graph) -> Result<(SolveResult, ReductionTrace), SolverError> {
    solve_with(g, &SolveOptions::default())
}

/// Runs the whole reduction. Within a level, blocks with `t ≥ 2` go first,
/// then `t = 1` with the live edge away from the cut vertex, then `t = 1`
/// with the live edge at the cut vertex, then `t = 0`, each group in block-id
/// order. Labels are read at the moment a block is reduced.
///
/// Reducing an at-cut block before an away-from-cut block of the same level
/// can lose optimality: labelling `c` for the latter may already cover the
/// former's edge, while `F(c)` need not.
pub fn solve_with(
    g: &Graph,
    opts: &SolveOptions,
) -> Result<(SolveResult, ReductionTrace), SolverError> {
    let mut state = initial_labeling(g)?;
    let mut trace = ReductionTrace::default();
    let mut by_level: Vec<Vec<usize>> = vec![Vec::new(); state.height + 1];
    for (b, &lv) in state.block_levels.iter().enumerate() {
        by_level[lv].push(b);
    }
    for lv in (1..=state.height).rev() {
        let blocks = std::mem::take(&mut by_level[lv]);
        for pass in 0..4 {
            for &b in &blocks {
                if state.reduced[b] {
                    continue;
                }
                let due = match pass {
                    0 => state.t[b] >= 2,
                    1 => state.t[b] == 1 && !state.live_edge_at_cut(b),
                    2 => state.t[b] == 1,
                    _ => true,
                };
                if due {
                    reduce_end_block(&mut state, b, &mut trace)?;
                    if opts.check_invariants {
                        state.check_invariants(b)?;
                    }
                }
            }
        }
    }
    let (case, set) = solve_root(&state);
    trace.steps.push(TraceStep {
        block: state.root_block,
        case,
        labeled: Vec::new(),
        collected: set,
        relabeled_edges: Vec::new(),
    });
    let result = SolveResult::new(Variant::Ve, trace.replay());
    Ok((result, trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowtie() -> Graph {
        Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    fn checked() -> SolveOptions {
        SolveOptions {
            check_invariants: true,
        }
    }

    #[test]
    fn initial_labeling_examples() {
        let k3 = initial_labeling(&Graph::complete(3)).unwrap();
        assert_eq!(k3.height, 0);
        assert!(k3.m.iter().all(|&x| x));
        let p5 = initial_labeling(&Graph::path(5)).unwrap();
        assert_eq!(p5.decomposition.len(), 4);
        assert!(p5.decomposition.is_end_block(p5.root_block));
        assert_eq!(p5.height, 3);
        let mut levels = p5.block_levels.clone();
        levels.sort_unstable();
        assert_eq!(levels, vec![0, 1, 2, 3]);
        let bt = initial_labeling(&bowtie()).unwrap();
        assert_eq!(bt.height, 1);
    }

    #[test]
    fn levels_match_block_distance() {
        // max vertex distance between the blocks, minus one
        let g = Graph::from_edges(
            8,
            &[
                (0, 1),
                (1, 2),
                (1, 3),
                (2, 3),
                (3, 4),
                (4, 5),
                (4, 6),
                (5, 6),
                (6, 7),
            ],
        )
        .unwrap();
        let s = initial_labeling(&g).unwrap();
        let d = crate::graph::distance_matrix(&g);
        let b0 = &s.decomposition.blocks[s.root_block];
        for (b, verts) in s.decomposition.blocks.iter().enumerate() {
            let far = b0
                .iter()
                .flat_map(|&u| verts.iter().map(move |&v| (u, v)))
                .map(|(u, v)| d[u][v])
                .max()
                .unwrap();
            assert_eq!(s.block_levels[b], far - 1);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(
            initial_labeling(&Graph::cycle(4)).unwrap_err(),
            SolverError::Graph(GraphError::NotBlockGraph)
        );
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            initial_labeling(&two).unwrap_err(),
            SolverError::Graph(GraphError::Disconnected)
        );
    }

    #[test]
    fn case_a_labels_cut_vertex() {
        // triangles at both ends of an edge; one of them is the root
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)])
            .unwrap();
        let mut s = initial_labeling(&g).unwrap();
        let tri = (0..s.decomposition.len())
            .find(|&b| s.decomposition.blocks[b].len() == 3 && b != s.root_block)
            .unwrap();
        let c = s.cut_vertex(tri).unwrap();
        let mut trace = ReductionTrace::default();
        reduce_end_block(&mut s, tri, &mut trace).unwrap();
        assert_eq!(trace.steps[0].case, Case::Many);
        assert_eq!(trace.steps[0].labeled, vec![c]);
        assert!(s.l[c]);
    }

    #[test]
    fn case_c_labels_nearest_cut() {
        let g = Graph::path(5);
        let mut s = initial_labeling(&g).unwrap();
        let deepest = (0..4).find(|&b| s.block_levels[b] == 3).unwrap();
        let c = s.cut_vertex(deepest).unwrap();
        let f = s.nearest_cut(deepest).unwrap();
        assert_ne!(c, f);
        assert!(g.has_edge(c, f));
        let mut trace = ReductionTrace::default();
        reduce_end_block(&mut s, deepest, &mut trace).unwrap();
        assert_eq!(trace.steps[0].case, Case::OneAtCut);
        assert_eq!(trace.steps[0].labeled, vec![f]);
    }

    #[test]
    fn case_d_collects_labelled_vertex() {
        let g = Graph::path(5);
        let mut s = initial_labeling(&g).unwrap();
        let mut trace = ReductionTrace::default();
        let mut order: Vec<usize> = (0..4).filter(|&b| b != s.root_block).collect();
        order.sort_by_key(|&b| std::cmp::Reverse(s.block_levels[b]));
        for b in order {
            reduce_end_block(&mut s, b, &mut trace).unwrap();
        }
        assert!(trace
            .steps
            .iter()
            .any(|st| st.case == Case::Zero && st.collected.len() == 1));
    }

    #[test]
    fn reduce_rejects_wrong_blocks() {
        let mut s = initial_labeling(&Graph::path(5)).unwrap();
        let mut trace = ReductionTrace::default();
        let root = s.root_block;
        assert_eq!(
            reduce_end_block(&mut s, root, &mut trace),
            Err(SolverError::RootBlock)
        );
        let mid = (0..4).find(|&b| s.block_levels[b] == 1).unwrap();
        assert!(reduce_end_block(&mut s, mid, &mut trace).is_err());
        assert!(trace.steps.is_empty());
    }

    #[test]
    fn root_examples() {
        let s = initial_labeling(&Graph::complete(4)).unwrap();
        assert_eq!(solve_root(&s).1.len(), 1);
        let mut s = initial_labeling(&Graph::complete(3)).unwrap();
        s.l[0] = true;
        s.l[2] = true;
        s.m.iter_mut().for_each(|x| *x = false);
        s.t[0] = 0;
        assert_eq!(solve_root(&s), (Case::RootClear, vec![0, 2]));
        let mut s = initial_labeling(&Graph::path(2)).unwrap();
        s.m[0] = false;
        s.t[0] = 0;
        assert!(solve_root(&s).1.is_empty());
    }

    #[test]
    fn solve_examples() {
        for n in 2..7 {
            assert_eq!(
                solve_with(&Graph::complete(n), &checked())
                    .unwrap()
                    .0
                    .cardinality,
                1
            );
        }
        assert_eq!(
            solve_with(&Graph::path(7), &checked())
                .unwrap()
                .0
                .cardinality,
            2
        );
        let (r, _) = solve_with(&bowtie(), &checked()).unwrap();
        assert_eq!(r.set, vec![2]);
        assert_eq!(solve(&Graph::empty(1)).unwrap().0.cardinality, 0);
    }

    #[test]
    fn trace_replays_and_blocks_reduce_once() {
        let g = Graph::from_edges(
            9,
            &[
                (0, 1),
                (1, 2),
                (1, 3),
                (2, 3),
                (3, 4),
                (4, 5),
                (4, 6),
                (5, 6),
                (6, 7),
                (7, 8),
            ],
        )
        .unwrap();
        let (r, trace) = solve_with(&g, &checked()).unwrap();
        assert_eq!(trace.replay_checked(&g).unwrap(), r.set);
        let mut blocks: Vec<usize> = trace.steps.iter().map(|s| s.block).collect();
        let len = blocks.len();
        blocks.sort_unstable();
        blocks.dedup();
        assert_eq!(blocks.len(), len);
        let json = serde_json::to_string(&trace).unwrap();
        assert!(json.contains("\"tB"));
    }
}
