//! Dynamic programme over the block-cut tree.
//!
//! A set `S` ve-dominates a block graph iff every block contains at most one
//! vertex outside `N[S]`. Rooting the block-cut tree at vertex 0, each vertex
//! `v` gets four costs for its subtree:
//!
//! * `A`: `v ∈ S`;
//! * `B`: `v ∉ S`, dominated by a member of a child block;
//! * `C`: `v ∉ S`, not dominated from below, every child-block member dominated;
//! * `D`: `v ∉ S`, not dominated from below, some child block has an
//!   undominated member, so `v` must be dominated from its parent block.
//!
//! The same recurrence with `A` forbidden next to a chosen parent gives the
//! independent variant.

use super::SolverError;
use crate::graph::{blocks_and_cut_vertices, is_block_graph_with, Graph, GraphError};
use crate::oracles::{SolveResult, Variant};

// sums stay exact below i64 range; clamped only when stored
const INF: i64 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum State {
    A,
    B,
    C,
    D,
}

/// Costs of one child block `K` of `v`, by what happens inside `K`.
#[derive(Clone, Copy, Debug)]
struct BlockCost {
    /// `v ∈ S`.
    in_s: i64,
    /// `v ∉ S`, some member of `K` in `S`.
    hit: i64,
    /// `v ∉ S`, no member in `S`, every member dominated from below.
    clear: i64,
    /// `v ∉ S`, no member in `S`, exactly one member left undominated.
    open: i64,
}

fn clamp(x: i64) -> i64 {
    x.min(INF)
}

struct Tree {
    order: Vec<usize>,
    child_blocks: Vec<Vec<usize>>,
    members: Vec<Vec<usize>>,
}

fn root_tree(g: &Graph) -> Result<Tree, SolverError> {
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
    let mut seen = vec![false; dec.len()];
    let mut child_blocks = vec![Vec::new(); g.n()];
    let mut members = vec![Vec::new(); dec.len()];
    let mut order = vec![0usize];
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for &b in &dec.vertex_blocks[v] {
            if seen[b] {
                continue;
            }
            seen[b] = true;
            child_blocks[v].push(b);
            members[b] = dec.blocks[b].iter().copied().filter(|&w| w != v).collect();
            order.extend(&members[b]);
        }
    }
    Ok(Tree {
        order,
        child_blocks,
        members,
    })
}

struct Dp<'a> {
    tree: &'a Tree,
    independent: bool,
    val: Vec<[i64; 4]>,
    cost: Vec<BlockCost>,
}

impl Dp<'_> {
    /// Cheapest state of a member whose block already contains a chosen vertex.
    fn member_free(&self, w: usize) -> (i64, State) {
        let [a, b, c, d] = self.val[w];
        let mut best = (b, State::B);
        for cand in [(c, State::C), (d, State::D)] {
            if cand.0 < best.0 {
                best = cand;
            }
        }
        if !self.independent && a < best.0 {
            best = (a, State::A);
        }
        best
    }

    fn run(&mut self) {
        for &v in self.tree.order.iter().rev() {
            let mut a = 1i64;
            let mut sum_b = 0i64;
            let mut gap_b = INF;
            let mut sum_c = 0i64;
            let mut sum_d = 0i64;
            let mut gap_d = INF;
            for &k in &self.tree.child_blocks[v] {
                let ws = &self.tree.members[k];
                let mut in_s = 0i64;
                let mut base = 0i64;
                let mut pick = INF;
                let mut all_b = 0i64;
                let mut one_c = INF;
                for &w in ws {
                    let [wa, wb, wc, _] = self.val[w];
                    let (free, _) = self.member_free(w);
                    in_s += free;
                    // with a member of K chosen, the others are dominated
                    base += free;
                    pick = pick.min(wa - free);
                    all_b += wb;
                    one_c = one_c.min(wc - wb);
                }
                let c = BlockCost {
                    in_s: clamp(in_s),
                    hit: clamp(base + pick),
                    clear: clamp(all_b),
                    open: clamp(all_b + one_c),
                };
                self.cost[k] = c;
                a += c.in_s;
                let m3 = c.hit.min(c.clear).min(c.open);
                sum_b += m3;
                gap_b = gap_b.min(c.hit - m3);
                sum_c += c.clear;
                let m2 = c.clear.min(c.open);
                sum_d += m2;
                gap_d = gap_d.min(c.open - m2);
            }
            self.val[v] = [
                clamp(a),
                clamp(sum_b + gap_b),
                clamp(sum_c),
                clamp(sum_d + gap_d),
            ];
        }
    }

    fn reconstruct(&self) -> Vec<usize> {
        let n = self.val.len();
        let mut state = vec![State::C; n];
        let [a, b, c, _] = self.val[0];
        state[0] = if a <= b && a <= c {
            State::A
        } else if b <= c {
            State::B
        } else {
            State::C
        };
        for &v in &self.tree.order {
            let blocks = &self.tree.child_blocks[v];
            let mut choice: Vec<u8> = Vec::with_capacity(blocks.len());
            match state[v] {
                State::A => choice.resize(blocks.len(), 0),
                State::B => {
                    let (mut forced, mut gap) = (usize::MAX, INF + 1);
                    for (i, &k) in blocks.iter().enumerate() {
                        let c = &self.cost[k];
                        let m3 = c.hit.min(c.clear).min(c.open);
                        choice.push(if c.hit == m3 {
                            1
                        } else if c.clear == m3 {
                            2
                        } else {
                            3
                        });
                        if c.hit - m3 < gap {
                            gap = c.hit - m3;
                            forced = i;
                        }
                    }
                    choice[forced] = 1;
                }
                State::C => choice.resize(blocks.len(), 2),
                State::D => {
                    let (mut forced, mut gap) = (usize::MAX, INF + 1);
                    for (i, &k) in blocks.iter().enumerate() {
                        let c = &self.cost[k];
                        let m2 = c.clear.min(c.open);
                        choice.push(if c.clear == m2 { 2 } else { 3 });
                        if c.open - m2 < gap {
                            gap = c.open - m2;
                            forced = i;
                        }
                    }
                    choice[forced] = 3;
                }
            }
            for (&k, &opt) in blocks.iter().zip(&choice) {
                let ws = &self.tree.members[k];
                match opt {
                    0 => {
                        for &w in ws {
                            state[w] = self.member_free(w).1;
                        }
                    }
                    1 => {
                        let mut best = (INF + 1, 0usize);
                        for (i, &w) in ws.iter().enumerate() {
                            let (free, s) = self.member_free(w);
                            state[w] = s;
                            if self.val[w][0] - free < best.0 {
                                best = (self.val[w][0] - free, i);
                            }
                        }
                        state[ws[best.1]] = State::A;
                    }
                    2 => ws.iter().for_each(|&w| state[w] = State::B),
                    _ => {
                        let mut best = (INF + 1, 0usize);
                        for (i, &w) in ws.iter().enumerate() {
                            state[w] = State::B;
                            if self.val[w][2] - self.val[w][1] < best.0 {
                                best = (self.val[w][2] - self.val[w][1], i);
                            }
                        }
                        state[ws[best.1]] = State::C;
                    }
                }
            }
        }
        (0..n).filter(|&v| state[v] == State::A).collect()
    }
}

fn solve_dp(g: &Graph, independent: bool) -> Result<Vec<usize>, SolverError> {
    let tree = root_tree(g)?;
    let nb = tree.members.len();
    let mut dp = Dp {
        tree: &tree,
        independent,
        val: vec![[INF; 4]; g.n()],
        cost: vec![
            BlockCost {
                in_s: INF,
                hit: INF,
                clear: INF,
                open: INF
            };
            nb
        ],
    };
    dp.run();
    Ok(dp.reconstruct())
}

/// Minimum independent ve-dominating set of a connected block graph, in
/// linear time.
pub fn solve_independent(g: &Graph) -> Result<SolveResult, SolverError> {
    Ok(SolveResult::new(Variant::IndependentVe, solve_dp(g, true)?))
}

/// Minimum ve-dominating set by the same programme; an independent check on
/// the reduction for instances beyond brute-force reach.
pub fn gamma_ve_dp(g: &Graph) -> Result<SolveResult, SolverError> {
    Ok(SolveResult::new(Variant::Ve, solve_dp(g, false)?))
}
