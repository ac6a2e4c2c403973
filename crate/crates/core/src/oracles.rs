//! Definition-level predicates and exhaustive minimum-set searches.
//!
//! These are the ground truth for every fast algorithm in the crate. The
//! searches run over vertex subsets in ascending cardinality and, within a
//! cardinality, in lexicographic order of the sorted vertex list, so the first
//! hit is the lexicographically smallest minimum witness.

use crate::graph::{Graph, GraphError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Bitmask searches index vertices by bit position.
pub const MAX_MASK_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {n} vertices, above the brute-force cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("vertex {0} is not in the graph")]
    NoSuchVertex(usize),
    #[error("label vector has length {got}, expected {expected}")]
    LabelLength { got: usize, expected: usize },
    #[error("some target is farther than 3 from every allowed vertex")]
    Infeasible,
}

impl From<GraphError> for OracleError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::NoSuchVertex(v) => OracleError::NoSuchVertex(v),
            other => panic!("unexpected graph error in oracle: {other}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest instance the exhaustive searches accept. For the weighted
    /// search this bounds the number of allowed (non-forbidden) vertices.
    pub max_vertices: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_vertices: 20 }
    }
}

impl OracleConfig {
    pub fn with_cap(max_vertices: usize) -> Self {
        OracleConfig { max_vertices }
    }

    fn check(&self, n: usize) -> Result<(), OracleError> {
        let cap = self.max_vertices.min(MAX_MASK_VERTICES);
        if n > cap {
            Err(OracleError::CapExceeded { n, cap })
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Ve,
    IndependentVe,
    OptionalVe,
    WeightedDistance3,
}

/// A solution set together with the variant whose predicate it satisfies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub variant: Variant,
    /// Objective value: cardinality, or total weight for the weighted variant.
    pub objective: u64,
    pub cardinality: usize,
    /// Sorted vertex ids.
    pub set: Vec<usize>,
}

impl SolveResult {
    pub fn new(variant: Variant, mut set: Vec<usize>) -> Self {
        set.sort_unstable();
        set.dedup();
        SolveResult {
            variant,
            objective: set.len() as u64,
            cardinality: set.len(),
            set,
        }
    }
}

/// Edges with at least one endpoint in `N[u]`, as sorted edge ids.
pub fn ve_dominated_edges(g: &Graph, u: usize) -> Result<Vec<usize>, OracleError> {
    g.check_vertex(u)?;
    let mut out: Vec<usize> = std::iter::once(u)
        .chain(g.neighbors(u))
        .flat_map(|x| g.incident(x).iter().map(|&(_, e)| e))
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Vertices in `N[S]`.
pub fn dominated_vertices(g: &Graph, set: &[usize]) -> Result<Vec<bool>, OracleError> {
    let mut dom = vec![false; g.n()];
    for &s in set {
        g.check_vertex(s)?;
        dom[s] = true;
        for w in g.neighbors(s) {
            dom[w] = true;
        }
    }
    Ok(dom)
}

/// True iff every edge has an endpoint in `N[S]`, which is the same as `S`
/// ve-dominating every edge.
pub fn is_ve_dominating(g: &Graph, set: &[usize]) -> Result<bool, OracleError> {
    let dom = dominated_vertices(g, set)?;
    Ok(g.edges().iter().all(|&(u, v)| dom[u] || dom[v]))
}

pub fn is_independent_ve_dominating(g: &Graph, set: &[usize]) -> Result<bool, OracleError> {
    Ok(is_ve_dominating(g, set)? && g.is_independent(set))
}

/// Adjacency bitmasks for the exhaustive searches.
pub(crate) struct BitGraph {
    pub n: usize,
    pub adj: Vec<u64>,
    pub closed: Vec<u64>,
    pub full: u64,
}

impl BitGraph {
    pub fn new(g: &Graph) -> Self {
        assert!(g.n() <= MAX_MASK_VERTICES);
        let n = g.n();
        let mut adj = vec![0u64; n];
        for &(u, v) in g.edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        let closed = (0..n).map(|v| adj[v] | (1 << v)).collect();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        BitGraph {
            n,
            adj,
            closed,
            full,
        }
    }

    /// Every edge has a dominated endpoint, i.e. the undominated vertices are
    /// pairwise nonadjacent.
    #[inline]
    pub fn undominated_independent(&self, dom: u64) -> bool {
        let und = self.full & !dom;
        let mut rest = und;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.adj[v] & und != 0 {
                return false;
            }
        }
        true
    }
}

pub(crate) fn mask_to_vec(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

/// Walks all `k`-subsets of `candidates` in lexicographic order. `reach[v]` is
/// OR-ed into the running union; `visit` sees (chosen, union) and returns
/// `true` to stop. With `independent`, subsets containing an edge are skipped.
pub(crate) struct SubsetSearch<'a> {
    pub candidates: &'a [usize],
    pub reach: &'a [u64],
    pub adj: &'a [u64],
    pub independent: bool,
}

impl SubsetSearch<'_> {
    pub fn run<F: FnMut(u64, u64) -> bool>(
        &self,
        k: usize,
        base: u64,
        base_reach: u64,
        visit: &mut F,
    ) -> bool {
        if k > self.candidates.len() {
            return false;
        }
        self.rec(0, k, base, base_reach, visit)
    }

    fn rec<F: FnMut(u64, u64) -> bool>(
        &self,
        start: usize,
        left: usize,
        chosen: u64,
        union: u64,
        visit: &mut F,
    ) -> bool {
        if left == 0 {
            return visit(chosen, union);
        }
        for idx in start..=self.candidates.len() - left {
            let v = self.candidates[idx];
            if self.independent && self.adj[v] & chosen != 0 {
                continue;
            }
            if self.rec(
                idx + 1,
                left - 1,
                chosen | (1 << v),
                union | self.reach[v],
                visit,
            ) {
                return true;
            }
        }
        false
    }
}

fn first_ve_set(bg: &BitGraph, k: usize, independent: bool) -> Option<u64> {
    let candidates: Vec<usize> = (0..bg.n).collect();
    let search = SubsetSearch {
        candidates: &candidates,
        reach: &bg.closed,
        adj: &bg.adj,
        independent,
    };
    let mut found = None;
    search.run(k, 0, 0, &mut |chosen, dom| {
        if bg.undominated_independent(dom) {
            found = Some(chosen);
            true
        } else {
            false
        }
    });
    found
}

/// Lexicographically smallest ve-dominating set of exactly `k` vertices, if
/// one exists.
pub fn first_ve_set_of_size(
    g: &Graph,
    k: usize,
    independent: bool,
    cfg: &OracleConfig,
) -> Result<Option<Vec<usize>>, OracleError> {
    cfg.check(g.n())?;
    let bg = BitGraph::new(g);
    Ok(first_ve_set(&bg, k, independent).map(mask_to_vec))
}

/// Ascending search bounded above by `max_k`; `None` means every
/// ve-dominating set has more than `max_k` vertices.
pub fn gamma_ve_bounded(
    g: &Graph,
    max_k: usize,
    cfg: &OracleConfig,
) -> Result<Option<SolveResult>, OracleError> {
    cfg.check(g.n())?;
    let bg = BitGraph::new(g);
    for k in 0..=max_k.min(g.n()) {
        if let Some(mask) = first_ve_set(&bg, k, false) {
            return Ok(Some(SolveResult::new(Variant::Ve, mask_to_vec(mask))));
        }
    }
    Ok(None)
}

/// Minimum ve-dominating set by exhaustive search.
pub fn gamma_ve_bruteforce(g: &Graph, cfg: &OracleConfig) -> Result<SolveResult, OracleError> {
    Ok(gamma_ve_bounded(g, g.n(), cfg)?.expect("the full vertex set is ve-dominating"))
}

/// Minimum independent ve-dominating set by exhaustive search.
pub fn i_ve_bruteforce(g: &Graph, cfg: &OracleConfig) -> Result<SolveResult, OracleError> {
    cfg.check(g.n())?;
    let bg = BitGraph::new(g);
    for k in 0..=g.n() {
        if let Some(mask) = first_ve_set(&bg, k, true) {
            return Ok(SolveResult::new(Variant::IndependentVe, mask_to_vec(mask)));
        }
    }
    unreachable!("a maximal independent set dominates every vertex")
}

/// Every minimum independent ve-dominating set, in lexicographic order.
pub fn all_minimum_independent_ve_sets(
    g: &Graph,
    cfg: &OracleConfig,
) -> Result<Vec<Vec<usize>>, OracleError> {
    let k = i_ve_bruteforce(g, cfg)?.cardinality;
    let bg = BitGraph::new(g);
    let candidates: Vec<usize> = (0..bg.n).collect();
    let search = SubsetSearch {
        candidates: &candidates,
        reach: &bg.closed,
        adj: &bg.adj,
        independent: true,
    };
    let mut all = Vec::new();
    search.run(k, 0, 0, &mut |chosen, dom| {
        if bg.undominated_independent(dom) {
            all.push(mask_to_vec(chosen));
        }
        false
    });
    Ok(all)
}

/// Minimum optional ve-dominating set: contains every vertex with `l = 1` and
/// ve-dominates every edge with `m = 1`. `m` is indexed by edge id.
pub fn gamma_opve_bruteforce(
    g: &Graph,
    l: &[bool],
    m: &[bool],
    cfg: &OracleConfig,
) -> Result<SolveResult, OracleError> {
    if l.len() != g.n() {
        return Err(OracleError::LabelLength {
            got: l.len(),
            expected: g.n(),
        });
    }
    if m.len() != g.m() {
        return Err(OracleError::LabelLength {
            got: m.len(),
            expected: g.m(),
        });
    }
    cfg.check(g.n())?;
    let bg = BitGraph::new(g);
    let forced: u64 = (0..g.n())
        .filter(|&v| l[v])
        .fold(0, |acc, v| acc | (1 << v));
    let forced_dom = mask_to_vec(forced)
        .iter()
        .fold(0u64, |acc, &v| acc | bg.closed[v]);
    let required: Vec<u64> = g
        .edges()
        .iter()
        .zip(m)
        .filter(|(_, &req)| req)
        .map(|(&(u, v), _)| (1u64 << u) | (1u64 << v))
        .collect();
    let candidates: Vec<usize> = (0..g.n()).filter(|&v| !l[v]).collect();
    let search = SubsetSearch {
        candidates: &candidates,
        reach: &bg.closed,
        adj: &bg.adj,
        independent: false,
    };
    for k in 0..=candidates.len() {
        // first hit in extra-vertex order need not be the smallest full set,
        // so collect all hits at this size
        let mut best: Option<Vec<usize>> = None;
        search.run(k, forced, forced_dom, &mut |chosen, dom| {
            if required.iter().all(|&e| e & dom != 0) {
                let set = mask_to_vec(chosen);
                if best.as_ref().is_none_or(|b| set < *b) {
                    best = Some(set);
                }
            }
            false
        });
        if let Some(set) = best {
            return Ok(SolveResult::new(Variant::OptionalVe, set));
        }
    }
    unreachable!("all vertices dominate every edge")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Weight {
    Finite(u64),
    /// Never selectable; stands for an infinite weight.
    Forbidden,
}

#[derive(Clone, Debug)]
pub struct WeightedInstance {
    pub graph: Graph,
    pub weight: Vec<Weight>,
}

impl WeightedInstance {
    pub fn unit(graph: Graph) -> Self {
        let weight = vec![Weight::Finite(1); graph.n()];
        WeightedInstance { graph, weight }
    }
}

/// Bitmask of the radius-`r` ball around every vertex.
pub(crate) fn ball_masks(g: &Graph, radius: usize) -> Vec<u64> {
    (0..g.n())
        .map(|s| {
            crate::graph::bfs_distances(g, s)
                .unwrap()
                .iter()
                .enumerate()
                .filter(|(_, d)| d.is_some_and(|d| d <= radius))
                .fold(0u64, |acc, (v, _)| acc | (1 << v))
        })
        .collect()
}

/// Minimum-weight set of allowed vertices such that every target lies within
/// distance 3 of the set. Ties are broken by cardinality, then
/// lexicographically.
pub fn weighted_d3dom_bruteforce(
    w: &WeightedInstance,
    targets: &[usize],
    cfg: &OracleConfig,
) -> Result<SolveResult, OracleError> {
    let g = &w.graph;
    if w.weight.len() != g.n() {
        return Err(OracleError::LabelLength {
            got: w.weight.len(),
            expected: g.n(),
        });
    }
    let target_mask = targets.iter().try_fold(0u64, |acc, &t| {
        g.check_vertex(t)
            .map(|_| acc | (1 << t))
            .map_err(OracleError::from)
    })?;
    let candidates: Vec<usize> = (0..g.n())
        .filter(|&v| w.weight[v] != Weight::Forbidden)
        .collect();
    cfg.check(candidates.len())?;
    if g.n() > MAX_MASK_VERTICES {
        return Err(OracleError::CapExceeded {
            n: g.n(),
            cap: MAX_MASK_VERTICES,
        });
    }
    let result = |set: Vec<usize>| {
        let objective = set
            .iter()
            .map(|&v| match w.weight[v] {
                Weight::Finite(x) => x,
                Weight::Forbidden => unreachable!(),
            })
            .sum();
        let mut r = SolveResult::new(Variant::WeightedDistance3, set);
        r.objective = objective;
        r
    };
    if target_mask == 0 {
        return Ok(result(Vec::new()));
    }
    let balls = ball_masks(g, 3);
    let reachable = candidates.iter().fold(0u64, |acc, &v| acc | balls[v]);
    if reachable & target_mask != target_mask {
        return Err(OracleError::Infeasible);
    }
    let adj = vec![0u64; g.n()];
    let search = SubsetSearch {
        candidates: &candidates,
        reach: &balls,
        adj: &adj,
        independent: false,
    };
    let unit = candidates.iter().all(|&v| w.weight[v] == Weight::Finite(1));
    if unit {
        for k in 1..=candidates.len() {
            let mut found = None;
            search.run(k, 0, 0, &mut |chosen, covered| {
                if covered & target_mask == target_mask {
                    found = Some(chosen);
                    true
                } else {
                    false
                }
            });
            if let Some(mask) = found {
                return Ok(result(mask_to_vec(mask)));
            }
        }
        unreachable!("feasibility was checked");
    }
    let mut best: Option<(u64, usize, Vec<usize>)> = None;
    for k in 1..=candidates.len() {
        search.run(k, 0, 0, &mut |chosen, covered| {
            if covered & target_mask == target_mask {
                let set = mask_to_vec(chosen);
                let weight: u64 = set
                    .iter()
                    .map(|&v| match w.weight[v] {
                        Weight::Finite(x) => x,
                        Weight::Forbidden => unreachable!(),
                    })
                    .sum();
                let key = (weight, set.len(), set);
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
            false
        });
    }
    Ok(result(best.expect("feasibility was checked").2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    #[test]
    fn dominated_edges_examples() {
        let star = Graph::star(3);
        assert_eq!(ve_dominated_edges(&star, 0).unwrap().len(), 3);
        let p5 = Graph::path(5);
        assert_eq!(ve_dominated_edges(&p5, 2).unwrap(), vec![0, 1, 2, 3]);
        let e = ve_dominated_edges(&p5, 0).unwrap();
        let pairs: Vec<_> = e.iter().map(|&id| p5.edge(id)).collect();
        assert_eq!(pairs, vec![(0, 1), (1, 2)]);
        assert_eq!(
            ve_dominated_edges(&p5, 9),
            Err(OracleError::NoSuchVertex(9))
        );
    }

    #[test]
    fn predicate_examples() {
        let g = Graph::complete(5);
        assert!(is_ve_dominating(&g, &[0, 1, 2, 3, 4]).unwrap());
        assert!(is_ve_dominating(&Graph::path(5), &[2]).unwrap());
        assert!(!is_ve_dominating(&Graph::path(7), &[3]).unwrap());
        assert!(is_ve_dominating(&Graph::path(3), &[7]).is_err());
    }

    #[test]
    fn gamma_examples() {
        for n in 2..8 {
            assert_eq!(
                gamma_ve_bruteforce(&Graph::complete(n), &cfg())
                    .unwrap()
                    .cardinality,
                1
            );
        }
        let p7 = gamma_ve_bruteforce(&Graph::path(7), &cfg()).unwrap();
        assert_eq!(p7.cardinality, 2);
        assert_eq!(p7.set, vec![0, 4]);
        let empty = gamma_ve_bruteforce(&Graph::empty(4), &cfg()).unwrap();
        assert_eq!((empty.cardinality, empty.set.len()), (0, 0));
    }

    #[test]
    fn independent_examples() {
        let s = i_ve_bruteforce(&Graph::star(3), &cfg()).unwrap();
        assert_eq!(s.set, vec![0]);
        let p7 = i_ve_bruteforce(&Graph::path(7), &cfg()).unwrap();
        assert_eq!(p7.cardinality, 2);
        assert!(!Graph::path(7).has_edge(p7.set[0], p7.set[1]));
    }

    #[test]
    fn optional_examples() {
        let g = Graph::path(6);
        let l = vec![false; 6];
        let gamma = gamma_ve_bruteforce(&g, &cfg()).unwrap();
        let opt = gamma_opve_bruteforce(&g, &l, &[true; 5], &cfg()).unwrap();
        assert_eq!(opt.cardinality, gamma.cardinality);
        assert_eq!(opt.set, gamma.set);

        let mut l = vec![false; 6];
        l[1] = true;
        l[4] = true;
        let forced = gamma_opve_bruteforce(&g, &l, &[false; 5], &cfg()).unwrap();
        assert_eq!(forced.set, vec![1, 4]);

        let none = gamma_opve_bruteforce(&g, &[false; 6], &[false; 5], &cfg()).unwrap();
        assert!(none.set.is_empty());
        assert!(gamma_opve_bruteforce(&g, &[false], &[], &cfg()).is_err());
    }

    #[test]
    fn weighted_examples() {
        let p4 = WeightedInstance::unit(Graph::path(4));
        let all: Vec<usize> = (0..4).collect();
        let r = weighted_d3dom_bruteforce(&p4, &all, &cfg()).unwrap();
        assert_eq!(r.objective, 1);
        assert_eq!(r.set, vec![0]);
        assert_eq!(
            weighted_d3dom_bruteforce(&p4, &[], &cfg())
                .unwrap()
                .objective,
            0
        );
        let p9 = WeightedInstance::unit(Graph::path(9));
        let all: Vec<usize> = (0..9).collect();
        assert_eq!(
            weighted_d3dom_bruteforce(&p9, &all, &cfg())
                .unwrap()
                .objective,
            2
        );
    }

    #[test]
    fn weighted_respects_forbidden_and_weights() {
        let mut w = WeightedInstance::unit(Graph::path(9));
        for v in 0..9 {
            if v != 0 {
                w.weight[v] = Weight::Forbidden;
            }
        }
        assert_eq!(
            weighted_d3dom_bruteforce(&w, &[8], &cfg()),
            Err(OracleError::Infeasible)
        );
        let mut w = WeightedInstance::unit(Graph::path(5));
        w.weight[2] = Weight::Finite(5);
        let r = weighted_d3dom_bruteforce(&w, &[0, 1, 2, 3, 4], &cfg()).unwrap();
        // vertex 1 reaches 0..=4 with weight 1
        assert_eq!((r.objective, r.set.clone()), (1, vec![1]));
        w.weight[1] = Weight::Finite(9);
        w.weight[3] = Weight::Finite(9);
        let r = weighted_d3dom_bruteforce(&w, &[0, 1, 2, 3, 4], &cfg()).unwrap();
        assert_eq!((r.objective, r.set), (2, vec![0, 4]));
    }

    #[test]
    fn cap_is_enforced() {
        let g = Graph::path(21);
        assert_eq!(
            gamma_ve_bruteforce(&g, &cfg()),
            Err(OracleError::CapExceeded { n: 21, cap: 20 })
        );
        assert!(gamma_ve_bruteforce(&g, &OracleConfig::with_cap(21)).is_ok());
    }

    #[test]
    fn search_is_exact_at_k_minus_one() {
        for g in [Graph::path(9), Graph::cycle(8), Graph::star(5)] {
            let k = gamma_ve_bruteforce(&g, &cfg()).unwrap().cardinality;
            assert!(first_ve_set_of_size(&g, k, false, &cfg())
                .unwrap()
                .is_some());
            if k > 0 {
                assert!(first_ve_set_of_size(&g, k - 1, false, &cfg())
                    .unwrap()
                    .is_none());
            }
        }
    }

    #[test]
    fn all_minimum_sets_of_p5() {
        // centre alone, or any nonadjacent pair covering the four edges
        let sets = all_minimum_independent_ve_sets(&Graph::path(5), &cfg()).unwrap();
        assert_eq!(sets, vec![vec![2]]);
        let sets = all_minimum_independent_ve_sets(&Graph::path(4), &cfg()).unwrap();
        assert_eq!(sets, vec![vec![1], vec![2]]);
    }
}
