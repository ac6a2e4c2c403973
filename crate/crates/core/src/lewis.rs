//! Lewis's subdivide-and-weight transformation and an exhaustive auditor.
//!
//! `T'` replaces every edge of `T` by a path of length two. Original vertices
//! weigh 1, subdivision vertices are forbidden, and the claimed identity is
//! that a minimum-weight distance-3 dominating set of `T'` has weight
//! `gamma_ve(T)`. Two originals are at distance `2 d_T(u, v)` in `T'`, so the
//! claim in fact computes the ordinary domination number of `T`. Restricting
//! the targets to subdivision vertices gives the corrected value: the
//! subdivision vertex of `uv` is within 3 of `x` exactly when `u` or `v` lies
//! in `N[x]`.

use crate::block::{gamma_ve_dp, SolverError};
use crate::graph::{canonical_form, enumerate_trees, Graph, GraphError, TreeEnumConfig};
use crate::oracles::{
    weighted_d3dom_bruteforce, OracleConfig, OracleError, Weight, WeightedInstance,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LewisError {
    #[error("input is not a tree")]
    NotATree,
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("solver: {0}")]
    Solver(String),
}

impl From<SolverError> for LewisError {
    fn from(e: SolverError) -> Self {
        LewisError::Solver(e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdividedTree {
    pub tree: Graph,
    /// `original[v]` for every vertex of `T'`.
    pub original: Vec<bool>,
    /// Edge id in `T` for each subdivision vertex, indexed by `v - n`.
    pub sub_of: Vec<usize>,
}

impl SubdividedTree {
    pub fn original_count(&self) -> usize {
        self.tree.n() - self.sub_of.len()
    }

    pub fn subdivision_vertices(&self) -> std::ops::Range<usize> {
        self.original_count()..self.tree.n()
    }

    fn weighted(&self) -> WeightedInstance {
        let weight = self
            .original
            .iter()
            .map(|&o| {
                if o {
                    Weight::Finite(1)
                } else {
                    Weight::Forbidden
                }
            })
            .collect();
        WeightedInstance {
            graph: self.tree.clone(),
            weight,
        }
    }
}

/// Originals keep their ids; edge `i` of `t` becomes vertex `n + i`.
pub fn subdivide(t: &Graph) -> Result<SubdividedTree, LewisError> {
    if !t.is_tree() {
        return Err(LewisError::NotATree);
    }
    let n = t.n();
    let mut edges = Vec::with_capacity(2 * t.m());
    for (i, &(u, v)) in t.edges().iter().enumerate() {
        edges.push((u, n + i));
        edges.push((n + i, v));
    }
    let tree = Graph::from_edges(n + t.m(), &edges)?;
    let mut original = vec![true; n];
    original.resize(n + t.m(), false);
    Ok(SubdividedTree {
        tree,
        original,
        sub_of: (0..t.m()).collect(),
    })
}

/// Minimum number of original vertices within distance 3 of every vertex of
/// `T'`. `None` when infeasible, which cannot happen for a tree but is kept
/// in the type because the weighted search can report it.
pub fn lewis_value(t: &Graph, cfg: &OracleConfig) -> Result<Option<usize>, LewisError> {
    let s = subdivide(t)?;
    let targets: Vec<usize> = (0..s.tree.n()).collect();
    solve(&s, &targets, cfg)
}

/// Same search with only the subdivision vertices as targets.
pub fn corrected_value(t: &Graph, cfg: &OracleConfig) -> Result<usize, LewisError> {
    let s = subdivide(t)?;
    let targets: Vec<usize> = s.subdivision_vertices().collect();
    Ok(solve(&s, &targets, cfg)?.expect("every subdivision vertex has an original neighbour"))
}

fn solve(
    s: &SubdividedTree,
    targets: &[usize],
    cfg: &OracleConfig,
) -> Result<Option<usize>, LewisError> {
    match weighted_d3dom_bruteforce(&s.weighted(), targets, cfg) {
        Ok(r) => Ok(Some(r.cardinality)),
        Err(OracleError::Infeasible) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub n: usize,
    pub canonical: String,
    pub edges: Vec<(usize, usize)>,
    pub gamma_ve: usize,
    /// `null` when infeasible.
    pub lewis_value: Option<usize>,
    pub corrected_value: usize,
    pub mismatch: bool,
}

impl AuditReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json_line(line: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(line)
    }
}

/// `gamma_ve` comes from the exact block-cut-tree DP; `cfg` caps the two
/// weighted searches by the number of original vertices.
pub fn audit(t: &Graph, cfg: &OracleConfig) -> Result<AuditReport, LewisError> {
    if !t.is_tree() {
        return Err(LewisError::NotATree);
    }
    let gamma_ve = gamma_ve_dp(t)?.cardinality;
    let lewis = lewis_value(t, cfg)?;
    Ok(AuditReport {
        n: t.n(),
        canonical: canonical_form(t)?.0,
        edges: t.edges().to_vec(),
        gamma_ve,
        lewis_value: lewis,
        corrected_value: corrected_value(t, cfg)?,
        mismatch: lewis != Some(gamma_ve),
    })
}

/// Audits every isomorphism class with `3 <= n <= n_max`, ordered by `n` and
/// then canonical form.
pub fn audit_all(
    n_max: usize,
    cfg: &OracleConfig,
    enum_cfg: &TreeEnumConfig,
) -> Result<Vec<AuditReport>, LewisError> {
    let mut trees = Vec::new();
    for n in 3..=n_max {
        trees.extend(enumerate_trees(n, true, enum_cfg)?);
    }
    crate::par::map(&trees, |t| audit(t, cfg))
        .into_iter()
        .collect()
}

/// The mismatching reports of `audit_all`, smallest first.
pub fn search_counterexamples(
    n_max: usize,
    cfg: &OracleConfig,
    enum_cfg: &TreeEnumConfig,
) -> Result<Vec<AuditReport>, LewisError> {
    Ok(audit_all(n_max, cfg, enum_cfg)?
        .into_iter()
        .filter(|r| r.mismatch)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    #[test]
    fn subdivide_examples() {
        let s = subdivide(&Graph::path(2)).unwrap();
        assert_eq!(s.tree.n(), 3);
        assert_eq!(s.original, vec![true, true, false]);
        assert!(s.tree.has_edge(0, 2) && s.tree.has_edge(2, 1));

        let s = subdivide(&Graph::path(4)).unwrap();
        assert_eq!((s.tree.n(), s.tree.m()), (7, 6));
        assert!(s.tree.is_tree());
        assert_eq!(s.subdivision_vertices(), 4..7);
        assert_eq!(s.sub_of, vec![0, 1, 2]);

        let s = subdivide(&Graph::star(3)).unwrap();
        assert_eq!(s.tree.degree(0), 3);
        assert!((1..4).all(|v| s.tree.degree(v) == 1));
        assert!((4..7).all(|v| s.tree.degree(v) == 2));

        assert_eq!(subdivide(&Graph::cycle(4)), Err(LewisError::NotATree));
    }

    #[test]
    fn values_on_paths() {
        assert_eq!(lewis_value(&Graph::path(2), &cfg()).unwrap(), Some(1));
        assert_eq!(corrected_value(&Graph::path(2), &cfg()).unwrap(), 1);
        // T' = P7 and the far original end is 4 away from either middle original
        assert_eq!(lewis_value(&Graph::path(4), &cfg()).unwrap(), Some(2));
        assert_eq!(corrected_value(&Graph::path(4), &cfg()).unwrap(), 1);
        assert_eq!(lewis_value(&Graph::path(7), &cfg()).unwrap(), Some(3));
        assert_eq!(corrected_value(&Graph::path(7), &cfg()).unwrap(), 2);
    }

    #[test]
    fn audit_examples() {
        let r = audit(&Graph::path(2), &cfg()).unwrap();
        assert_eq!(
            (r.gamma_ve, r.lewis_value, r.corrected_value, r.mismatch),
            (1, Some(1), 1, false)
        );
        let r = audit(&Graph::path(4), &cfg()).unwrap();
        assert_eq!(
            (r.gamma_ve, r.lewis_value, r.corrected_value, r.mismatch),
            (1, Some(2), 1, true)
        );
        let r = audit(&Graph::star(5), &cfg()).unwrap();
        assert!(!r.mismatch);
        assert_eq!(AuditReport::from_json_line(&r.to_json_line()).unwrap(), r);
    }

    #[test]
    fn search_is_smallest_first() {
        let found = search_counterexamples(6, &cfg(), &TreeEnumConfig::default()).unwrap();
        assert_eq!(found[0].n, 4);
        assert!(found
            .windows(2)
            .all(|w| (w[0].n, &w[0].canonical) < (w[1].n, &w[1].canonical)));
        assert!(
            search_counterexamples(3, &cfg(), &TreeEnumConfig::default())
                .unwrap()
                .is_empty()
        );
    }
}
