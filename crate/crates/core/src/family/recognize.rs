//! Recognition of the family by peeling atoms in reverse join order.
//!
//! The atom centers of a member form a minimum independent ve-dominating set,
//! so the recognizer fixes such a set `S` and searches for an edge whose far
//! side is an atom around one member of `S` and whose removal leaves a tree
//! on which the corresponding join condition holds. Bridge endpoints of later
//! joins are pinned to the atom that must contain them, and the search
//! recurses on the remainder.

use super::{
    join_condition, Atom, Bridge, CertStep, FamilyCertificate, FamilyError, JoinKind, JoinSpec,
    View,
};
use crate::block::{gamma_ve_dp, solve_independent};
use crate::graph::{tree_centers, Graph};
use crate::oracles::{all_minimum_independent_ve_sets, is_independent_ve_dominating, OracleConfig};
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecognizeConfig {
    /// Largest tree accepted; the search works on 64-bit vertex masks.
    pub max_vertices: usize,
}

impl Default for RecognizeConfig {
    fn default() -> Self {
        RecognizeConfig { max_vertices: 20 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Recognition {
    Accepted {
        gamma_ve: usize,
        i_ve: usize,
        certificate: FamilyCertificate,
        /// `vertex_map[v]` is the input vertex numbered `v` in the certificate.
        vertex_map: Vec<usize>,
    },
    Rejected {
        gamma_ve: usize,
        i_ve: usize,
        stage: String,
    },
    /// The peeling disagrees with the domination numbers.
    Defect {
        gamma_ve: usize,
        i_ve: usize,
        detail: String,
    },
}

impl Recognition {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Recognition::Accepted { .. })
    }
}

const MASK_LIMIT: usize = 64;

fn check_set(t: &Graph, set: &[usize], size: usize, step: &str) -> Result<(), FamilyError> {
    let ok = set.len() == size
        && is_independent_ve_dominating(t, set).map_err(|e| FamilyError::Oracle(e.to_string()))?;
    if ok {
        Ok(())
    } else {
        Err(FamilyError::Rewrite(format!("{step} produced {set:?}")))
    }
}

/// Rewrites a minimum independent ve-dominating set of the tree rooted at
/// `root` so that it holds no leaf and no member at the second-deepest level
/// sits at distance 3 or more from every other member.
pub fn normalize_ive_set(t: &Graph, root: usize, set: &[usize]) -> Result<Vec<usize>, FamilyError> {
    if !t.is_tree() {
        return Err(FamilyError::NotATree);
    }
    t.check_vertex(root)?;
    for &v in set {
        t.check_vertex(v)?;
    }
    let mut s: Vec<usize> = set.to_vec();
    s.sort_unstable();
    s.dedup();
    if !t.is_independent(&s) {
        return Err(FamilyError::NotIndependent);
    }
    if !crate::oracles::is_ve_dominating(t, &s).map_err(|e| FamilyError::Oracle(e.to_string()))? {
        return Err(FamilyError::NotDominating);
    }
    let i_ve = solve_independent(t)
        .map_err(|e| FamilyError::Oracle(e.to_string()))?
        .cardinality;
    if s.len() != i_ve {
        return Err(FamilyError::NotMinimum {
            size: s.len(),
            i_ve,
        });
    }
    let size = s.len();

    while let Some(pos) = s
        .iter()
        .position(|&x| t.degree(x) == 1 && t.neighbors(x).all(|y| t.degree(y) > 1))
    {
        let y = t.neighbors(s[pos]).next().unwrap();
        s[pos] = y;
        s.sort_unstable();
        check_set(t, &s, size, "leaf replacement")?;
    }

    let view = View::full(t);
    let depth = view.distances(root);
    let deepest = depth.iter().copied().max().unwrap_or(0);
    let parent = |u: usize| t.neighbors(u).find(|&w| depth[w] + 1 == depth[u]);
    loop {
        let candidate = s.iter().copied().find(|&u| {
            if deepest == 0 || depth[u] + 1 != deepest {
                return false;
            }
            let d = view.distances(u);
            let nearest = s.iter().filter(|&&v| v != u).map(|&v| d[v]).min();
            nearest.is_some_and(|d| d >= 3) && parent(u).is_some_and(|w| t.degree(w) > 1)
        });
        let Some(u) = candidate else { break };
        let w = parent(u).unwrap();
        s.retain(|&v| v != u);
        s.push(w);
        s.sort_unstable();
        check_set(t, &s, size, "move to parent")?;
    }
    Ok(s)
}

/// One peeled atom, `part` joined to the rest through `a - b`.
#[derive(Clone, Debug)]
struct Peel {
    part: u64,
    center: usize,
    a: usize,
    b: usize,
    c_prime: usize,
    kind: JoinKind,
    case: String,
}

struct Peeler<'a> {
    t: &'a Graph,
    centers: u64,
    depth: Vec<usize>,
    height: usize,
    failed: HashSet<(u64, Vec<(usize, usize)>)>,
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..MASK_LIMIT).filter(move |&v| mask >> v & 1 == 1)
}

impl Peeler<'_> {
    fn side(&self, r: u64, a: usize, b: usize) -> u64 {
        let mut part = 1u64 << b;
        let mut q = VecDeque::from([b]);
        while let Some(v) = q.pop_front() {
            for w in self.t.neighbors(v) {
                if w != a && r >> w & 1 == 1 && part >> w & 1 == 0 {
                    part |= 1 << w;
                    q.push_back(w);
                }
            }
        }
        part
    }

    fn certify(&mut self, r: u64, mut cons: Vec<(usize, usize)>) -> Option<(usize, Vec<Peel>)> {
        cons.sort_unstable();
        let here = r & self.centers;
        if here.count_ones() == 1 {
            let c = here.trailing_zeros() as usize;
            let atom = r.count_ones() >= 3 && View::of(self.t, r).eccentricity(c) <= 2;
            let owned = cons.iter().all(|&(_, o)| o == c);
            return (atom && owned).then(|| (c, Vec::new()));
        }
        let key = (r, cons.clone());
        if self.failed.contains(&key) {
            return None;
        }
        let mut cands: Vec<(usize, usize, usize, u64)> = Vec::new();
        for &(u, v) in self.t.edges() {
            if r >> u & 1 == 0 || r >> v & 1 == 0 {
                continue;
            }
            for (a, b) in [(u, v), (v, u)] {
                let part = self.side(r, a, b);
                let inside = part & self.centers;
                if inside.count_ones() != 1 || part.count_ones() < 3 || (r & !part).count_ones() < 3
                {
                    continue;
                }
                cands.push((inside.trailing_zeros() as usize, a, b, part));
            }
        }
        cands.sort_by_key(|&(c, a, b, _)| (std::cmp::Reverse(self.depth[c]), c, a, b));
        for (c, a, b, part) in cands {
            if cons.iter().any(|&(v, o)| part >> v & 1 == 1 && o != c) {
                continue;
            }
            let atom_view = View::of(self.t, part);
            let dc = atom_view.distances(c);
            if dc[b] > 1 || atom_view.vertices().any(|v| dc[v] > 2) {
                continue;
            }
            let rest = r & !part;
            let rest_view = View::of(self.t, rest);
            let rest_centers: Vec<usize> = bits(rest & self.centers).collect();
            let da = rest_view.distances(a);
            let pinned = cons.iter().find(|&&(v, _)| v == a).map(|&(_, o)| o);
            let kept: Vec<(usize, usize)> = cons
                .iter()
                .copied()
                .filter(|&(v, _)| rest >> v & 1 == 1)
                .collect();
            for &c_prime in &rest_centers {
                let i = da[c_prime];
                if i > 2 || pinned.is_some_and(|o| o != c_prime) {
                    continue;
                }
                for kind in JoinKind::ALL {
                    if kind.pattern() != (i, dc[b]) {
                        continue;
                    }
                    let old = Bridge {
                        existing: &rest_view,
                        centers: &rest_centers,
                        c_prime,
                        a,
                    };
                    let new = Bridge {
                        existing: &atom_view,
                        centers: &[c],
                        c_prime: c,
                        a: b,
                    };
                    if join_condition(kind, &old, &new).is_err() {
                        continue;
                    }
                    let mut next = kept.clone();
                    if pinned.is_none() {
                        next.push((a, c_prime));
                    }
                    if let Some((base, mut peels)) = self.certify(rest, next) {
                        let d = View::full(self.t).distances(c)[c_prime];
                        peels.push(Peel {
                            part,
                            center: c,
                            a,
                            b,
                            c_prime,
                            kind,
                            case: format!("dist-{d}/h-{}", self.height - self.depth[c]),
                        });
                        return Some((base, peels));
                    }
                }
            }
        }
        self.failed.insert(key);
        None
    }
}

fn atom_of(
    t: &Graph,
    mask: u64,
    center: usize,
    ids: &mut [usize],
    next: &mut usize,
    map: &mut Vec<usize>,
) -> Atom {
    let keep: Vec<usize> = bits(mask).collect();
    for &v in &keep {
        ids[v] = *next;
        *next += 1;
        map.push(v);
    }
    let local = keep.iter().position(|&v| v == center).unwrap();
    Atom::new(t.induced(&keep), local).expect("peeled parts are atoms")
}

/// A certificate whose atom centers are exactly `set`, if one exists.
fn certify_with(t: &Graph, set: &[usize], root: usize) -> Option<(FamilyCertificate, Vec<usize>)> {
    let depth = View::full(t).distances(root);
    let mut peeler = Peeler {
        t,
        centers: set.iter().fold(0, |m, &v| m | 1 << v),
        height: depth.iter().copied().max().unwrap_or(0),
        depth,
        failed: HashSet::new(),
    };
    let full = if t.n() == MASK_LIMIT {
        u64::MAX
    } else {
        (1u64 << t.n()) - 1
    };
    let (base_center, peels) = peeler.certify(full, Vec::new())?;
    let base_mask = peels.iter().fold(full, |m, p| m & !p.part);
    let mut ids = vec![usize::MAX; t.n()];
    let mut map = Vec::with_capacity(t.n());
    let mut next = 0;
    let base = atom_of(t, base_mask, base_center, &mut ids, &mut next, &mut map);
    let mut atom_index = vec![usize::MAX; t.n()];
    atom_index[base_center] = 0;
    let mut steps = Vec::with_capacity(peels.len());
    for (k, p) in peels.iter().enumerate() {
        let x_existing = ids[p.a];
        let atom = atom_of(t, p.part, p.center, &mut ids, &mut next, &mut map);
        let x_new = ids[p.b] - ids[bits(p.part).next().unwrap()];
        atom_index[p.center] = k + 1;
        steps.push(CertStep {
            atom,
            spec: JoinSpec {
                kind: p.kind,
                x_existing,
                x_new,
            },
            attached_to: atom_index[p.c_prime],
            case: Some(p.case.clone()),
        });
    }
    Some((FamilyCertificate { base, steps }, map))
}

/// Decides membership in the family, returning a certificate for members.
pub fn recognize(t: &Graph, cfg: &RecognizeConfig) -> Result<Recognition, FamilyError> {
    if !t.is_tree() {
        return Err(FamilyError::NotATree);
    }
    if t.n() < 3 {
        return Err(FamilyError::TooSmall(t.n()));
    }
    let cap = cfg.max_vertices.min(MASK_LIMIT);
    if t.n() > cap {
        return Err(FamilyError::TooLarge { n: t.n(), cap });
    }
    let oracle = |e: crate::block::SolverError| FamilyError::Oracle(e.to_string());
    let gamma_ve = gamma_ve_dp(t).map_err(oracle)?.cardinality;
    let ive = solve_independent(t).map_err(oracle)?;
    let i_ve = ive.cardinality;
    let root = tree_centers(t)[0];

    let mut found = certify_with(t, &normalize_ive_set(t, root, &ive.set)?, root);
    if found.is_none() && gamma_ve == i_ve {
        let sets = all_minimum_independent_ve_sets(t, &OracleConfig::with_cap(cap))
            .map_err(|e| FamilyError::Oracle(e.to_string()))?;
        found = sets.iter().find_map(|s| certify_with(t, s, root));
    }
    let Some((certificate, vertex_map)) = found else {
        return Ok(if gamma_ve == i_ve {
            Recognition::Defect {
                gamma_ve,
                i_ve,
                detail: "no minimum independent ve-dominating set admits a peeling".into(),
            }
        } else {
            Recognition::Rejected {
                gamma_ve,
                i_ve,
                stage: format!("no peeling exists; gamma_ve = {gamma_ve} < i_ve = {i_ve}"),
            }
        });
    };
    let defect = |detail: String| Recognition::Defect {
        gamma_ve,
        i_ve,
        detail,
    };
    let replayed = match certificate.replay() {
        Ok(ft) => ft,
        Err(e) => return Ok(defect(format!("certificate does not replay: {e}"))),
    };
    let same = replayed.tree().m() == t.m()
        && t.edges().iter().all(|&(u, v)| {
            let (x, y) = (
                vertex_map.iter().position(|&w| w == u),
                vertex_map.iter().position(|&w| w == v),
            );
            matches!((x, y), (Some(x), Some(y)) if replayed.tree().has_edge(x, y))
        });
    if !same {
        return Ok(defect("replayed tree differs from the input".into()));
    }
    if certificate.atom_count() != gamma_ve || gamma_ve != i_ve {
        return Ok(defect(format!(
            "certificate with {} atoms on a tree with gamma_ve = {gamma_ve}, i_ve = {i_ve}",
            certificate.atom_count()
        )));
    }
    Ok(Recognition::Accepted {
        gamma_ve,
        i_ve,
        certificate,
        vertex_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_atom_is_accepted() {
        let r = recognize(&Graph::star(4), &RecognizeConfig::default()).unwrap();
        match r {
            Recognition::Accepted { certificate, .. } => assert!(certificate.steps.is_empty()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn leaf_in_set_is_replaced() {
        // P3 with S = {end}
        let s = normalize_ive_set(&Graph::path(3), 1, &[0]).unwrap();
        assert_eq!(s, vec![1]);
    }

    #[test]
    fn stable_set_is_unchanged() {
        let p7 = Graph::path(7);
        assert_eq!(normalize_ive_set(&p7, 3, &[2, 4]).unwrap(), vec![2, 4]);
        assert_eq!(normalize_ive_set(&p7, 3, &[1, 5]).unwrap(), vec![2, 4]);
    }

    #[test]
    fn p7_moves_deep_member_up() {
        // rooted at 0 the height is 7 levels; 5 sits at level 6 with 1 at distance 4
        let p7 = Graph::path(7);
        assert_eq!(normalize_ive_set(&p7, 0, &[1, 5]).unwrap(), vec![1, 4]);
    }

    #[test]
    fn bad_sets_are_rejected() {
        let p5 = Graph::path(5);
        assert_eq!(
            normalize_ive_set(&p5, 0, &[1, 2]),
            Err(FamilyError::NotIndependent)
        );
        assert_eq!(
            normalize_ive_set(&p5, 0, &[0]),
            Err(FamilyError::NotDominating)
        );
        assert_eq!(
            normalize_ive_set(&p5, 0, &[0, 2, 4]),
            Err(FamilyError::NotMinimum { size: 3, i_ve: 1 })
        );
    }

    #[test]
    fn non_tree_is_an_error() {
        assert_eq!(
            recognize(&Graph::cycle(4), &RecognizeConfig::default()),
            Err(FamilyError::NotATree)
        );
        assert_eq!(
            recognize(&Graph::path(2), &RecognizeConfig::default()),
            Err(FamilyError::TooSmall(2))
        );
    }
}
