//! Atoms, `(i-j)`-joins and the tree family on which `γ_ve = i_ve`.
//!
//! A member is built from one atom by repeatedly attaching a further atom
//! through a single edge. Each attachment must satisfy the condition of its
//! join kind, evaluated in the tree built so far with the current atom
//! centers as the reference set.

mod generate;
mod recognize;

pub use generate::{generate_family_member, AtomParams};
pub use recognize::{normalize_ive_set, recognize, Recognition, RecognizeConfig};

use crate::graph::{Graph, GraphError, GraphJson};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("not an atom: {0}")]
    NotAtom(String),
    #[error("graph is not a tree")]
    NotATree,
    #[error("vertex {0} is not in the tree")]
    NoSuchVertex(usize),
    #[error("vertex {0} is not in the set")]
    NotInSet(usize),
    #[error("{kind} join needs distances ({}, {}) but found ({}, {})", expected.0, expected.1, found.0, found.1)]
    PatternMismatch {
        kind: JoinKind,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("step attaches to atom {claimed} but x_existing lies in atom {actual}")]
    WrongAttachment { claimed: usize, actual: usize },
    #[error("{kind} join rejected: {reason}")]
    JoinRejected { kind: JoinKind, reason: String },
    #[error("retry budget exhausted after {placed} atoms")]
    RetryBudget {
        placed: usize,
        partial: Box<FamilyCertificate>,
    },
    #[error("set is not independent")]
    NotIndependent,
    #[error("set is not ve-dominating")]
    NotDominating,
    #[error("set has {size} vertices but i_ve = {i_ve}")]
    NotMinimum { size: usize, i_ve: usize },
    #[error("tree has {n} vertices, above the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("tree has {0} vertices; at least 3 are needed")]
    TooSmall(usize),
    #[error("solver failed: {0}")]
    Oracle(String),
    #[error("rewrite broke the set: {0}")]
    Rewrite(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A tree on at least three vertices with every vertex within distance 2 of
/// its center.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AtomJson", into = "AtomJson")]
pub struct Atom {
    tree: Graph,
    center: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct AtomJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    center: usize,
}

impl From<Atom> for AtomJson {
    fn from(a: Atom) -> Self {
        let GraphJson { n, edges } = a.tree.to_json();
        AtomJson {
            n,
            edges,
            center: a.center,
        }
    }
}

impl TryFrom<AtomJson> for Atom {
    type Error = FamilyError;

    fn try_from(j: AtomJson) -> Result<Self, FamilyError> {
        let tree = Graph::from_json(&GraphJson {
            n: j.n,
            edges: j.edges,
        })?;
        Atom::new(tree, j.center)
    }
}

impl Atom {
    pub fn new(tree: Graph, center: usize) -> Result<Self, FamilyError> {
        if center >= tree.n() {
            return Err(FamilyError::NoSuchVertex(center));
        }
        if !is_atom(&tree, center) {
            return Err(FamilyError::NotAtom(format!(
                "{} vertices, center {center}",
                tree.n()
            )));
        }
        Ok(Atom { tree, center })
    }

    /// The star `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Result<Self, FamilyError> {
        Atom::new(Graph::star(leaves), 0)
    }

    pub fn tree(&self) -> &Graph {
        &self.tree
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn n(&self) -> usize {
        self.tree.n()
    }

    pub fn distance(&self, v: usize) -> usize {
        View::full(&self.tree).distances(self.center)[v]
    }
}

pub fn is_atom(t: &Graph, c: usize) -> bool {
    c < t.n() && t.n() >= 3 && t.is_tree() && View::full(t).eccentricity(c) <= 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum JoinKind {
    #[serde(rename = "0-1a")]
    ZeroOneA,
    #[serde(rename = "0-1b")]
    ZeroOneB,
    #[serde(rename = "0-1c")]
    ZeroOneC,
    #[serde(rename = "1-0a")]
    OneZeroA,
    #[serde(rename = "1-0b")]
    OneZeroB,
    #[serde(rename = "1-1")]
    OneOne,
    #[serde(rename = "2-1")]
    TwoOne,
}

impl JoinKind {
    pub const ALL: [JoinKind; 7] = [
        JoinKind::ZeroOneA,
        JoinKind::ZeroOneB,
        JoinKind::ZeroOneC,
        JoinKind::OneZeroA,
        JoinKind::OneZeroB,
        JoinKind::OneOne,
        JoinKind::TwoOne,
    ];

    /// `(i, j)`: distance of the bridge endpoint from the existing center and
    /// from the new center.
    pub fn pattern(self) -> (usize, usize) {
        match self {
            JoinKind::ZeroOneA | JoinKind::ZeroOneB | JoinKind::ZeroOneC => (0, 1),
            JoinKind::OneZeroA | JoinKind::OneZeroB => (1, 0),
            JoinKind::OneOne => (1, 1),
            JoinKind::TwoOne => (2, 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            JoinKind::ZeroOneA => "0-1a",
            JoinKind::ZeroOneB => "0-1b",
            JoinKind::ZeroOneC => "0-1c",
            JoinKind::OneZeroA => "1-0a",
            JoinKind::OneZeroB => "1-0b",
            JoinKind::OneOne => "1-1",
            JoinKind::TwoOne => "2-1",
        }
    }

    pub fn parse(s: &str) -> Option<JoinKind> {
        JoinKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl std::fmt::Display for JoinKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinSpec {
    pub kind: JoinKind,
    /// Bridge endpoint in the existing tree.
    pub x_existing: usize,
    /// Bridge endpoint in the new atom, in the atom's own numbering.
    pub x_new: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertStep {
    pub atom: Atom,
    #[serde(flatten)]
    pub spec: JoinSpec,
    /// Index of the atom containing `x_existing` (0 is the base atom).
    pub attached_to: usize,
    /// Shape of the configuration the step was peeled from, when produced by
    /// the recognizer.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
}

/// A base atom and a sequence of joins that build a member of the family.
/// Atom `s` occupies the vertex ids right after those of atoms `0..s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCertificate {
    pub base: Atom,
    pub steps: Vec<CertStep>,
}

impl FamilyCertificate {
    pub fn atom_count(&self) -> usize {
        1 + self.steps.len()
    }

    /// Rebuilds the tree, validating every join.
    pub fn replay(&self) -> Result<FamilyTree, FamilyError> {
        let mut ft = FamilyTree::from_atom(self.base.clone());
        for step in &self.steps {
            let actual = ft.owner(step.spec.x_existing)?;
            if actual != step.attached_to {
                return Err(FamilyError::WrongAttachment {
                    claimed: step.attached_to,
                    actual,
                });
            }
            let mut next = apply_join(&ft, step.atom.clone(), step.spec)?;
            next.cert.steps.last_mut().unwrap().case = step.case.clone();
            ft = next;
        }
        Ok(ft)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificates serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, String> {
        serde_json::from_str(s).map_err(|e| e.to_string())
    }
}

/// The set of atom centers, in certificate numbering.
pub fn atom_centers(cert: &FamilyCertificate) -> Vec<usize> {
    let mut out = vec![cert.base.center];
    let mut offset = cert.base.n();
    for step in &cert.steps {
        out.push(offset + step.atom.center);
        offset += step.atom.n();
    }
    out
}

/// A family member together with its certificate and the atom owning each
/// vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyTree {
    tree: Graph,
    owner: Vec<usize>,
    centers: Vec<usize>,
    cert: FamilyCertificate,
}

impl FamilyTree {
    pub fn from_atom(atom: Atom) -> Self {
        FamilyTree {
            tree: atom.tree.clone(),
            owner: vec![0; atom.n()],
            centers: vec![atom.center],
            cert: FamilyCertificate {
                base: atom,
                steps: Vec::new(),
            },
        }
    }

    pub fn tree(&self) -> &Graph {
        &self.tree
    }

    pub fn certificate(&self) -> &FamilyCertificate {
        &self.cert
    }

    pub fn into_parts(self) -> (Graph, FamilyCertificate) {
        (self.tree, self.cert)
    }

    /// Atom centers, indexed by atom.
    pub fn centers(&self) -> &[usize] {
        &self.centers
    }

    pub fn owner(&self, v: usize) -> Result<usize, FamilyError> {
        self.owner
            .get(v)
            .copied()
            .ok_or(FamilyError::NoSuchVertex(v))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinCheck {
    pub valid: bool,
    pub reason: String,
}

/// Checks the condition of `spec.kind` for attaching `atom` to `ft`.
///
/// Errors cover malformed specs: unknown endpoints or distances that do not
/// fit the kind. A well-formed spec whose condition fails yields
/// `valid = false` with the failing clause.
pub fn validate_join(
    ft: &FamilyTree,
    atom: &Atom,
    spec: &JoinSpec,
) -> Result<JoinCheck, FamilyError> {
    let a = spec.x_existing;
    let owner = ft.owner(a)?;
    if spec.x_new >= atom.n() {
        return Err(FamilyError::NoSuchVertex(spec.x_new));
    }
    let existing = View::full(&ft.tree);
    let c_prime = ft.centers[owner];
    let side = View::full(&atom.tree);
    let found = (
        existing.distances(c_prime)[a],
        side.distances(atom.center)[spec.x_new],
    );
    if found != spec.kind.pattern() {
        return Err(FamilyError::PatternMismatch {
            kind: spec.kind,
            expected: spec.kind.pattern(),
            found,
        });
    }
    let verdict = join_condition(
        spec.kind,
        &Bridge {
            existing: &existing,
            centers: &ft.centers,
            c_prime,
            a,
        },
        &Bridge {
            existing: &side,
            centers: &[atom.center],
            c_prime: atom.center,
            a: spec.x_new,
        },
    );
    Ok(match verdict {
        Ok(()) => JoinCheck {
            valid: true,
            reason: String::new(),
        },
        Err(reason) => JoinCheck {
            valid: false,
            reason,
        },
    })
}

/// Adds the bridge edge and the atom's vertices, numbering the atom's vertex
/// `v` as `ft.tree().n() + v`.
pub fn apply_join(ft: &FamilyTree, atom: Atom, spec: JoinSpec) -> Result<FamilyTree, FamilyError> {
    let check = validate_join(ft, &atom, &spec)?;
    if !check.valid {
        return Err(FamilyError::JoinRejected {
            kind: spec.kind,
            reason: check.reason,
        });
    }
    let offset = ft.tree.n();
    let mut edges = ft.tree.edges().to_vec();
    edges.extend(
        atom.tree
            .edges()
            .iter()
            .map(|&(u, v)| (u + offset, v + offset)),
    );
    edges.push((spec.x_existing, offset + spec.x_new));
    let tree = Graph::from_edges(offset + atom.n(), &edges)?;
    let index = ft.centers.len();
    let mut owner = ft.owner.clone();
    owner.resize(offset + atom.n(), index);
    let mut centers = ft.centers.clone();
    centers.push(offset + atom.center);
    let mut cert = ft.cert.clone();
    cert.steps.push(CertStep {
        atom,
        spec,
        attached_to: ft.owner[spec.x_existing],
        case: None,
    });
    Ok(FamilyTree {
        tree,
        owner,
        centers,
        cert,
    })
}

/// Edge ids ve-dominated by `v` and by no other member of `set`. With
/// `distance1_only`, only edges whose nearer endpoint is at distance exactly 1
/// from `v`.
pub fn private_edges(
    t: &Graph,
    set: &[usize],
    v: usize,
    distance1_only: bool,
) -> Result<Vec<usize>, FamilyError> {
    for &s in set {
        t.check_vertex(s)?;
    }
    if !set.contains(&v) {
        return Err(FamilyError::NotInSet(v));
    }
    let view = View::full(t);
    let private = view.private_edges(set, v, distance1_only);
    Ok(private
        .into_iter()
        .map(|(x, y)| t.edge_id(x, y).unwrap())
        .collect())
}

/// A subgraph of a tree given by a set of live vertices.
#[derive(Clone)]
pub(crate) struct View<'a> {
    pub g: &'a Graph,
    pub alive: Vec<bool>,
}

const FAR: usize = usize::MAX;

impl<'a> View<'a> {
    pub fn full(g: &'a Graph) -> Self {
        View {
            g,
            alive: vec![true; g.n()],
        }
    }

    pub fn of(g: &'a Graph, mask: u64) -> Self {
        View {
            g,
            alive: (0..g.n()).map(|v| mask >> v & 1 == 1).collect(),
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.g.n()).filter(|&v| self.alive[v])
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.g.neighbors(v).filter(|&w| self.alive[w])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.degree(v) == 1
    }

    /// Live edges as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.g
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| self.alive[u] && self.alive[v])
    }

    pub fn distances(&self, s: usize) -> Vec<usize> {
        let mut d = vec![FAR; self.g.n()];
        d[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for w in self.neighbors(v) {
                if d[w] == FAR {
                    d[w] = d[v] + 1;
                    q.push_back(w);
                }
            }
        }
        d
    }

    pub fn eccentricity(&self, s: usize) -> usize {
        let d = self.distances(s);
        self.vertices().map(|v| d[v]).max().unwrap_or(0)
    }

    pub fn private_edges(
        &self,
        set: &[usize],
        v: usize,
        distance1_only: bool,
    ) -> Vec<(usize, usize)> {
        let dist: Vec<Vec<usize>> = set.iter().map(|&s| self.distances(s)).collect();
        let dv = &dist[set.iter().position(|&s| s == v).unwrap()];
        let covers = |d: &Vec<usize>, x: usize, y: usize| d[x] <= 1 || d[y] <= 1;
        self.edges()
            .filter(|&(x, y)| covers(dv, x, y))
            .filter(|&(x, y)| {
                set.iter()
                    .zip(&dist)
                    .all(|(&s, d)| s == v || !covers(d, x, y))
            })
            .filter(|&(x, y)| !distance1_only || dv[x].min(dv[y]) == 1)
            .collect()
    }

    /// Edges whose nearer endpoint is at distance exactly 1 from `c`.
    pub fn distance1_edges(&self, c: usize) -> Vec<(usize, usize)> {
        let d = self.distances(c);
        self.edges().filter(|&(x, y)| d[x].min(d[y]) == 1).collect()
    }
}

/// One side of a join: a tree, its centers, the relevant center and the
/// bridge endpoint.
pub(crate) struct Bridge<'v, 'a> {
    pub existing: &'v View<'a>,
    pub centers: &'v [usize],
    pub c_prime: usize,
    pub a: usize,
}

/// Neighbour `y ≠ x_c'` of `c'` with at least one further edge, all of them
/// pendent (and, with `private`, private to `c'`).
fn pendent_hub(side: &Bridge, private: Option<&[(usize, usize)]>) -> bool {
    let t = side.existing;
    let c = side.c_prime;
    t.neighbors(c).filter(|&y| y != side.a).any(|y| {
        let rest: Vec<usize> = t.neighbors(y).filter(|&z| z != c).collect();
        !rest.is_empty()
            && rest
                .iter()
                .all(|&z| t.is_leaf(z) && private.is_none_or(|p| p.contains(&(y.min(z), y.max(z)))))
    })
}

/// The join condition for `kind`, with `old` the existing tree and `new` the
/// atom being attached.
pub(crate) fn join_condition(kind: JoinKind, old: &Bridge, new: &Bridge) -> Result<(), String> {
    let atom = new.existing;
    let c = new.c_prime;
    let x_c = new.a;
    let atom_d1 = atom.distance1_edges(c);
    let atom_d1_away = atom_d1.iter().any(|&(u, v)| u != x_c && v != x_c);
    let d1_private = || old.existing.private_edges(old.centers, old.c_prime, true);
    let need_atom_away = || {
        if atom_d1_away {
            Ok(())
        } else {
            Err(format!(
                "{kind}: every distance-1 edge of the new atom meets x_c"
            ))
        }
    };
    match kind {
        JoinKind::ZeroOneA => {
            if !atom_d1.is_empty() || atom.degree(c) < 2 {
                return Err("0-1a: the new atom is not a star".into());
            }
            if !pendent_hub(old, None) {
                return Err("0-1a: no neighbour of c' whose other edges are all pendent".into());
            }
            Ok(())
        }
        JoinKind::ZeroOneB => {
            if d1_private().is_empty() {
                return Err("0-1b: c' has no distance-1 private edge".into());
            }
            need_atom_away()
        }
        JoinKind::ZeroOneC => {
            if !d1_private().is_empty() {
                return Err("0-1c: c' has a distance-1 private edge".into());
            }
            need_atom_away()
        }
        JoinKind::OneZeroA => {
            if atom_d1.is_empty() {
                return Err("1-0a: the new atom has no distance-1 edge".into());
            }
            let private = old.existing.private_edges(old.centers, old.c_prime, false);
            if !pendent_hub(old, Some(&private)) {
                return Err(
                    "1-0a: no neighbour of c' whose other edges are pendent and private".into(),
                );
            }
            Ok(())
        }
        JoinKind::OneZeroB => {
            if atom_d1.is_empty() {
                return Err("1-0b: the new atom has no distance-1 edge".into());
            }
            let t = old.existing;
            if !t.neighbors(old.c_prime).any(|y| y != old.a && t.is_leaf(y)) {
                return Err("1-0b: c' has no leaf neighbour other than x_c'".into());
            }
            if !t.is_leaf(old.a) && !t.neighbors(old.c_prime).all(|y| y == old.a || t.is_leaf(y)) {
                return Err("1-0b: x_c' and some other neighbour of c' are not leaves".into());
            }
            Ok(())
        }
        JoinKind::OneOne => {
            if !d1_private().iter().any(|&(u, v)| u != old.a && v != old.a) {
                return Err("1-1: every distance-1 private edge of c' meets x_c'".into());
            }
            need_atom_away()
        }
        JoinKind::TwoOne => {
            let t = old.existing;
            let y = t
                .neighbors(old.c_prime)
                .find(|&y| t.g.has_edge(y, old.a) && t.alive[y])
                .expect("distance 2 in a tree has a middle vertex");
            if !d1_private().iter().any(|&(u, v)| u != y && v != y) {
                return Err(
                    "2-1: every distance-1 private edge of c' meets the middle vertex".into(),
                );
            }
            need_atom_away()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spider() -> Atom {
        // center 0, arms 0-1-2 and 0-3-4, leaf 5
        Atom::new(
            Graph::from_edges(6, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5)]).unwrap(),
            0,
        )
        .unwrap()
    }

    #[test]
    fn atom_examples() {
        let p5 = Graph::path(5);
        assert!(is_atom(&p5, 2));
        assert!(!is_atom(&p5, 0));
        assert!(!is_atom(&Graph::path(2), 0));
        assert!(!is_atom(&Graph::cycle(3), 0));
    }

    #[test]
    fn private_edge_examples() {
        let star = Graph::star(4);
        assert_eq!(private_edges(&star, &[0], 0, false).unwrap().len(), 4);
        assert!(private_edges(&star, &[0], 0, true).unwrap().is_empty());
        let p5 = Graph::path(5);
        // both members see 12 and 23
        let e = |u, v| p5.edge_id(u, v).unwrap();
        assert_eq!(
            private_edges(&p5, &[1, 3], 1, false).unwrap(),
            vec![e(0, 1)]
        );
        assert_eq!(
            private_edges(&p5, &[1, 3], 3, false).unwrap(),
            vec![e(3, 4)]
        );
        let all: Vec<usize> = (0..5).collect();
        assert!(private_edges(&p5, &all, 2, false).unwrap().is_empty());
        assert_eq!(
            private_edges(&p5, &[1], 2, false),
            Err(FamilyError::NotInSet(2))
        );
    }

    #[test]
    fn zero_one_a_smallest_instance() {
        // y = 1 has the single further edge 1-2, which is pendent
        let base = Atom::new(Graph::from_edges(4, &[(0, 1), (1, 2), (0, 3)]).unwrap(), 0).unwrap();
        let ft = FamilyTree::from_atom(base);
        let spec = JoinSpec {
            kind: JoinKind::ZeroOneA,
            x_existing: 0,
            x_new: 1,
        };
        let check = validate_join(&ft, &Atom::star(2).unwrap(), &spec).unwrap();
        assert!(check.valid, "{}", check.reason);
        // a star base has no such y: all neighbours of c' are leaves
        let star = FamilyTree::from_atom(Atom::star(3).unwrap());
        let check = validate_join(&star, &Atom::star(2).unwrap(), &spec).unwrap();
        assert!(!check.valid);
        // a non-star atom fails the first clause
        let check = validate_join(&ft, &spider(), &spec).unwrap();
        assert!(check.reason.contains("not a star"));
    }

    #[test]
    fn one_one_rejected_when_private_edges_meet_x() {
        // base P5 centred at 2: distance-1 edges 01 and 34. Attaching at 1
        // leaves 34 away from x, attaching at 1 after 3 is gone is not possible,
        // so use a spider arm: base 0-1-2 centred at 0
        let base = Atom::new(Graph::from_edges(4, &[(0, 1), (1, 2), (0, 3)]).unwrap(), 0).unwrap();
        let ft = FamilyTree::from_atom(base);
        let spec = JoinSpec {
            kind: JoinKind::OneOne,
            x_existing: 1,
            x_new: 1,
        };
        let check = validate_join(&ft, &spider(), &spec).unwrap();
        assert!(!check.valid);
        assert!(check.reason.starts_with("1-1"), "{}", check.reason);
        let ok = JoinSpec {
            x_existing: 3,
            ..spec
        };
        // the only distance-1 private edge 12 avoids 3
        assert!(validate_join(&ft, &spider(), &ok).unwrap().valid);
    }

    #[test]
    fn pattern_mismatch_is_an_error() {
        let ft = FamilyTree::from_atom(spider());
        let spec = JoinSpec {
            kind: JoinKind::ZeroOneB,
            x_existing: 0,
            x_new: 2,
        };
        assert!(matches!(
            validate_join(&ft, &spider(), &spec),
            Err(FamilyError::PatternMismatch { .. })
        ));
        let spec = JoinSpec {
            x_existing: 99,
            ..spec
        };
        assert_eq!(
            validate_join(&ft, &spider(), &spec),
            Err(FamilyError::NoSuchVertex(99))
        );
    }

    #[test]
    fn zero_one_b_puts_centers_at_distance_two() {
        let ft = FamilyTree::from_atom(spider());
        let spec = JoinSpec {
            kind: JoinKind::ZeroOneB,
            x_existing: 0,
            x_new: 1,
        };
        let next = apply_join(&ft, spider(), spec).unwrap();
        let c = next.centers().to_vec();
        let d = View::full(next.tree()).distances(c[0]);
        assert_eq!(d[c[1]], 2);
        let replayed = next.certificate().replay().unwrap();
        assert_eq!(replayed.tree(), next.tree());
    }

    #[test]
    fn one_one_puts_centers_at_distance_three() {
        let ft = FamilyTree::from_atom(spider());
        let spec = JoinSpec {
            kind: JoinKind::OneOne,
            x_existing: 1,
            x_new: 3,
        };
        let next = apply_join(&ft, spider(), spec).unwrap();
        let c = atom_centers(next.certificate());
        assert_eq!(View::full(next.tree()).distances(c[0])[c[1]], 3);
    }

    #[test]
    fn certificate_json_round_trip() {
        let ft = FamilyTree::from_atom(spider());
        let spec = JoinSpec {
            kind: JoinKind::OneOne,
            x_existing: 1,
            x_new: 3,
        };
        let cert = apply_join(&ft, spider(), spec)
            .unwrap()
            .certificate()
            .clone();
        let json = cert.to_json();
        assert!(json.contains("\"kind\":\"1-1\""));
        assert_eq!(FamilyCertificate::from_json(&json).unwrap(), cert);
        assert!(
            FamilyCertificate::from_json(&json.replace("\"center\":0", "\"center\":2")).is_err()
        );
    }
}
