use super::{apply_join, validate_join, Atom, FamilyError, FamilyTree, JoinKind, JoinSpec, View};
use crate::graph::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Size controls for [`generate_family_member`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomParams {
    pub min_vertices: usize,
    pub max_vertices: usize,
    /// Upper bound on the member's total vertex count.
    pub max_total: Option<usize>,
    /// Attempts per join before giving up.
    pub retries: usize,
}

impl Default for AtomParams {
    fn default() -> Self {
        AtomParams {
            min_vertices: 3,
            max_vertices: 9,
            max_total: None,
            retries: 2000,
        }
    }
}

/// A random atom: center 0, `d1` vertices at level 1, the rest hung below
/// them.
fn random_atom(rng: &mut ChaCha8Rng, n: usize) -> Atom {
    let d1 = rng.gen_range(1..n);
    let mut edges: Vec<(usize, usize)> = (1..=d1).map(|v| (0, v)).collect();
    for v in d1 + 1..n {
        edges.push((rng.gen_range(1..=d1), v));
    }
    Atom::new(Graph::from_edges(n, &edges).unwrap(), 0).expect("depth-2 trees are atoms")
}

fn random_spec(rng: &mut ChaCha8Rng, ft: &FamilyTree, atom: &Atom) -> Option<JoinSpec> {
    let n = ft.tree().n();
    let x_existing = rng.gen_range(0..n);
    let owner = ft.owner(x_existing).ok()?;
    let i = View::full(ft.tree()).distances(ft.centers()[owner])[x_existing];
    let kinds: Vec<JoinKind> = JoinKind::ALL
        .into_iter()
        .filter(|k| k.pattern().0 == i)
        .collect();
    let kind = *kinds.choose(rng)?;
    let j = kind.pattern().1;
    let d = View::full(atom.tree()).distances(atom.center());
    let ends: Vec<usize> = (0..atom.n()).filter(|&v| d[v] == j).collect();
    let x_new = *ends.choose(rng)?;
    Some(JoinSpec {
        kind,
        x_existing,
        x_new,
    })
}

/// A member of the family with exactly `k` atoms, by rejection sampling over
/// random atoms and joins. Deterministic in `seed`.
pub fn generate_family_member(
    seed: u64,
    k: usize,
    params: &AtomParams,
) -> Result<FamilyTree, FamilyError> {
    let lo = params.min_vertices.max(3);
    let hi = params.max_vertices.max(lo);
    if k == 0 || params.max_total.is_some_and(|t| t < k * lo) {
        return Err(FamilyError::NotAtom(format!(
            "cannot fit {k} atoms of at least {lo} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = |used: usize, left: usize| {
        params
            .max_total
            .map_or(hi, |t| hi.min(t - used - (left - 1) * lo))
    };
    let n0 = rng.gen_range(lo..=budget(0, k));
    let mut ft = FamilyTree::from_atom(random_atom(&mut rng, n0));
    for step in 1..k {
        let cap = budget(ft.tree().n(), k - step);
        let mut placed = false;
        for _ in 0..params.retries {
            let size = rng.gen_range(lo..=cap);
            let atom = random_atom(&mut rng, size);
            let Some(spec) = random_spec(&mut rng, &ft, &atom) else {
                continue;
            };
            if validate_join(&ft, &atom, &spec)?.valid {
                ft = apply_join(&ft, atom, spec)?;
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(FamilyError::RetryBudget {
                placed: step,
                partial: Box::new(ft.certificate().clone()),
            });
        }
    }
    Ok(ft)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::atom_centers;
    use crate::oracles::is_independent_ve_dominating;

    #[test]
    fn single_atom() {
        let ft = generate_family_member(3, 1, &AtomParams::default()).unwrap();
        assert!(ft.certificate().steps.is_empty());
        assert!(super::super::is_atom(ft.tree(), 0));
    }

    #[test]
    fn deterministic_and_sized() {
        let p = AtomParams {
            max_total: Some(20),
            ..AtomParams::default()
        };
        for seed in 0..30 {
            let a = generate_family_member(seed, 4, &p).unwrap();
            let b = generate_family_member(seed, 4, &p).unwrap();
            assert_eq!(a, b);
            assert!(a.tree().n() <= 20);
            assert_eq!(a.certificate().atom_count(), 4);
            let c = atom_centers(a.certificate());
            assert!(is_independent_ve_dominating(a.tree(), &c).unwrap());
            assert_eq!(a.certificate().replay().unwrap(), a);
        }
    }

    #[test]
    fn impossible_size_is_an_error() {
        let p = AtomParams {
            max_total: Some(8),
            ..AtomParams::default()
        };
        assert!(generate_family_member(0, 3, &p).is_err());
    }
}
