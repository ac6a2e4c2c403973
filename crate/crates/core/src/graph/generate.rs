use super::{Graph, GraphError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Shape of the random block graphs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlockGraphParams {
    /// Smallest block, counting the attachment vertex. At least 2.
    pub min_block: usize,
    /// Largest block, counting the attachment vertex.
    pub max_block: usize,
    /// Probability of attaching the next block at the newest vertex instead
    /// of a uniformly random one. Higher values give deeper block trees.
    pub depth_bias: f64,
}

impl Default for BlockGraphParams {
    fn default() -> Self {
        BlockGraphParams {
            min_block: 2,
            max_block: 5,
            depth_bias: 0.3,
        }
    }
}

/// A connected block graph on exactly `n` vertices, deterministic in `seed`.
///
/// Grows a block-cut skeleton: each round picks an existing vertex and glues
/// a fresh clique of sampled size onto it. The final clique is truncated to
/// hit `n` exactly.
pub fn random_block_graph(
    n: usize,
    seed: u64,
    params: &BlockGraphParams,
) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InfeasibleParams("n must be positive".into()));
    }
    if params.min_block < 2 || params.min_block > params.max_block {
        return Err(GraphError::InfeasibleParams(format!(
            "block sizes {}..={}",
            params.min_block, params.max_block
        )));
    }
    if !(0.0..=1.0).contains(&params.depth_bias) {
        return Err(GraphError::InfeasibleParams(
            "depth_bias outside [0, 1]".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    let mut count = 1usize;
    while count < n {
        let anchor = if rng.gen_bool(params.depth_bias) {
            count - 1
        } else {
            rng.gen_range(0..count)
        };
        let size = rng.gen_range(params.min_block..=params.max_block);
        let fresh = (size - 1).min(n - count);
        let members: Vec<usize> = std::iter::once(anchor)
            .chain(count..count + fresh)
            .collect();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                edges.push((u, v));
            }
        }
        count += fresh;
    }
    Ok(Graph::from_edges(n, &edges).expect("generator produces simple graphs"))
}

/// A uniformly random labeled tree on `n` vertices via a random Prüfer
/// sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InfeasibleParams("n must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq: Vec<usize> = (0..n.saturating_sub(2))
        .map(|_| rng.gen_range(0..n))
        .collect();
    Ok(super::trees::decode_prufer(n, &seq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_block_graph;

    #[test]
    fn random_trees() {
        for n in 1..30 {
            let t = random_tree(n, n as u64).unwrap();
            assert!(t.is_tree() && t.n() == n);
            assert_eq!(t, random_tree(n, n as u64).unwrap());
        }
        assert!(random_tree(0, 1).is_err());
    }

    #[test]
    fn single_vertex() {
        let g = random_block_graph(1, 3, &BlockGraphParams::default()).unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
    }

    #[test]
    fn deterministic_per_seed() {
        let p = BlockGraphParams::default();
        assert_eq!(
            random_block_graph(40, 11, &p).unwrap(),
            random_block_graph(40, 11, &p).unwrap()
        );
        assert_ne!(
            random_block_graph(40, 11, &p).unwrap(),
            random_block_graph(40, 12, &p).unwrap()
        );
    }

    #[test]
    fn outputs_are_connected_block_graphs() {
        let p = BlockGraphParams {
            min_block: 2,
            max_block: 6,
            depth_bias: 0.5,
        };
        for seed in 0..50 {
            let g = random_block_graph(30, seed, &p).unwrap();
            assert_eq!(g.n(), 30);
            assert!(g.is_connected());
            assert!(is_block_graph(&g));
        }
    }

    #[test]
    fn rejects_bad_params() {
        let bad = BlockGraphParams {
            min_block: 1,
            ..Default::default()
        };
        assert!(random_block_graph(5, 0, &bad).is_err());
        let bad = BlockGraphParams {
            min_block: 4,
            max_block: 3,
            ..Default::default()
        };
        assert!(random_block_graph(5, 0, &bad).is_err());
        assert!(random_block_graph(0, 0, &BlockGraphParams::default()).is_err());
    }
}
