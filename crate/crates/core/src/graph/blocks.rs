use super::Graph;

/// Biconnected decomposition.
///
/// Blocks are numbered in the order the depth-first search closes them. An
/// isolated vertex forms a block of its own with no edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Sorted vertex set of each block.
    pub blocks: Vec<Vec<usize>>,
    /// Edge ids of each block.
    pub block_edges: Vec<Vec<usize>>,
    /// Owning block of every edge.
    pub edge_block: Vec<usize>,
    /// Blocks containing each vertex, ascending.
    pub vertex_blocks: Vec<Vec<usize>>,
    pub cut_vertices: Vec<usize>,
    pub is_cut: Vec<bool>,
}

impl BlockDecomposition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn cut_count(&self, block: usize) -> usize {
        self.blocks[block]
            .iter()
            .filter(|&&v| self.is_cut[v])
            .count()
    }

    /// A block holding exactly one cut vertex.
    pub fn is_end_block(&self, block: usize) -> bool {
        self.cut_count(block) == 1
    }

    /// Blocks adjacent to `block` through a shared cut vertex, with that vertex.
    pub fn adjacent_blocks(&self, block: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &v in &self.blocks[block] {
            if self.is_cut[v] {
                out.extend(
                    self.vertex_blocks[v]
                        .iter()
                        .filter(|&&b| b != block)
                        .map(|&b| (b, v)),
                );
            }
        }
        out
    }
}

/// Hopcroft–Tarjan with an explicit stack, `O(n + m)`. Components are handled
/// independently; a cut vertex is any vertex lying in two or more blocks.
pub fn blocks_and_cut_vertices(g: &Graph) -> BlockDecomposition {
    let n = g.n();
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut edge_block = vec![usize::MAX; g.m()];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_edges: Vec<Vec<usize>> = Vec::new();
    // (vertex, edge to parent, next adjacency index)
    let mut frames: Vec<(usize, usize, usize)> = Vec::new();
    let mut mark = vec![usize::MAX; n];

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        if g.degree(root) == 0 {
            blocks.push(vec![root]);
            block_edges.push(Vec::new());
            continue;
        }
        frames.push((root, usize::MAX, 0));
        while let Some(&mut (v, parent_edge, ref mut next)) = frames.last_mut() {
            if *next < g.degree(v) {
                let (w, e) = g.incident(v)[*next];
                *next += 1;
                if e == parent_edge {
                    continue;
                }
                if disc[w] == UNSEEN {
                    edge_stack.push(e);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    frames.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            frames.pop();
            let Some(&(u, _, _)) = frames.last() else {
                continue;
            };
            low[u] = low[u].min(low[v]);
            if low[v] >= disc[u] {
                let id = blocks.len();
                let mut verts = Vec::new();
                let mut es = Vec::new();
                loop {
                    let e = edge_stack.pop().expect("edge stack underflow");
                    edge_block[e] = id;
                    es.push(e);
                    let (a, b) = g.edge(e);
                    for x in [a, b] {
                        if mark[x] != id {
                            mark[x] = id;
                            verts.push(x);
                        }
                    }
                    if e == parent_edge {
                        break;
                    }
                }
                verts.sort_unstable();
                es.sort_unstable();
                blocks.push(verts);
                block_edges.push(es);
            }
        }
    }

    let mut vertex_blocks = vec![Vec::new(); n];
    for (b, verts) in blocks.iter().enumerate() {
        for &v in verts {
            vertex_blocks[v].push(b);
        }
    }
    let is_cut: Vec<bool> = vertex_blocks.iter().map(|bs| bs.len() >= 2).collect();
    let cut_vertices = (0..n).filter(|&v| is_cut[v]).collect();
    BlockDecomposition {
        blocks,
        block_edges,
        edge_block,
        vertex_blocks,
        cut_vertices,
        is_cut,
    }
}

/// True iff every block induces a clique.
pub fn is_block_graph(g: &Graph) -> bool {
    is_block_graph_with(&blocks_and_cut_vertices(g))
}

pub(crate) fn is_block_graph_with(dec: &BlockDecomposition) -> bool {
    dec.blocks
        .iter()
        .zip(&dec.block_edges)
        .all(|(vs, es)| es.len() == vs.len() * (vs.len() - 1) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowtie() -> Graph {
        // two triangles sharing vertex 2
        Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn tree_blocks_are_edges() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)]).unwrap();
        let d = blocks_and_cut_vertices(&g);
        assert_eq!(d.len(), 5);
        assert!(d.blocks.iter().all(|b| b.len() == 2));
        assert_eq!(d.cut_vertices, vec![1, 3, 4]);
        assert!(is_block_graph(&g));
    }

    #[test]
    fn clique_is_one_block() {
        let d = blocks_and_cut_vertices(&Graph::complete(4));
        assert_eq!(d.blocks, vec![vec![0, 1, 2, 3]]);
        assert!(d.cut_vertices.is_empty());
    }

    #[test]
    fn bowtie_has_one_cut_vertex() {
        let g = bowtie();
        let d = blocks_and_cut_vertices(&g);
        assert_eq!(d.len(), 2);
        assert_eq!(d.cut_vertices, vec![2]);
        assert!(d.is_end_block(0) && d.is_end_block(1));
        assert!(is_block_graph(&g));
    }

    #[test]
    fn cycle_is_not_block_graph() {
        assert!(!is_block_graph(&Graph::cycle(4)));
        assert!(is_block_graph(&Graph::cycle(3)));
    }

    #[test]
    fn isolated_vertices_form_singleton_blocks() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let d = blocks_and_cut_vertices(&g);
        assert_eq!(d.blocks, vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn every_edge_in_exactly_one_block() {
        let g = Graph::from_edges(
            7,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 3),
                (5, 6),
                (1, 3),
            ],
        )
        .unwrap();
        let d = blocks_and_cut_vertices(&g);
        let total: usize = d.block_edges.iter().map(Vec::len).sum();
        assert_eq!(total, g.m());
        assert!(d.edge_block.iter().all(|&b| b < d.len()));
        assert_eq!(d.cut_vertices, vec![3, 5]);
        assert_eq!(
            d.blocks[d.edge_block[g.edge_id(1, 3).unwrap()]],
            vec![0, 1, 2, 3]
        );
    }
}
