//! Small named graphs used by tests, examples and the verification module.

use crate::graph::TannerGraph;

/// Three variables and three checks arranged in a single 6-cycle.
/// The smallest bipartite cycle; every node has degree 2.
pub fn six_ring() -> TannerGraph {
    TannerGraph::from_var_adjacency(3, vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap()
}

/// The (3,3) structure: three degree-3 variables on a 6-cycle, each with one
/// extra private check. Checks 0..3 are the shared (even) ones, 3..6 the
/// private (odd) ones.
pub fn ts33_graph() -> TannerGraph {
    TannerGraph::from_var_adjacency(
        6,
        vec![vec![0, 2, 3], vec![0, 1, 4], vec![1, 2, 5]],
    )
    .unwrap()
}

/// The 5-variable, 9-check core of the (5,3) structure.
///
/// Variables 0..3 each own a consecutive triple of checks; checks 1, 4 and 7
/// are adjacent only to their owner; variable 3 rides the first check of
/// each triple and variable 4 the last. Induced check degrees are six 2s
/// and three 1s.
pub fn ts53_core() -> TannerGraph {
    TannerGraph::from_var_adjacency(
        9,
        vec![
            vec![0, 1, 2],
            vec![3, 4, 5],
            vec![6, 7, 8],
            vec![0, 3, 6],
            vec![2, 5, 8],
        ],
    )
    .unwrap()
}

/// A weight-8 codeword support: 8 variables on the vertices of a cube, one
/// degree-2 check per cube edge. All 12 checks have even induced degree.
pub fn cube_codeword_graph() -> TannerGraph {
    // Cube vertices are 3-bit strings; edges join strings differing in one
    // bit. Check ids are assigned in enumeration order.
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for v in 0..8usize {
        for bit in 0..3 {
            let w = v ^ (1 << bit);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    let mut var_adj = vec![Vec::new(); 8];
    for (c, &(v, w)) in edges.iter().enumerate() {
        var_adj[v].push(c);
        var_adj[w].push(c);
    }
    TannerGraph::from_var_adjacency(edges.len(), var_adj).unwrap()
}

/// Two disjoint copies of [`cube_codeword_graph`] in one graph: 16
/// variables, 24 checks, exactly two weight-8 codeword supports.
pub fn double_cube_graph() -> TannerGraph {
    let one = cube_codeword_graph();
    let mut var_adj = Vec::with_capacity(16);
    for v in 0..8 {
        var_adj.push(one.var_checks(v).to_vec());
    }
    for v in 0..8 {
        var_adj.push(one.var_checks(v).iter().map(|&c| c + 12).collect());
    }
    TannerGraph::from_var_adjacency(24, var_adj).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Girth;

    #[test]
    fn ts53_core_tallies() {
        let g = ts53_core();
        assert_eq!(g.edge_count(), 15);
        let deg2 = (0..9).filter(|&c| g.check_degree(c) == 2).count();
        let deg1 = (0..9).filter(|&c| g.check_degree(c) == 1).count();
        assert_eq!((deg2, deg1), (6, 3));
        assert_eq!(g.girth(), Girth::Finite(8));
    }

    #[test]
    fn cube_is_girth_eight() {
        assert_eq!(cube_codeword_graph().girth(), Girth::Finite(8));
    }
}
