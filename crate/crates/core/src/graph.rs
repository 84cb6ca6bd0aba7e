//! Bipartite Tanner-graph representation used by every other module.
//!
//! A [`TannerGraph`] is immutable once sealed: analyzers and decoders may
//! share one graph across threads freely. Mutation happens only through
//! [`TannerGraphBuilder`], which validates the bipartite invariants when
//! sealing.

use std::collections::VecDeque;

use thiserror::Error;

/// Errors produced while building or validating a Tanner graph.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("variable index {var} out of range (n_vars = {n_vars})")]
    VarOutOfRange { var: usize, n_vars: usize },
    #[error("check index {check} out of range (n_checks = {n_checks})")]
    CheckOutOfRange { check: usize, n_checks: usize },
    #[error("parallel edge between variable {var} and check {check}")]
    ParallelEdge { var: usize, check: usize },
}

/// Girth of a bipartite graph: always even when finite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Girth {
    Finite(usize),
    Acyclic,
}

impl Girth {
    /// True when the girth is at least `g` (forests count as infinite girth).
    pub fn at_least(self, g: usize) -> bool {
        match self {
            Girth::Finite(x) => x >= g,
            Girth::Acyclic => true,
        }
    }
}

impl std::fmt::Display for Girth {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Acyclic => write!(f, "acyclic"),
        }
    }
}

/// Shortest-path distance in edges, or unreachable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distance {
    Finite(usize),
    Unreachable,
}

/// Degree statistics of a graph.
///
/// Degrees are stored as multisets (`(degree, count)` pairs sorted by
/// degree). `column_weight` is present only when every variable has the
/// same degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub var_degrees: Vec<(usize, usize)>,
    pub check_degrees: Vec<(usize, usize)>,
    pub column_weight: Option<usize>,
    pub max_check_degree: usize,
}

impl DegreeProfile {
    /// Total number of edges (sum of either side; they agree by handshake).
    pub fn edge_count(&self) -> usize {
        self.var_degrees.iter().map(|&(d, c)| d * c).sum()
    }
}

/// Immutable bipartite graph of variable and check nodes.
///
/// Adjacency lists are sorted ascending, so structural equality is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TannerGraph {
    n_vars: usize,
    n_checks: usize,
    var_adj: Vec<Vec<usize>>,
    check_adj: Vec<Vec<usize>>,
}

impl TannerGraph {
    /// Builds a graph directly from per-variable adjacency, validating all
    /// invariants.
    pub fn from_var_adjacency(
        n_checks: usize,
        var_adj: Vec<Vec<usize>>,
    ) -> Result<Self, GraphError> {
        let mut b = TannerGraphBuilder::new(var_adj.len(), n_checks);
        for (v, checks) in var_adj.iter().enumerate() {
            for &c in checks {
                b.add_edge(v, c)?;
            }
        }
        b.seal()
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn n_checks(&self) -> usize {
        self.n_checks
    }

    pub fn edge_count(&self) -> usize {
        self.var_adj.iter().map(Vec::len).sum()
    }

    /// Checks adjacent to variable `v`, sorted ascending.
    pub fn var_checks(&self, v: usize) -> &[usize] {
        &self.var_adj[v]
    }

    /// Variables adjacent to check `c`, sorted ascending.
    pub fn check_vars(&self, c: usize) -> &[usize] {
        &self.check_adj[c]
    }

    pub fn var_degree(&self, v: usize) -> usize {
        self.var_adj[v].len()
    }

    pub fn check_degree(&self, c: usize) -> usize {
        self.check_adj[c].len()
    }

    pub fn has_edge(&self, v: usize, c: usize) -> bool {
        self.var_adj[v].binary_search(&c).is_ok()
    }

    /// Exact girth by breadth-first search from every variable node.
    ///
    /// Every cycle in a bipartite graph alternates sides, so searching from
    /// variable roots only is exhaustive. Returns [`Girth::Acyclic`] for
    /// forests.
    pub fn girth(&self) -> Girth {
        girth_of(self.n_vars, &self.var_adj, &self.check_adj)
    }

    /// Shortest path length (in edges) from variable `v` to check `c`.
    /// Finite distances are odd: paths alternate between the two sides.
    pub fn check_distance(&self, v: usize, c: usize) -> Distance {
        assert!(v < self.n_vars && c < self.n_checks, "index out of range");
        let dist = bfs_check_distances(self.n_vars, &self.var_adj, &self.check_adj, v, usize::MAX);
        match dist[c] {
            usize::MAX => Distance::Unreachable,
            d => Distance::Finite(d),
        }
    }

    /// All checks within `depth` edges of variable `v`.
    ///
    /// The progressive-edge-growth candidate set is the complement of this
    /// set in the check population.
    pub fn tree_checks_within(&self, v: usize, depth: usize) -> Vec<usize> {
        assert!(depth >= 1, "depth must be at least 1");
        let dist = bfs_check_distances(self.n_vars, &self.var_adj, &self.check_adj, v, depth);
        (0..self.n_checks).filter(|&c| dist[c] != usize::MAX).collect()
    }

    /// Exact degree multisets for both sides.
    pub fn degree_profile(&self) -> DegreeProfile {
        let tally = |adj: &[Vec<usize>]| {
            let mut counts: Vec<(usize, usize)> = Vec::new();
            let mut degs: Vec<usize> = adj.iter().map(Vec::len).collect();
            degs.sort_unstable();
            for d in degs {
                match counts.last_mut() {
                    Some((deg, n)) if *deg == d => *n += 1,
                    _ => counts.push((d, 1)),
                }
            }
            counts
        };
        let var_degrees = tally(&self.var_adj);
        let check_degrees = tally(&self.check_adj);
        let column_weight = match var_degrees.as_slice() {
            [(d, _)] => Some(*d),
            _ => None,
        };
        let max_check_degree = check_degrees.last().map_or(0, |&(d, _)| d);
        DegreeProfile { var_degrees, check_degrees, column_weight, max_check_degree }
    }

    /// Column weight when the variable side is regular.
    pub fn column_weight(&self) -> Option<usize> {
        let first = self.var_adj.first().map(Vec::len)?;
        self.var_adj.iter().all(|a| a.len() == first).then_some(first)
    }
}

/// Single-owner mutable builder; validates and sorts on [`seal`](Self::seal).
#[derive(Debug, Clone)]
pub struct TannerGraphBuilder {
    n_vars: usize,
    n_checks: usize,
    var_adj: Vec<Vec<usize>>,
}

impl TannerGraphBuilder {
    pub fn new(n_vars: usize, n_checks: usize) -> Self {
        Self { n_vars, n_checks, var_adj: vec![Vec::new(); n_vars] }
    }

    /// Adds the edge `(v, c)`. Range errors are reported immediately;
    /// duplicate detection happens at seal time.
    pub fn add_edge(&mut self, v: usize, c: usize) -> Result<(), GraphError> {
        if v >= self.n_vars {
            return Err(GraphError::VarOutOfRange { var: v, n_vars: self.n_vars });
        }
        if c >= self.n_checks {
            return Err(GraphError::CheckOutOfRange { check: c, n_checks: self.n_checks });
        }
        self.var_adj[v].push(c);
        Ok(())
    }

    /// Sorts adjacency, rejects parallel edges, and produces the immutable
    /// graph together with its mirrored check adjacency.
    pub fn seal(mut self) -> Result<TannerGraph, GraphError> {
        let mut check_adj = vec![Vec::new(); self.n_checks];
        for (v, checks) in self.var_adj.iter_mut().enumerate() {
            checks.sort_unstable();
            for w in checks.windows(2) {
                if w[0] == w[1] {
                    return Err(GraphError::ParallelEdge { var: v, check: w[0] });
                }
            }
            for &c in checks.iter() {
                check_adj[c].push(v);
            }
        }
        // Check side inherits sortedness from the variable loop order.
        Ok(TannerGraph {
            n_vars: self.n_vars,
            n_checks: self.n_checks,
            var_adj: self.var_adj,
            check_adj,
        })
    }
}

/// Unified node id: variables are `0..n_vars`, checks are `n_vars..`.
#[inline]
fn check_node(n_vars: usize, c: usize) -> usize {
    n_vars + c
}

fn neighbors<'a>(
    n_vars: usize,
    var_adj: &'a [Vec<usize>],
    check_adj: &'a [Vec<usize>],
    node: usize,
) -> impl Iterator<Item = usize> + 'a {
    let (list, offset) = if node < n_vars {
        (&var_adj[node], n_vars)
    } else {
        (&check_adj[node - n_vars], 0)
    };
    list.iter().map(move |&x| x + offset)
}

/// BFS distances from variable `v` to every check, capped at `max_depth`.
/// Unreached checks hold `usize::MAX`. Shared with the construction module,
/// which runs on graphs that are still being grown.
pub(crate) fn bfs_check_distances(
    n_vars: usize,
    var_adj: &[Vec<usize>],
    check_adj: &[Vec<usize>],
    v: usize,
    max_depth: usize,
) -> Vec<usize> {
    let n_checks = check_adj.len();
    let total = n_vars + n_checks;
    let mut dist = vec![usize::MAX; total];
    let mut queue = VecDeque::new();
    dist[v] = 0;
    queue.push_back(v);
    while let Some(u) = queue.pop_front() {
        if dist[u] >= max_depth {
            continue;
        }
        for w in neighbors(n_vars, var_adj, check_adj, u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist.split_off(n_vars)
}

/// BFS cycle probe from `root` with parent-edge tracking. A non-tree edge
/// `(u, w)` closes a walk of length `dist(u) + dist(w) + 1` through the
/// root. The reported minimum never undercuts the graph girth, and for a
/// root lying on a shortest cycle it is exact, so taking the minimum over
/// all roots yields the girth. Callers that probe a single root (the
/// construction's per-variable assertion) rely only on the one-sided
/// guarantee: a finite value `<= cap` proves a cycle of at most that length
/// exists somewhere, and any cycle through the root of length `<= cap` is
/// detected.
pub(crate) fn shortest_cycle_through(
    n_vars: usize,
    var_adj: &[Vec<usize>],
    check_adj: &[Vec<usize>],
    root: usize,
    cap: usize,
) -> Option<usize> {
    let total = n_vars + check_adj.len();
    let mut dist = vec![usize::MAX; total];
    let mut parent = vec![usize::MAX; total];
    let mut queue = VecDeque::new();
    dist[root] = 0;
    queue.push_back(root);
    let mut best = usize::MAX;
    while let Some(u) = queue.pop_front() {
        // Nodes beyond half the cap cannot improve on `best`.
        if dist[u].saturating_mul(2) >= best.min(cap + 1) {
            continue;
        }
        for w in neighbors(n_vars, var_adj, check_adj, u) {
            if w == parent[u] {
                continue;
            }
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                queue.push_back(w);
            } else {
                // Walks meeting away from the root stay no shorter than the
                // true cycle through the root, so min-tracking is safe.
                best = best.min(dist[u] + dist[w] + 1);
            }
        }
    }
    (best <= cap).then_some(best)
}

pub(crate) fn girth_of(n_vars: usize, var_adj: &[Vec<usize>], check_adj: &[Vec<usize>]) -> Girth {
    let mut best = usize::MAX;
    for v in 0..n_vars {
        let cap = best.saturating_sub(1);
        if let Some(len) = shortest_cycle_through(n_vars, var_adj, check_adj, v, cap) {
            best = best.min(len);
            if best == 4 {
                break;
            }
        }
    }
    match best {
        usize::MAX => Girth::Acyclic,
        g => Girth::Finite(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn six_ring_girth() {
        let g = fixtures::six_ring();
        assert_eq!(g.girth(), Girth::Finite(6));
    }

    #[test]
    fn star_is_acyclic() {
        let g = TannerGraph::from_var_adjacency(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(g.girth(), Girth::Acyclic);
    }

    #[test]
    fn ts33_girth_is_six() {
        let g = fixtures::ts33_graph();
        assert_eq!(g.girth(), Girth::Finite(6));
    }

    #[test]
    fn check_distance_cases() {
        let g = fixtures::six_ring();
        // v0 is adjacent to c0 and c1; c2 sits across the ring.
        assert_eq!(g.check_distance(0, 0), Distance::Finite(1));
        assert_eq!(g.check_distance(0, 2), Distance::Finite(3));
        let disconnected =
            TannerGraph::from_var_adjacency(2, vec![vec![0], vec![1]]).unwrap();
        assert_eq!(disconnected.check_distance(0, 1), Distance::Unreachable);
    }

    #[test]
    fn tree_checks_within_depths() {
        let g = fixtures::six_ring();
        assert_eq!(g.tree_checks_within(0, 1), vec![0, 1]);
        assert_eq!(g.tree_checks_within(0, 3), vec![0, 1, 2]);
    }

    #[test]
    fn parallel_edge_rejected() {
        let mut b = TannerGraphBuilder::new(1, 2);
        b.add_edge(0, 1).unwrap();
        b.add_edge(0, 1).unwrap();
        assert_eq!(b.seal().unwrap_err(), GraphError::ParallelEdge { var: 0, check: 1 });
    }

    #[test]
    fn degree_profile_regular() {
        let g = fixtures::cube_codeword_graph();
        let p = g.degree_profile();
        assert_eq!(p.column_weight, Some(3));
        assert_eq!(p.check_degrees, vec![(2, 12)]);
        assert_eq!(p.max_check_degree, 2);
        assert_eq!(p.edge_count(), 24);
    }
}
