//! Exact vertex coloring of small simple graphs.

use thiserror::Error;

/// Default vertex cap for the exact search.
pub const DEFAULT_VERTEX_CAP: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("graph has {vertices} vertices, above the cap of {cap}")]
    VertexBudget { vertices: usize, cap: usize },
}

/// Undirected simple graph on at most 64 vertices, adjacency as bitsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<u64>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        assert!(n <= 64, "SimpleGraph supports at most 64 vertices");
        SimpleGraph { adj: vec![0; n] }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b {
            self.adj[a] |= 1 << b;
            self.adj[b] |= 1 << a;
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Proper coloring check.
    pub fn is_proper_coloring(&self, colors: &[usize]) -> bool {
        colors.len() == self.adj.len()
            && (0..self.adj.len()).all(|v| (0..v).all(|u| !self.has_edge(u, v) || colors[u] != colors[v]))
    }

    /// Size of a maximum clique.
    pub fn clique_number(&self) -> usize {
        let all = if self.adj.len() == 64 { u64::MAX } else { (1u64 << self.adj.len()) - 1 };
        let mut best = 0;
        self.expand_clique(0, all, &mut best);
        best
    }

    fn expand_clique(&self, size: usize, mut candidates: u64, best: &mut usize) {
        if candidates == 0 {
            *best = (*best).max(size);
            return;
        }
        while candidates != 0 {
            if size + candidates.count_ones() as usize <= *best {
                return;
            }
            let v = candidates.trailing_zeros() as usize;
            candidates &= !(1 << v);
            self.expand_clique(size + 1, candidates & self.adj[v], best);
        }
    }

    /// DSATUR greedy coloring; an upper bound on the chromatic number.
    pub fn greedy_coloring(&self) -> Vec<usize> {
        let n = self.adj.len();
        let mut colors = vec![usize::MAX; n];
        for _ in 0..n {
            let v = self.most_saturated(&colors);
            let used = self.neighbor_colors(v, &colors);
            colors[v] = (0..).find(|c| used >> c & 1 == 0).unwrap();
        }
        colors
    }

    fn neighbor_colors(&self, v: usize, colors: &[usize]) -> u64 {
        let mut used = 0u64;
        let mut nb = self.adj[v];
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if colors[u] != usize::MAX {
                used |= 1 << colors[u];
            }
        }
        used
    }

    // uncolored vertex with the most distinct neighbor colors, ties by degree
    // then lowest index
    fn most_saturated(&self, colors: &[usize]) -> usize {
        (0..self.adj.len())
            .filter(|&v| colors[v] == usize::MAX)
            .max_by_key(|&v| {
                (self.neighbor_colors(v, colors).count_ones(), self.adj[v].count_ones(), std::cmp::Reverse(v))
            })
            .expect("an uncolored vertex remains")
    }

    fn try_color(&self, k: usize, colors: &mut [usize], remaining: usize) -> bool {
        if remaining == 0 {
            return true;
        }
        let v = self.most_saturated(colors);
        let used = self.neighbor_colors(v, colors);
        // symmetry breaking: at most one fresh color per step
        let highest = colors.iter().filter(|&&c| c != usize::MAX).max().map_or(0, |&c| c + 1);
        for c in 0..k.min(highest + 1) {
            if used >> c & 1 == 0 {
                colors[v] = c;
                if self.try_color(k, colors, remaining - 1) {
                    return true;
                }
            }
        }
        colors[v] = usize::MAX;
        false
    }

    /// A proper coloring with at most `k` colors, if one exists.
    pub fn k_coloring(&self, k: usize) -> Option<Vec<usize>> {
        let mut colors = vec![usize::MAX; self.adj.len()];
        self.try_color(k, &mut colors, self.adj.len()).then_some(colors)
    }
}

/// Exact chromatic number with a witness coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub chromatic_number: usize,
    pub clique_number: usize,
    pub colors: Vec<usize>,
}

/// Branch and bound between the clique lower bound and the DSATUR upper bound.
pub fn chromatic_number(graph: &SimpleGraph, vertex_cap: usize) -> Result<Coloring, ColoringError> {
    let n = graph.num_vertices();
    if n > vertex_cap {
        return Err(ColoringError::VertexBudget { vertices: n, cap: vertex_cap });
    }
    let clique_number = graph.clique_number();
    let mut best = graph.greedy_coloring();
    let mut upper = best.iter().max().map_or(0, |&c| c + 1);
    while upper > clique_number {
        match graph.k_coloring(upper - 1) {
            Some(colors) => {
                best = colors;
                upper -= 1;
            }
            None => break,
        }
    }
    Ok(Coloring { chromatic_number: upper, clique_number, colors: best })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn complete(n: usize) -> SimpleGraph {
        let mut g = SimpleGraph::new(n);
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b);
            }
        }
        g
    }

    fn cycle(n: usize) -> SimpleGraph {
        let mut g = SimpleGraph::new(n);
        for a in 0..n {
            g.add_edge(a, (a + 1) % n);
        }
        g
    }

    #[test]
    fn cliques() {
        let c = chromatic_number(&complete(4), DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(c.chromatic_number, 4);
        assert_eq!(c.clique_number, 4);
    }

    #[test]
    fn disjoint_triangles() {
        let mut g = SimpleGraph::new(6);
        for (a, b) in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)] {
            g.add_edge(a, b);
        }
        assert_eq!(chromatic_number(&g, DEFAULT_VERTEX_CAP).unwrap().chromatic_number, 3);
    }

    #[test]
    fn odd_cycle_exceeds_clique() {
        let c = chromatic_number(&cycle(5), DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(c.clique_number, 2);
        assert_eq!(c.chromatic_number, 3);
        assert_eq!(chromatic_number(&cycle(6), DEFAULT_VERTEX_CAP).unwrap().chromatic_number, 2);
    }

    #[test]
    fn petersen_graph() {
        let mut g = SimpleGraph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        assert_eq!(chromatic_number(&g, DEFAULT_VERTEX_CAP).unwrap().chromatic_number, 3);
    }

    #[test]
    fn budget() {
        let g = SimpleGraph::new(31);
        assert_eq!(
            chromatic_number(&g, DEFAULT_VERTEX_CAP),
            Err(ColoringError::VertexBudget { vertices: 31, cap: 30 })
        );
        assert_eq!(chromatic_number(&g, 40).unwrap().chromatic_number, 1);
        assert_eq!(chromatic_number(&SimpleGraph::new(0), 30).unwrap().chromatic_number, 0);
    }

    // brute force over all colorings with k colors
    fn colorable_brute(g: &SimpleGraph, k: usize) -> bool {
        let n = g.num_vertices();
        let total = k.pow(n as u32);
        (0..total).any(|mut code| {
            let colors: Vec<usize> = (0..n)
                .map(|_| {
                    let c = code % k;
                    code /= k;
                    c
                })
                .collect();
            g.is_proper_coloring(&colors)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn matches_brute_force(n in 1usize..7, edges in proptest::collection::vec((0usize..7, 0usize..7), 0..15)) {
            let mut g = SimpleGraph::new(n);
            for (a, b) in edges {
                if a < n && b < n {
                    g.add_edge(a, b);
                }
            }
            let c = chromatic_number(&g, DEFAULT_VERTEX_CAP).unwrap();
            prop_assert!(g.is_proper_coloring(&c.colors));
            prop_assert!(c.colors.iter().all(|&x| x < c.chromatic_number));
            prop_assert!(colorable_brute(&g, c.chromatic_number));
            prop_assert!(c.chromatic_number == 1 || !colorable_brute(&g, c.chromatic_number - 1));
            prop_assert!(c.chromatic_number >= c.clique_number);
        }
    }
}
