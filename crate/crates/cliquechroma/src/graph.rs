use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Undirected simple graph on vertices `{0, …, n−1}` with one neighbor
/// bitset per vertex. Symmetry and absence of self-loops are maintained by
/// construction; instances are immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<VertexSet>,
}

impl Graph {
    pub fn edgeless(n: usize) -> Self {
        Graph {
            n,
            rows: (0..n).map(|_| VertexSet::empty(n)).collect(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::edgeless(n);
        for v in 0..n {
            let mut row = VertexSet::full(n);
            row.remove(v);
            g.rows[v] = row;
        }
        g
    }

    /// Cycle 0−1−…−(n−1)−0. Requires n ≥ 3.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle requires at least 3 vertices");
        let mut g = Graph::edgeless(n);
        for v in 0..n {
            g.add_edge_unchecked(v, (v + 1) % n);
        }
        g
    }

    /// Path 0−1−…−(n−1).
    pub fn path(n: usize) -> Self {
        let mut g = Graph::edgeless(n);
        for v in 1..n {
            g.add_edge_unchecked(v - 1, v);
        }
        g
    }

    /// Builds a graph from an edge list. Out-of-range endpoints and self-loops
    /// are rejected; duplicate edges are idempotent.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::edgeless(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            g.add_edge_unchecked(u, v);
        }
        Ok(g)
    }

    pub(crate) fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    #[inline]
    pub(crate) fn rows(&self) -> &[VertexSet] {
        &self.rows
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    /// Edges as (u, v) pairs with u < v, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.rows[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count())
    }
}

/// Parameters for sampling a binomial random graph.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct GenParams {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl GenParams {
    pub fn new(n: usize, p: f64, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("vertex count must be at least 1"));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::invalid(format!(
                "edge probability must lie in [0,1], got {p}"
            )));
        }
        Ok(GenParams { n, p, seed })
    }
}

/// Samples a graph where each pair is an edge independently with probability p.
///
/// Pairs (i, j), i < j, are visited in lexicographic order and one SplitMix64
/// word is drawn per pair whatever the outcome, so the stream position does
/// not depend on p. The edge is present iff the word is below ⌊p·2⁶⁴⌋, with
/// p = 1 special-cased to "always present". Equal parameters therefore yield
/// bit-identical graphs on every platform.
pub fn gen_random_graph(params: &GenParams) -> Graph {
    let n = params.n;
    let mut g = Graph::edgeless(n);
    let mut rng = SplitMix64::new(params.seed);
    let always = params.p == 1.0;
    let threshold = if always {
        u64::MAX
    } else {
        // Exact for p = m/2^53: the product just shifts the exponent.
        (params.p * 18_446_744_073_709_551_616.0) as u64
    };
    for i in 0..n {
        for j in (i + 1)..n {
            let word = rng.next_u64();
            if always || word < threshold {
                g.add_edge_unchecked(i, j);
            }
        }
    }
    g
}

/// Common non-neighborhood of a list of vertices, the listed vertices
/// excluded. The empty list yields the full vertex set.
pub fn non_neighbors(g: &Graph, vs: &[usize]) -> Result<VertexSet> {
    let mut seen = VertexSet::empty(g.n());
    let mut out = VertexSet::full(g.n());
    for &v in vs {
        if v >= g.n() {
            return Err(Error::invalid(format!(
                "vertex {v} out of range for n={}",
                g.n()
            )));
        }
        if seen.contains(v) {
            return Err(Error::invalid(format!("duplicate vertex {v}")));
        }
        seen.insert(v);
        out.subtract(g.neighbors(v));
        out.remove(v);
    }
    Ok(out)
}

/// Non-neighbors of v inside U, v itself excluded even when v ∈ U.
pub fn non_neighbors_in(g: &Graph, v: usize, u: &VertexSet) -> Result<VertexSet> {
    if v >= g.n() {
        return Err(Error::invalid(format!(
            "vertex {v} out of range for n={}",
            g.n()
        )));
    }
    let mut out = u.clone();
    out.subtract(g.neighbors(v));
    out.remove(v);
    Ok(out)
}

/// Subgraph induced on U, plus the map from new indices back to the
/// originals (`map[new] = old`).
pub fn induced_subgraph(g: &Graph, u: &VertexSet) -> Result<(Graph, Vec<usize>)> {
    if u.is_empty() {
        return Err(Error::invalid("induced subgraph of the empty set"));
    }
    let map: Vec<usize> = u.iter().collect();
    let mut sub = Graph::edgeless(map.len());
    for (li, &gi) in map.iter().enumerate() {
        for (lj, &gj) in map.iter().enumerate().skip(li + 1) {
            if g.has_edge(gi, gj) {
                sub.add_edge_unchecked(li, lj);
            }
        }
    }
    Ok((sub, map))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gen_extreme_probabilities() {
        let empty = gen_random_graph(&GenParams::new(5, 0.0, 7).unwrap());
        assert_eq!(empty.edge_count(), 0);
        let complete = gen_random_graph(&GenParams::new(5, 1.0, 7).unwrap());
        assert_eq!(complete.edge_count(), 10);
        assert_eq!(complete, Graph::complete(5));
    }

    #[test]
    fn gen_edge_count_in_binomial_band() {
        // n=1000, p=1/2: mean C(1000,2)/2 = 249750, 3σ ≈ 1060.
        let g = gen_random_graph(&GenParams::new(1000, 0.5, 42).unwrap());
        let m = g.edge_count() as f64;
        assert!((m - 249_750.0).abs() <= 1060.0, "edge count {m} outside 3σ");
    }

    #[test]
    fn gen_is_deterministic() {
        let p = GenParams::new(64, 0.37, 99).unwrap();
        assert_eq!(gen_random_graph(&p), gen_random_graph(&p));
    }

    #[test]
    fn gen_params_validation() {
        assert!(GenParams::new(0, 0.5, 1).is_err());
        assert!(GenParams::new(5, -0.1, 1).is_err());
        assert!(GenParams::new(5, 1.5, 1).is_err());
    }

    #[test]
    fn non_neighbors_examples() {
        let k4 = Graph::complete(4);
        assert!(non_neighbors(&k4, &[0]).unwrap().is_empty());

        let g = Graph::cycle(5);
        assert_eq!(non_neighbors(&g, &[]).unwrap().len(), 5);
        assert_eq!(non_neighbors(&g, &[0, 1]).unwrap().to_vec(), vec![3]);
    }

    #[test]
    fn non_neighbors_rejects_bad_input() {
        let g = Graph::cycle(5);
        assert!(matches!(
            non_neighbors(&g, &[0, 0]),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            non_neighbors(&g, &[5]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn non_neighbors_in_examples() {
        let k4 = Graph::complete(4);
        let u = VertexSet::from_indices(4, [1, 2, 3]);
        assert!(non_neighbors_in(&k4, 0, &u).unwrap().is_empty());

        let e4 = Graph::edgeless(4);
        let u = VertexSet::from_indices(4, [0, 1, 2]);
        assert_eq!(non_neighbors_in(&e4, 0, &u).unwrap().to_vec(), vec![1, 2]);

        let c5 = Graph::cycle(5);
        let u = VertexSet::from_indices(5, [0, 1, 2]);
        assert_eq!(non_neighbors_in(&c5, 3, &u).unwrap().to_vec(), vec![0, 1]);
    }

    #[test]
    fn induced_subgraph_examples() {
        let k4 = Graph::complete(4);
        let (sub, map) = induced_subgraph(&k4, &VertexSet::from_indices(4, [0, 1, 2])).unwrap();
        assert_eq!(sub, Graph::complete(3));
        assert_eq!(map, vec![0, 1, 2]);

        let c5 = Graph::cycle(5);
        let (sub, _) = induced_subgraph(&c5, &VertexSet::from_indices(5, [0, 1, 2])).unwrap();
        assert_eq!(sub, Graph::path(3));

        let (iso, map) = induced_subgraph(&c5, &VertexSet::full(5)).unwrap();
        assert_eq!(iso, c5);
        assert_eq!(map, vec![0, 1, 2, 3, 4]);

        assert!(induced_subgraph(&c5, &VertexSet::empty(5)).is_err());
    }
}
