//! Shared test oracles, independent of the library's search engine.

use cliquechroma::graph::Graph;

/// Exhaustive maximal-clique listing by definition: sweep all 2^n subsets.
#[allow(dead_code)]
pub fn maximal_cliques_by_sweep(g: &Graph, min_size: usize) -> Vec<u32> {
    let n = g.n();
    assert!(n <= 16);
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, u| m | (1 << u)))
        .collect();
    let full = (1u32 << n) - 1;
    let mut out = Vec::new();
    for mask in 1u32..=full {
        if (mask.count_ones() as usize) < min_size {
            continue;
        }
        let clique = (0..n)
            .filter(|&v| mask >> v & 1 == 1)
            .all(|v| mask & !adj[v] == 1 << v);
        if !clique {
            continue;
        }
        let maximal = (0..n)
            .filter(|&u| mask >> u & 1 == 0)
            .all(|u| mask & !adj[u] != 0);
        if maximal {
            out.push(mask);
        }
    }
    out
}

/// Minimum proper-coloring palette by restricted-growth search.
#[allow(dead_code)]
pub fn brute_force_chromatic(g: &Graph) -> u32 {
    fn rec(g: &Graph, v: usize, max_used: u32, colors: &mut Vec<u32>, best: &mut u32) {
        if max_used + 1 >= *best {
            return;
        }
        if v == g.n() {
            *best = max_used + 1;
            return;
        }
        for c in 0..=max_used + 1 {
            if (0..v).all(|u| !(g.has_edge(u, v) && colors[u] == c)) {
                colors[v] = c;
                rec(g, v + 1, max_used.max(c), colors, best);
            }
        }
    }
    let n = g.n();
    assert!(n >= 1);
    let mut colors = vec![0u32; n];
    let mut best = n as u32;
    rec(g, 1, 0, &mut colors, &mut best);
    best
}

/// Outer 5-cycle, inner 5-cycle on every second vertex, spokes between them.
#[allow(dead_code)]
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, edges).unwrap()
}

/// Graph on 6 vertices decoded from a 15-bit edge mask, pairs in
/// lexicographic order.
#[allow(dead_code)]
pub fn graph6_from_mask(mask: u32) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..6usize {
        for v in (u + 1)..6 {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::from_edges(6, edges).unwrap()
}
