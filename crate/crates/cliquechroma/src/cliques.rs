//! Maximal-clique machinery: enumeration, the "contains a clique maximal in
//! the whole graph" predicate, clique extension, and non-adjacency-dominating
//! cliques.

use std::ops::ControlFlow;

use crate::bitset::VertexSet;
use crate::budget::{Budget, BudgetMeter};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// True iff all pairs in S are adjacent; sets of size ≤ 1 count as cliques.
pub fn is_clique(g: &Graph, s: &VertexSet) -> bool {
    let size = s.len();
    if size <= 1 {
        return true;
    }
    s.iter()
        .all(|v| s.intersection_len(g.neighbors(v)) == size - 1)
}

/// Per-depth scratch state, reused across siblings so the recursion does not
/// allocate in the steady state.
struct Level {
    p: VertexSet,
    x: VertexSet,
    /// Outside vertices adjacent to every vertex of R, as indices into
    /// `ext_rows`/`ext_cols`.
    ext: VertexSet,
    ext_len: usize,
    cand: Vec<(u32, u32)>,
}

impl Level {
    fn new(u_len: usize, ext_len: usize) -> Self {
        Level {
            p: VertexSet::empty(u_len),
            x: VertexSet::empty(u_len),
            ext: VertexSet::empty(ext_len),
            ext_len: 0,
            cand: Vec::new(),
        }
    }
}

/// Emission callback: the clique in local indices plus the local→global map.
type EmitFn<'a> = &'a mut dyn FnMut(&[usize], &[usize]) -> ControlFlow<()>;

/// Bron–Kerbosch with pivoting over a compacted candidate universe.
///
/// The search enumerates cliques inside `domain` that are maximal in the
/// whole graph: vertices outside `domain` cannot join a clique but do block
/// maximality, tracked per branch as the set of outside vertices adjacent to
/// every chosen vertex. A branch is abandoned as soon as one vertex — outside
/// the domain or already processed — covers the entire candidate set, since
/// nothing below it can be maximal; the cut skips only doomed subtrees, so
/// emission order is unaffected. Pivot rule: candidate with the most
/// neighbors among the candidates, ties to the smallest index; candidates are
/// then branched densest first, so emission order is a pure function of the
/// graph.
struct CliqueSearch<'a, 'g> {
    adj: std::borrow::Cow<'g, [VertexSet]>,
    map: Vec<usize>,
    /// Per outside vertex: its neighbors inside the domain (compacted).
    ext_rows: Vec<VertexSet>,
    /// Per domain vertex: the outside vertices adjacent to it (ext indices).
    ext_cols: Vec<VertexSet>,
    levels: Vec<Level>,
    min_size: usize,
    meter: BudgetMeter,
    callback: EmitFn<'a>,
}

impl<'a, 'g> CliqueSearch<'a, 'g> {
    fn new(
        g: &'g Graph,
        domain: &VertexSet,
        min_size: usize,
        budget: &Budget,
        callback: EmitFn<'a>,
    ) -> Self {
        let n = g.n();
        let u_len = domain.len();
        let full_domain = u_len == n;
        let map: Vec<usize> = domain.iter().collect();
        let mut local_of = Vec::new();
        if !full_domain {
            local_of = vec![u32::MAX; n];
            for (li, &gi) in map.iter().enumerate() {
                local_of[gi] = li as u32;
            }
        }

        let adj: std::borrow::Cow<'g, [VertexSet]> = if full_domain {
            std::borrow::Cow::Borrowed(g.rows())
        } else {
            std::borrow::Cow::Owned(
                map.iter()
                    .map(|&gi| {
                        let mut local = VertexSet::empty(u_len);
                        for gv in g.neighbors(gi).intersection(domain).iter() {
                            local.insert(local_of[gv] as usize);
                        }
                        local
                    })
                    .collect(),
            )
        };

        let mut ext_rows = Vec::new();
        let mut ext_cols = vec![];
        if !full_domain {
            let outside: Vec<usize> = domain.complement().iter().collect();
            ext_cols = vec![VertexSet::empty(outside.len()); u_len];
            ext_rows = outside
                .iter()
                .enumerate()
                .map(|(ei, &gx)| {
                    let mut row = VertexSet::empty(u_len);
                    for gv in g.neighbors(gx).intersection(domain).iter() {
                        let lv = local_of[gv] as usize;
                        row.insert(lv);
                        ext_cols[lv].insert(ei);
                    }
                    row
                })
                .collect();
        }

        CliqueSearch {
            adj,
            map,
            ext_rows,
            ext_cols,
            levels: Vec::new(),
            min_size,
            meter: BudgetMeter::new(budget),
            callback,
        }
    }

    fn run(&mut self) -> Result<ControlFlow<()>> {
        let u_len = self.map.len();
        let ext_len = self.ext_rows.len();
        let mut root = Level::new(u_len, ext_len);
        root.p = VertexSet::full(u_len);
        root.ext = VertexSet::full(ext_len);
        root.ext_len = ext_len;
        self.levels = vec![root];
        let mut r = Vec::new();
        self.node(0, &mut r)
    }

    fn node(&mut self, depth: usize, r: &mut Vec<usize>) -> Result<ControlFlow<()>> {
        self.meter.tick_node()?;

        let level = &self.levels[depth];
        let p_len = level.p.len();
        if p_len == 0 {
            if level.ext_len == 0 && level.x.is_empty() && r.len() >= self.min_size {
                self.meter.tick_clique()?;
                return Ok((self.callback)(r, &self.map));
            }
            return Ok(ControlFlow::Continue(()));
        }
        if r.len() + p_len < self.min_size {
            return Ok(ControlFlow::Continue(()));
        }
        if level.ext_len > 0 && level.ext_len <= 4 * p_len + 64 {
            for e in level.ext.iter() {
                if level.p.is_subset_of(&self.ext_rows[e]) {
                    return Ok(ControlFlow::Continue(()));
                }
            }
        }
        for x in level.x.iter() {
            if level.p.is_subset_of(&self.adj[x]) {
                return Ok(ControlFlow::Continue(()));
            }
        }

        let mut pivot = usize::MAX;
        let mut pivot_score = usize::MAX;
        for u in level.p.iter() {
            let score = p_len - self.adj[u].intersection_len(&level.p);
            if pivot == usize::MAX || score < pivot_score {
                pivot = u;
                pivot_score = score;
            }
        }

        // Branch on dense candidates first: cliques that are maximal in the
        // whole graph sit near the maximum size, so steering the descent
        // toward them finds a witness much sooner.
        let mut cand = std::mem::take(&mut self.levels[depth].cand);
        cand.clear();
        for v in self.levels[depth].p.iter() {
            if !self.adj[pivot].contains(v) {
                let score = self.adj[v].intersection_len(&self.levels[depth].p) as u32;
                cand.push((score, v as u32));
            }
        }
        cand.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        if self.levels.len() == depth + 1 {
            let u_len = self.map.len();
            let ext_len = self.ext_rows.len();
            self.levels.push(Level::new(u_len, ext_len));
        }

        let mut flow = ControlFlow::Continue(());
        for &(_, v) in &cand {
            let v = v as usize;
            {
                let (head, tail) = self.levels.split_at_mut(depth + 1);
                let cur = &head[depth];
                let next = &mut tail[0];
                next.p.clone_from(&cur.p);
                next.p.intersect_with(&self.adj[v]);
                next.x.clone_from(&cur.x);
                next.x.intersect_with(&self.adj[v]);
                if cur.ext_len > 0 {
                    next.ext.clone_from(&cur.ext);
                    next.ext.intersect_with(&self.ext_cols[v]);
                    next.ext_len = next.ext.len();
                } else {
                    next.ext_len = 0;
                }
            }
            r.push(v);
            let child = self.node(depth + 1, r)?;
            r.pop();
            if child.is_break() {
                flow = ControlFlow::Break(());
                break;
            }
            let level = &mut self.levels[depth];
            level.p.remove(v);
            level.x.insert(v);
        }
        self.levels[depth].cand = cand;
        Ok(flow)
    }
}

/// Streams every inclusion-maximal clique of size ≥ `min_size` exactly once,
/// in a deterministic order, stopping early after `limit` emissions or when
/// the callback breaks.
pub fn for_each_maximal_clique<F>(
    g: &Graph,
    min_size: usize,
    limit: Option<usize>,
    budget: &Budget,
    mut f: F,
) -> Result<()>
where
    F: FnMut(&VertexSet) -> ControlFlow<()>,
{
    assert!(min_size >= 1, "min_size must be at least 1");
    if limit == Some(0) {
        return Ok(());
    }
    let domain = VertexSet::full(g.n());
    let n = g.n();
    let mut emitted = 0usize;
    let mut cb = |r: &[usize], map: &[usize]| {
        let clique = VertexSet::from_indices(n, r.iter().map(|&l| map[l]));
        let flow = f(&clique);
        emitted += 1;
        if flow.is_break() || Some(emitted) == limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    };
    let mut search = CliqueSearch::new(g, &domain, min_size, budget, &mut cb);
    let _ = search.run()?;
    Ok(())
}

/// Convenience collector for [`for_each_maximal_clique`].
pub fn maximal_cliques(
    g: &Graph,
    min_size: usize,
    limit: Option<usize>,
    budget: &Budget,
) -> Result<Vec<VertexSet>> {
    let mut out = Vec::new();
    for_each_maximal_clique(g, min_size, limit, budget, |c| {
        out.push(c.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Searches `domain` for a clique of size ≥ `min_size` that is maximal in the
/// whole graph (no vertex anywhere is adjacent to all of it). Returns the
/// first such clique in search order, or None when provably none exists.
pub fn contains_maximal_clique(
    g: &Graph,
    domain: &VertexSet,
    min_size: usize,
    budget: &Budget,
) -> Result<Option<VertexSet>> {
    assert!(min_size >= 1, "min_size must be at least 1");
    if domain.is_empty() {
        return Ok(None);
    }
    let n = g.n();
    let mut found: Option<VertexSet> = None;
    let mut cb = |r: &[usize], map: &[usize]| {
        found = Some(VertexSet::from_indices(n, r.iter().map(|&l| map[l])));
        ControlFlow::Break(())
    };
    let mut search = CliqueSearch::new(g, domain, min_size, budget, &mut cb);
    let _ = search.run()?;
    Ok(found)
}

/// Extends a clique to an inclusion-maximal one. Candidates drawn from
/// `prefer` are exhausted first, then the rest, always smallest index first,
/// so the result is deterministic.
pub fn extend_to_maximal(
    g: &Graph,
    s: &VertexSet,
    prefer: Option<&VertexSet>,
) -> Result<VertexSet> {
    if !is_clique(g, s) {
        return Err(Error::invalid("seed set is not a clique"));
    }
    let mut result = s.clone();
    let mut common = VertexSet::full(g.n());
    for v in s.iter() {
        common.intersect_with(g.neighbors(v));
    }
    loop {
        let pick = prefer
            .and_then(|pf| common.intersection(pf).first())
            .or_else(|| common.first());
        match pick {
            Some(v) => {
                result.insert(v);
                common.intersect_with(g.neighbors(v));
            }
            None => return Ok(result),
        }
    }
}

/// Finds a clique K ⊆ Y with |K| = k such that every vertex outside Y has at
/// least one non-neighbor in K, or proves there is none. Branches prefer
/// vertices non-adjacent to many still-uncovered outside vertices, which is
/// the greedy set-cover order.
pub fn find_dominating_clique(
    g: &Graph,
    y: &VertexSet,
    k: usize,
    budget: &Budget,
) -> Result<Option<VertexSet>> {
    if k == 0 {
        return Err(Error::invalid("clique size k must be at least 1"));
    }
    if k > y.len() {
        return Ok(None);
    }
    let uncovered = y.complement();
    let mut meter = BudgetMeter::new(budget);
    let mut chosen = Vec::with_capacity(k);
    dominate_rec(g, k, y.clone(), uncovered, &mut chosen, &mut meter)
        .map(|opt| opt.map(|vs| VertexSet::from_indices(g.n(), vs)))
}

fn dominate_rec(
    g: &Graph,
    k: usize,
    cand: VertexSet,
    uncovered: VertexSet,
    chosen: &mut Vec<usize>,
    meter: &mut BudgetMeter,
) -> Result<Option<Vec<usize>>> {
    meter.tick_node()?;
    if chosen.len() == k {
        return Ok(uncovered.is_empty().then(|| chosen.clone()));
    }
    if chosen.len() + cand.len() < k {
        return Ok(None);
    }
    // A vertex adjacent to every remaining candidate can never be covered.
    for w in uncovered.iter() {
        if cand.is_subset_of(g.neighbors(w)) {
            return Ok(None);
        }
    }

    let mut order: Vec<(usize, usize)> = cand
        .iter()
        .map(|v| {
            let coverage = uncovered.len() - uncovered.intersection_len(g.neighbors(v));
            (coverage, v)
        })
        .collect();
    order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

    let mut rest = cand;
    for (_, v) in order {
        rest.remove(v);
        let child_cand = rest.intersection(g.neighbors(v));
        let child_uncovered = uncovered.intersection(g.neighbors(v));
        chosen.push(v);
        let hit = dominate_rec(g, k, child_cand, child_uncovered, chosen, meter)?;
        chosen.pop();
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

fn binomial_u128(n: u64, k: u64) -> u128 {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i + 1) as u128;
    }
    acc
}

/// Exact number of k-cliques inside the index prefix `{0,…,m−1}` such that
/// every vertex outside the prefix has a non-neighbor in the clique.
///
/// Exhaustive over k-subsets of the prefix, so the call is rejected when
/// C(m,k) exceeds the node budget.
pub fn count_dominating_cliques(g: &Graph, m: usize, k: usize, budget: &Budget) -> Result<u64> {
    if k < 1 || k > m || m > g.n() {
        return Err(Error::invalid(format!(
            "need 1 ≤ k ≤ m ≤ n, got k={k}, m={m}, n={}",
            g.n()
        )));
    }
    if binomial_u128(m as u64, k as u64) > budget.max_nodes as u128 {
        return Err(Error::budget(format!(
            "C({m},{k}) exceeds the node budget; raise it to enumerate"
        )));
    }
    let prefix = VertexSet::from_indices(g.n(), 0..m);
    let outside = prefix.complement();
    let mut meter = BudgetMeter::new(budget);
    let mut count = 0u64;
    count_rec(g, k, 0, &prefix, &outside, 0, &mut count, &mut meter)?;
    Ok(count)
}

#[allow(clippy::too_many_arguments)]
fn count_rec(
    g: &Graph,
    k: usize,
    depth: usize,
    cand: &VertexSet,
    ext_common: &VertexSet,
    start: usize,
    count: &mut u64,
    meter: &mut BudgetMeter,
) -> Result<()> {
    meter.tick_node()?;
    if depth == k {
        if ext_common.is_empty() {
            *count += 1;
        }
        return Ok(());
    }
    for v in cand.iter() {
        if v < start {
            continue;
        }
        let child_cand = cand.intersection(g.neighbors(v));
        if depth + 1 < k && child_cand.iter().filter(|&w| w > v).count() < k - depth - 1 {
            continue;
        }
        let child_ext = ext_common.intersection(g.neighbors(v));
        count_rec(g, k, depth + 1, &child_cand, &child_ext, v + 1, count, meter)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_random_graph, GenParams};

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn is_clique_examples() {
        let k4 = Graph::complete(4);
        assert!(is_clique(&k4, &VertexSet::from_indices(4, [0, 1, 2])));
        let c5 = Graph::cycle(5);
        assert!(!is_clique(&c5, &VertexSet::from_indices(5, [0, 1, 2])));
        assert!(is_clique(&c5, &VertexSet::from_indices(5, [3])));
        assert!(is_clique(&c5, &VertexSet::empty(5)));
    }

    #[test]
    fn enumerate_complete_graph() {
        let k4 = Graph::complete(4);
        let cliques = maximal_cliques(&k4, 2, None, &budget()).unwrap();
        assert_eq!(cliques.len(), 1);
        assert_eq!(cliques[0].to_vec(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn enumerate_cycle_edges() {
        // C5 is triangle-free, so its maximal cliques are exactly the edges.
        let c5 = Graph::cycle(5);
        let cliques = maximal_cliques(&c5, 2, None, &budget()).unwrap();
        assert_eq!(cliques.len(), 5);
        for c in &cliques {
            assert_eq!(c.len(), 2);
            assert!(is_clique(&c5, c));
        }
    }

    #[test]
    fn enumerate_edgeless_is_empty_at_min_size_two() {
        let g = Graph::edgeless(6);
        assert!(maximal_cliques(&g, 2, None, &budget()).unwrap().is_empty());
        // Isolated vertices are size-1 maximal cliques.
        assert_eq!(maximal_cliques(&g, 1, None, &budget()).unwrap().len(), 6);
    }

    #[test]
    fn enumerate_respects_limit_and_budget() {
        let g = gen_random_graph(&GenParams::new(30, 0.5, 5).unwrap());
        let all = maximal_cliques(&g, 2, None, &budget()).unwrap();
        assert!(all.len() > 3);
        let some = maximal_cliques(&g, 2, Some(3), &budget()).unwrap();
        assert_eq!(some.len(), 3);
        assert_eq!(&all[..3], &some[..]);

        let starved = Budget::default().with_max_nodes(2);
        assert!(matches!(
            maximal_cliques(&g, 2, None, &starved),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn contains_maximal_clique_examples() {
        // Triangle {0,1,2} plus vertex 3 adjacent to 0 and 1.
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]).unwrap();
        let u = VertexSet::from_indices(4, [0, 1, 2]);
        let hit = contains_maximal_clique(&g, &u, 2, &budget()).unwrap().unwrap();
        assert_eq!(hit.to_vec(), vec![0, 1, 2]);

        let u = VertexSet::from_indices(4, [0, 1]);
        assert!(contains_maximal_clique(&g, &u, 2, &budget()).unwrap().is_none());

        // Over the full vertex set the predicate is "has an edge".
        let full = VertexSet::full(4);
        assert!(contains_maximal_clique(&g, &full, 2, &budget()).unwrap().is_some());
        let e3 = Graph::edgeless(3);
        assert!(
            contains_maximal_clique(&e3, &VertexSet::full(3), 2, &budget())
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn extend_to_maximal_examples() {
        let k4 = Graph::complete(4);
        let ext = extend_to_maximal(&k4, &VertexSet::from_indices(4, [0]), None).unwrap();
        assert_eq!(ext.to_vec(), vec![0, 1, 2, 3]);

        let c5 = Graph::cycle(5);
        let ext = extend_to_maximal(&c5, &VertexSet::from_indices(5, [0, 1]), None).unwrap();
        assert_eq!(ext.to_vec(), vec![0, 1]);

        let g = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]).unwrap();
        let prefer = VertexSet::from_indices(4, [2]);
        let ext =
            extend_to_maximal(&g, &VertexSet::from_indices(4, [0, 1]), Some(&prefer)).unwrap();
        assert_eq!(ext.to_vec(), vec![0, 1, 2]);

        assert!(extend_to_maximal(&c5, &VertexSet::from_indices(5, [0, 2]), None).is_err());
    }

    #[test]
    fn find_dominating_clique_examples() {
        let k4 = Graph::complete(4);
        let y = VertexSet::from_indices(4, [0, 1, 2]);
        assert!(find_dominating_clique(&k4, &y, 2, &budget()).unwrap().is_none());

        let c5 = Graph::cycle(5);
        let y = VertexSet::from_indices(5, [0, 1]);
        let hit = find_dominating_clique(&c5, &y, 2, &budget()).unwrap().unwrap();
        assert_eq!(hit.to_vec(), vec![0, 1]);

        assert!(find_dominating_clique(&c5, &y, 3, &budget()).unwrap().is_none());
    }

    #[test]
    fn count_dominating_cliques_examples() {
        let k5 = Graph::complete(5);
        assert_eq!(count_dominating_cliques(&k5, 4, 2, &budget()).unwrap(), 0);

        let e3 = Graph::edgeless(3);
        assert_eq!(count_dominating_cliques(&e3, 2, 1, &budget()).unwrap(), 2);

        assert!(count_dominating_cliques(&e3, 2, 3, &budget()).is_err());
        let tiny = Budget::default().with_max_nodes(3);
        assert!(matches!(
            count_dominating_cliques(&Graph::complete(30), 20, 10, &tiny),
            Err(Error::Budget(_))
        ));
    }
}
