//! Clique colorings: validity checking, the greedy pivot algorithm, exact and
//! brute-force solvers for the clique chromatic number, and the adversarial
//! audit that tries to corner a coloring into a monochromatic maximal clique.

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::budget::{Budget, BudgetMeter};
use crate::cliques::{contains_maximal_clique, maximal_cliques};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Total color assignment with a dense palette: every color id is below
/// `palette` and every id in `0..palette` occurs at least once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    colors: Vec<u32>,
    palette: u32,
}

impl Coloring {
    /// Builds a coloring, requiring the palette to be dense.
    pub fn from_colors(colors: Vec<u32>) -> Result<Self> {
        let palette = colors.iter().copied().max().map_or(0, |m| m + 1);
        let mut used = vec![false; palette as usize];
        for &c in &colors {
            used[c as usize] = true;
        }
        if let Some(missing) = used.iter().position(|&u| !u) {
            return Err(Error::invalid(format!(
                "color {missing} is below the palette maximum but never used"
            )));
        }
        Ok(Coloring { colors, palette })
    }

    /// Builds a coloring from an arbitrary assignment by remapping the color
    /// ids in use onto `0..palette`, in ascending order of the original ids.
    pub fn compacted(raw: Vec<u32>) -> Self {
        let mut used: Vec<u32> = raw.clone();
        used.sort_unstable();
        used.dedup();
        let remap = |c: u32| used.binary_search(&c).unwrap() as u32;
        let colors: Vec<u32> = raw.iter().map(|&c| remap(c)).collect();
        Coloring {
            palette: used.len() as u32,
            colors,
        }
    }

    /// The all-one-color assignment.
    pub fn monochrome(n: usize) -> Self {
        assert!(n >= 1);
        Coloring {
            colors: vec![0; n],
            palette: 1,
        }
    }

    #[inline]
    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    #[inline]
    pub fn palette(&self) -> u32 {
        self.palette
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Vertices carrying color `t`.
    pub fn class(&self, t: u32) -> VertexSet {
        VertexSet::from_indices(
            self.colors.len(),
            self.colors
                .iter()
                .enumerate()
                .filter(|(_, &c)| c == t)
                .map(|(v, _)| v),
        )
    }

    pub fn classes(&self) -> Vec<VertexSet> {
        let mut out = vec![VertexSet::empty(self.colors.len()); self.palette as usize];
        for (v, &c) in self.colors.iter().enumerate() {
            out[c as usize].insert(v);
        }
        out
    }
}

/// Result of checking a coloring: either no monochromatic maximal clique
/// exists, or one is returned as a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum VerifyOutcome {
    Valid,
    Violation(VertexSet),
}

impl VerifyOutcome {
    pub fn is_valid(&self) -> bool {
        matches!(self, VerifyOutcome::Valid)
    }
}

/// Checks that no maximal clique of size ≥ `min_size` is monochromatic.
///
/// A monochromatic clique lies inside a single color class, so it suffices to
/// search each class for a clique that is maximal in the whole graph; classes
/// are scanned in ascending color order and the first hit is the certificate.
pub fn verify_clique_coloring(
    g: &Graph,
    c: &Coloring,
    min_size: usize,
    budget: &Budget,
) -> Result<VerifyOutcome> {
    if c.len() != g.n() {
        return Err(Error::invalid(format!(
            "coloring covers {} vertices, graph has {}",
            c.len(),
            g.n()
        )));
    }
    for class in c.classes() {
        if let Some(cert) = contains_maximal_clique(g, &class, min_size, budget)? {
            return Ok(VerifyOutcome::Violation(cert));
        }
    }
    Ok(VerifyOutcome::Valid)
}

/// Counters reported by the greedy coloring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GreedyStats {
    /// Pivot steps executed before the uncolored set became clique-free.
    pub pivot_steps: usize,
    /// Uncolored non-pivots remaining at the stop (the common non-neighbors
    /// of all pivots).
    pub remainder_size: usize,
    /// Whether the two leftover classes were merged into one.
    pub merged: bool,
}

/// The greedy clique coloring.
///
/// Before every step the uncolored set is tested for a clique that is maximal
/// in the whole graph; while one exists, the next pivot in `order` assigns a
/// fresh color to all its currently uncolored neighbors. At the stop the
/// uncolored pivots (an independent set) get one extra color and the
/// remaining uncolored vertices another, and the two classes are merged when
/// the union itself passes the clique-free test. Color ids are compacted, so
/// pivots whose class came up empty do not widen the palette.
pub fn greedy_clique_coloring(
    g: &Graph,
    order: Option<&[usize]>,
    min_size: usize,
    budget: &Budget,
) -> Result<(Coloring, GreedyStats)> {
    let n = g.n();
    if n == 0 {
        return Err(Error::invalid("graph has no vertices"));
    }
    let default_order: Vec<usize>;
    let order: &[usize] = match order {
        Some(o) => {
            let mut seen = VertexSet::empty(n);
            if o.len() != n {
                return Err(Error::invalid("order is not a permutation"));
            }
            for &v in o {
                if v >= n || seen.contains(v) {
                    return Err(Error::invalid("order is not a permutation"));
                }
                seen.insert(v);
            }
            o
        }
        None => {
            default_order = (0..n).collect();
            &default_order
        }
    };

    let mut raw: Vec<u32> = vec![u32::MAX; n];
    let mut uncolored = VertexSet::full(n);
    let mut steps = 0usize;
    let mut stopped_clique_free = false;
    loop {
        if steps == n {
            break;
        }
        if contains_maximal_clique(g, &uncolored, min_size, budget)?.is_none() {
            stopped_clique_free = true;
            break;
        }
        let pivot = order[steps];
        steps += 1;
        let class = uncolored.intersection(g.neighbors(pivot));
        for v in class.iter() {
            raw[v] = (steps - 1) as u32;
        }
        uncolored.subtract(&class);
    }

    let pivot_set = VertexSet::from_indices(n, order[..steps].iter().copied());
    let uncolored_pivots = uncolored.intersection(&pivot_set);
    let remainder = uncolored.difference(&pivot_set);
    // The merged class is exactly the uncolored set, so when the loop stopped
    // on the clique-free test its result answers the merge check already.
    let merged = stopped_clique_free
        || contains_maximal_clique(g, &uncolored, min_size, budget)?.is_none();

    for v in uncolored_pivots.iter() {
        raw[v] = steps as u32;
    }
    let remainder_color = if merged { steps as u32 } else { steps as u32 + 1 };
    for v in remainder.iter() {
        raw[v] = remainder_color;
    }

    let stats = GreedyStats {
        pivot_steps: steps,
        remainder_size: remainder.len(),
        merged,
    };
    Ok((Coloring::compacted(raw), stats))
}

struct HyperedgeSolver {
    n: usize,
    edge_members: Vec<Vec<u32>>,
    edges_of: Vec<Vec<u32>>,
    assigned: Vec<u32>,
    mono: Vec<bool>,
    edge_color: Vec<u32>,
    colors: Vec<u32>,
    trail: Vec<u32>,
}

impl HyperedgeSolver {
    fn new(n: usize, hyperedges: &[VertexSet]) -> Self {
        let edge_members: Vec<Vec<u32>> = hyperedges
            .iter()
            .map(|h| h.iter().map(|v| v as u32).collect())
            .collect();
        let mut edges_of = vec![Vec::new(); n];
        for (e, members) in edge_members.iter().enumerate() {
            for &v in members {
                edges_of[v as usize].push(e as u32);
            }
        }
        HyperedgeSolver {
            n,
            assigned: vec![0; edge_members.len()],
            mono: vec![true; edge_members.len()],
            edge_color: vec![0; edge_members.len()],
            edge_members,
            edges_of,
            colors: vec![u32::MAX; n],
            trail: Vec::new(),
        }
    }

    /// Applies the assignment and reports whether some hyperedge became fully
    /// assigned and monochromatic. The trail records flags to restore on undo.
    fn assign(&mut self, v: usize, c: u32) -> bool {
        self.colors[v] = c;
        let mut conflict = false;
        for &e in &self.edges_of[v] {
            let e = e as usize;
            if self.mono[e] {
                if self.assigned[e] == 0 {
                    self.edge_color[e] = c;
                } else if self.edge_color[e] != c {
                    self.mono[e] = false;
                    self.trail.push(e as u32);
                }
            }
            self.assigned[e] += 1;
            if self.mono[e] && self.assigned[e] as usize == self.edge_members[e].len() {
                conflict = true;
            }
        }
        conflict
    }

    fn unassign(&mut self, v: usize, trail_mark: usize) {
        self.colors[v] = u32::MAX;
        for &e in &self.edges_of[v] {
            self.assigned[e as usize] -= 1;
        }
        while self.trail.len() > trail_mark {
            let e = self.trail.pop().unwrap();
            self.mono[e as usize] = true;
        }
    }

    fn search(&mut self, v: usize, max_used: u32, q: u32, meter: &mut BudgetMeter) -> Result<bool> {
        meter.tick_node()?;
        if v == self.n {
            return Ok(true);
        }
        let top = (max_used + 1).min(q - 1);
        for c in 0..=top {
            let mark = self.trail.len();
            let conflict = self.assign(v, c);
            if !conflict && self.search(v + 1, max_used.max(c), q, meter)? {
                return Ok(true);
            }
            self.unassign(v, mark);
        }
        Ok(false)
    }
}

/// Least q admitting a clique coloring with q colors, with a witness.
///
/// The maximal cliques of size ≥ `min_size` become hyperedges and the solver
/// backtracks over assignments with no monochromatic hyperedge, pruning as
/// soon as a hyperedge is fully assigned and monochromatic. Symmetry is
/// broken by fixing vertex 0 to color 0 and opening color t only when colors
/// 0..t−1 are in use.
pub fn exact_chi_c(
    g: &Graph,
    max_colors: u32,
    min_size: usize,
    budget: &Budget,
) -> Result<(u32, Coloring)> {
    if max_colors == 0 {
        return Err(Error::invalid("max_colors must be at least 1"));
    }
    if g.n() == 0 {
        return Ok((0, Coloring { colors: vec![], palette: 0 }));
    }
    let hyperedges = maximal_cliques(g, min_size, None, budget)?;
    let mut meter = BudgetMeter::new(budget);
    for q in 1..=max_colors {
        let mut solver = HyperedgeSolver::new(g.n(), &hyperedges);
        let mark = solver.trail.len();
        let conflict = solver.assign(0, 0);
        if !conflict && solver.search(1, 0, q, &mut meter)? {
            let witness = Coloring::from_colors(solver.colors.clone())?;
            return Ok((q, witness));
        }
        solver.unassign(0, mark);
    }
    Err(Error::budget(format!(
        "no clique coloring found within {max_colors} colors"
    )))
}

/// Independent oracle for the clique chromatic number, limited to n ≤ 8.
///
/// Maximal cliques are found by sweeping all 2^n vertex subsets against the
/// definition, and assignments are enumerated as restricted-growth strings,
/// which visits every set partition exactly once.
pub fn brute_force_chi_c(g: &Graph, min_size: usize) -> Result<u32> {
    let n = g.n();
    if n > 8 {
        return Err(Error::budget("brute force is limited to n ≤ 8"));
    }
    if n == 0 {
        return Ok(0);
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, u| m | (1 << u)))
        .collect();
    let full = (1u32 << n) - 1;
    let mut maximal: Vec<u32> = Vec::new();
    for mask in 1u32..=full {
        if (mask.count_ones() as usize) < min_size {
            continue;
        }
        let mut is_cl = true;
        let mut members = mask;
        while members != 0 {
            let v = members.trailing_zeros() as usize;
            members &= members - 1;
            if mask & !adj[v] != 1 << v {
                is_cl = false;
                break;
            }
        }
        if !is_cl {
            continue;
        }
        let mut outside = full & !mask;
        let mut is_max = true;
        while outside != 0 {
            let u = outside.trailing_zeros() as usize;
            outside &= outside - 1;
            if mask & !adj[u] == 0 {
                is_max = false;
                break;
            }
        }
        if is_max {
            maximal.push(mask);
        }
    }

    fn rec(
        v: usize,
        max_used: u32,
        colors: &mut Vec<u32>,
        adjn: usize,
        maximal: &[u32],
        best: &mut u32,
    ) {
        if max_used + 1 >= *best {
            return;
        }
        if v == adjn {
            for &mask in maximal {
                let first = mask.trailing_zeros() as usize;
                let c0 = colors[first];
                let mut members = mask & (mask - 1);
                let mut mono = true;
                while members != 0 {
                    let u = members.trailing_zeros() as usize;
                    members &= members - 1;
                    if colors[u] != c0 {
                        mono = false;
                        break;
                    }
                }
                if mono {
                    return;
                }
            }
            *best = max_used + 1;
            return;
        }
        for c in 0..=max_used + 1 {
            colors[v] = c;
            rec(v + 1, max_used.max(c), colors, adjn, maximal, best);
        }
    }

    let mut best = u32::MAX;
    let mut colors = vec![0u32; n];
    rec(1, 0, &mut colors, n, &maximal, &mut best);
    if best == u32::MAX {
        return Err(Error::invalid(
            "no clique coloring exists at this minimum clique size",
        ));
    }
    Ok(best)
}

/// One completed adversary step.
#[derive(Clone, Debug, Serialize)]
pub struct AuditStep {
    pub class_id: u32,
    pub class_size_in_x: usize,
    pub chosen_vertex: usize,
    pub nonneighbors_in_class: usize,
    /// Whether the chosen class fell below the floor fraction of |X|.
    pub below_floor: bool,
}

#[derive(Clone, Debug, Serialize)]
pub enum AuditOutcome {
    /// The selected class contained a clique maximal in the whole graph; the
    /// coloring is invalid and the clique is the certificate.
    Violation {
        class_id: u32,
        certificate: VertexSet,
    },
    /// The adversary ran out of classes, candidate vertices, or survivors.
    Exhausted {
        final_x: VertexSet,
        class_sizes_in_x: Vec<usize>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditTrace {
    pub steps: Vec<AuditStep>,
    pub outcome: AuditOutcome,
}

impl AuditTrace {
    pub fn is_violation(&self) -> bool {
        matches!(self.outcome, AuditOutcome::Violation { .. })
    }
}

/// The adversarial audit.
///
/// Starting from X = all vertices, repeatedly select the not-yet-used color
/// class with the most vertices in X (ties to the smallest id) and intersect
/// it with X. If that set contains a clique maximal in the whole graph, stop
/// with a Violation. Otherwise pick the fresh vertex outside the set with the
/// fewest non-neighbors in it (ties to the smallest index), shrink X to the
/// chosen vertex's non-neighborhood, and continue until a class comes up
/// empty or everything is used.
///
/// `class_floor` only annotates the trace: each step records whether the
/// selected class held less than that fraction of X (default 1/log₂ n).
pub fn audit_coloring(
    g: &Graph,
    c: &Coloring,
    class_floor: Option<f64>,
    min_size: usize,
    budget: &Budget,
) -> Result<AuditTrace> {
    let n = g.n();
    if c.len() != n {
        return Err(Error::invalid(format!(
            "coloring covers {} vertices, graph has {}",
            c.len(),
            n
        )));
    }
    let floor_frac = class_floor.unwrap_or_else(|| {
        if n >= 2 {
            1.0 / (n as f64).log2()
        } else {
            1.0
        }
    });

    let classes = c.classes();
    let palette = classes.len();
    let mut used = vec![false; palette];
    let mut x = VertexSet::full(n);
    let mut chosen = VertexSet::empty(n);
    let mut steps = Vec::new();

    loop {
        let mut pick: Option<(usize, usize)> = None;
        for (t, class) in classes.iter().enumerate() {
            if used[t] {
                continue;
            }
            let size = class.intersection_len(&x);
            if pick.is_none_or(|(_, best)| size > best) {
                pick = Some((t, size));
            }
        }
        let Some((t, size)) = pick else { break };
        if size == 0 {
            break;
        }
        used[t] = true;
        let class_in_x = classes[t].intersection(&x);

        if let Some(cert) = contains_maximal_clique(g, &class_in_x, min_size, budget)? {
            return Ok(AuditTrace {
                steps,
                outcome: AuditOutcome::Violation {
                    class_id: t as u32,
                    certificate: cert,
                },
            });
        }

        let mut pool = class_in_x.complement();
        pool.subtract(&chosen);
        let mut best: Option<(usize, usize)> = None;
        for v in pool.iter() {
            let count = size - class_in_x.intersection_len(g.neighbors(v));
            if best.is_none_or(|(_, b)| count < b) {
                best = Some((v, count));
            }
        }
        let Some((v, count)) = best else { break };

        steps.push(AuditStep {
            class_id: t as u32,
            class_size_in_x: size,
            chosen_vertex: v,
            nonneighbors_in_class: count,
            below_floor: (size as f64) < floor_frac * (x.len() as f64),
        });
        chosen.insert(v);
        x.subtract(g.neighbors(v));
        x.remove(v);
    }

    let class_sizes_in_x = classes.iter().map(|cl| cl.intersection_len(&x)).collect();
    Ok(AuditTrace {
        steps,
        outcome: AuditOutcome::Exhausted {
            final_x: x,
            class_sizes_in_x,
        },
    })
}
