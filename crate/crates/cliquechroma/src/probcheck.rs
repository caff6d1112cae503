//! Desk-scale empirical checks of the dominating-clique event and sampled
//! spot checks of the structural property behind the adversary argument.

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::bounds::{adversary_palette_size, dominating_event_params};
use crate::budget::Budget;
use crate::cliques::{contains_maximal_clique, find_dominating_clique};
use crate::error::{Error, Result};
use crate::graph::{gen_random_graph, non_neighbors, GenParams, Graph};
use crate::rng::SplitMix64;

/// Both conditions of the bad dominating-clique event, evaluated exactly.
#[derive(Clone, Debug, Serialize)]
pub struct BadEventVerdict {
    /// Every vertex outside Y has at least `threshold` non-neighbors in Y.
    pub min_nonneighbors_ok: bool,
    /// A clique of size k in Y giving every outside vertex a non-neighbor,
    /// when one exists.
    pub dominating_clique: Option<VertexSet>,
    /// The non-neighbor floor holds and no dominating clique exists.
    pub bad_event: bool,
}

fn nonneighbors_in_class(g: &Graph, v: usize, y: &VertexSet) -> usize {
    // v is outside y in every call site, so no self-exclusion is needed.
    y.len() - y.intersection_len(g.neighbors(v))
}

pub fn bad_event_holds(
    g: &Graph,
    y: &VertexSet,
    k: usize,
    threshold: f64,
    budget: &Budget,
) -> Result<BadEventVerdict> {
    if y.is_empty() {
        return Err(Error::invalid("Y must be nonempty"));
    }
    if k < 1 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let mut min_nonneighbors_ok = true;
    for v in y.complement().iter() {
        if (nonneighbors_in_class(g, v, y) as f64) < threshold {
            min_nonneighbors_ok = false;
            break;
        }
    }
    let dominating_clique = find_dominating_clique(g, y, k, budget)?;
    Ok(BadEventVerdict {
        min_nonneighbors_ok,
        bad_event: min_nonneighbors_ok && dominating_clique.is_none(),
        dominating_clique,
    })
}

/// Monte Carlo estimate of the bad-event probability over G(n,½).
#[derive(Clone, Debug, Serialize)]
pub struct BadEventEstimate {
    pub n: usize,
    pub y: usize,
    pub k: usize,
    pub threshold: f64,
    pub trials: u64,
    pub bad_events: u64,
    /// Trials whose dominating-clique search ran out of budget.
    pub censored: u64,
    pub fraction: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Samples G(n,½) with per-trial seeds `seed + i` and Y fixed to the index
/// prefix {0,…,y−1}; the distribution is vertex-exchangeable, so the prefix
/// loses no generality and keeps trials reproducible. Returns the empirical
/// bad-event frequency with a 95% Wilson interval.
pub fn estimate_bad_event_probability(
    n: usize,
    y: usize,
    k: usize,
    threshold: f64,
    trials: u64,
    seed: u64,
    budget: &Budget,
) -> Result<BadEventEstimate> {
    if y < 1 || y > n {
        return Err(Error::invalid(format!("need 1 ≤ y ≤ n, got y={y}, n={n}")));
    }
    if trials < 1 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let yset = VertexSet::from_indices(n, 0..y);
    let mut bad_events = 0u64;
    let mut censored = 0u64;
    for i in 0..trials {
        let params = GenParams::new(n, 0.5, seed.wrapping_add(i))?;
        let g = gen_random_graph(&params);
        match bad_event_holds(&g, &yset, k, threshold, budget) {
            Ok(verdict) => {
                if verdict.bad_event {
                    bad_events += 1;
                }
            }
            Err(Error::Budget(_)) => censored += 1,
            Err(e) => return Err(e),
        }
    }
    let completed = trials - censored;
    let fraction = if completed == 0 {
        0.0
    } else {
        bad_events as f64 / completed as f64
    };
    let (ci_low, ci_high) = wilson_interval(bad_events, completed, 1.959_963_984_540_054);
    Ok(BadEventEstimate {
        n,
        y,
        k,
        threshold,
        trials,
        bad_events,
        censored,
        fraction,
        ci_low,
        ci_high,
    })
}

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p_hat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p_hat + z2 / (2.0 * n)) / denom;
    let half = z * (p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Per-sample record of the spot check.
#[derive(Clone, Debug, Serialize)]
pub struct SpotCheckSample {
    pub j: usize,
    pub tuple: Vec<usize>,
    pub n0_size: usize,
    pub condition1_ok: bool,
    pub y_size: Option<usize>,
    pub threshold_ok: Option<bool>,
    pub contains_maximal: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpotCheckReport {
    pub samples: u64,
    /// Samples whose common non-neighborhood was empty, so no Y could be drawn.
    pub skipped_empty: u64,
    /// Samples where |N₀(v₁,…,v_j)| fell below n/2^j − 2√n·ln n.
    pub condition1_failures: u64,
    /// Qualifying Y for which no maximal clique was found.
    pub condition2_failures: u64,
    /// Drawn Y that failed the per-vertex non-neighbor threshold, so the
    /// clique check did not apply.
    pub threshold_unmet: u64,
    pub contains_checks: u64,
    pub threshold: f64,
    pub details: Vec<SpotCheckSample>,
}

/// Sampled spot check of the structural property: full quantification over
/// all Y is exponential, so this draws random (j, v₁…v_j, Y) instances.
///
/// `threshold` overrides the per-vertex non-neighbor bound, whose default
/// from the asymptotic formula is vacuous at desk scale. `force_jmax` skips
/// the guard that j_max stay within the adversary palette size, which is
/// likewise non-positive for any feasible n.
#[allow(clippy::too_many_arguments)]
pub fn clique_property_spot_check(
    g: &Graph,
    eps: f64,
    j_max: usize,
    samples: u64,
    seed: u64,
    threshold: Option<f64>,
    force_jmax: bool,
    budget: &Budget,
) -> Result<SpotCheckReport> {
    let n = g.n();
    if n < 2 {
        return Err(Error::invalid("spot check needs at least 2 vertices"));
    }
    if samples < 1 {
        return Err(Error::invalid("samples must be at least 1"));
    }
    if j_max < 1 || j_max > n {
        return Err(Error::invalid(format!(
            "need 1 ≤ j_max ≤ n, got j_max={j_max}"
        )));
    }
    if !force_jmax {
        let s_adv = adversary_palette_size(n as u64, eps)?;
        if s_adv <= 0 || j_max as i64 > s_adv {
            return Err(Error::invalid(format!(
                "j_max={j_max} exceeds the adversary palette guard s={s_adv}; force to override"
            )));
        }
    }
    let threshold = match threshold {
        Some(t) => t,
        None => dominating_event_params(n as u64, eps)?.nonneighbor_threshold,
    };

    let mut rng = SplitMix64::new(seed);
    let mut report = SpotCheckReport {
        samples,
        skipped_empty: 0,
        condition1_failures: 0,
        condition2_failures: 0,
        threshold_unmet: 0,
        contains_checks: 0,
        threshold,
        details: Vec::with_capacity(samples as usize),
    };
    let nf = n as f64;

    for _ in 0..samples {
        let j = 1 + rng.next_below(j_max as u64) as usize;
        let mut tuple = Vec::with_capacity(j);
        let mut taken = VertexSet::empty(n);
        while tuple.len() < j {
            let v = rng.next_below(n as u64) as usize;
            if !taken.contains(v) {
                taken.insert(v);
                tuple.push(v);
            }
        }
        let n0 = non_neighbors(g, &tuple)?;
        let bound = nf / 2f64.powi(j as i32) - 2.0 * nf.sqrt() * nf.ln();
        let condition1_ok = (n0.len() as f64) >= bound;
        if !condition1_ok {
            report.condition1_failures += 1;
        }
        let mut sample = SpotCheckSample {
            j,
            tuple,
            n0_size: n0.len(),
            condition1_ok,
            y_size: None,
            threshold_ok: None,
            contains_maximal: None,
        };
        if n0.is_empty() {
            report.skipped_empty += 1;
            report.details.push(sample);
            continue;
        }

        let y_size = ((n0.len() as f64) / nf.log2()).ceil().max(1.0) as usize;
        sample.y_size = Some(y_size);
        let mut pool = n0.to_vec();
        for i in 0..y_size {
            let swap = i + rng.next_below((pool.len() - i) as u64) as usize;
            pool.swap(i, swap);
        }
        let yset = VertexSet::from_indices(n, pool[..y_size].iter().copied());

        let mut threshold_ok = true;
        for v in yset.complement().iter() {
            if (nonneighbors_in_class(g, v, &yset) as f64) < threshold {
                threshold_ok = false;
                break;
            }
        }
        sample.threshold_ok = Some(threshold_ok);
        if !threshold_ok {
            report.threshold_unmet += 1;
        } else {
            report.contains_checks += 1;
            let found = contains_maximal_clique(g, &yset, 2, budget)?;
            sample.contains_maximal = Some(found.is_some());
            if found.is_none() {
                report.condition2_failures += 1;
            }
        }
        report.details.push(sample);
    }
    Ok(report)
}
