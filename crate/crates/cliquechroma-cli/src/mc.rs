//! Monte Carlo palette-size experiments: seeded trials fanned out across
//! worker threads, per-trial CSV rows, and a per-n summary.

use std::collections::BTreeMap;
use std::sync::Mutex;

use anyhow::Result;
use serde::Serialize;

use cliquechroma::budget::Budget;
use cliquechroma::coloring::{exact_chi_c, greedy_clique_coloring};
use cliquechroma::graph::{gen_random_graph, GenParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum McMethod {
    Greedy,
    Exact,
}

#[derive(Clone, Debug)]
pub struct TrialRow {
    pub n: usize,
    pub trial: u64,
    pub seed: u64,
    /// None when the trial was censored by a budget limit.
    pub palette: Option<u32>,
    pub steps: Option<usize>,
    pub remainder: Option<usize>,
    pub censored: bool,
}

#[derive(Debug, Serialize)]
pub struct McSummaryPerN {
    pub n: usize,
    pub completed: u64,
    pub censored: u64,
    pub mean_palette: f64,
    pub min_palette: u32,
    pub max_palette: u32,
}

#[derive(Debug, Serialize)]
pub struct McSummary {
    pub schema: &'static str,
    pub method: String,
    pub trials_per_n: u64,
    pub base_seed: u64,
    pub per_n: Vec<McSummaryPerN>,
}

fn run_one(n: usize, seed: u64, method: McMethod, budget: &Budget) -> Result<TrialRow, bool> {
    let params = GenParams::new(n, 0.5, seed).map_err(|_| false)?;
    let g = gen_random_graph(&params);
    match method {
        McMethod::Greedy => match greedy_clique_coloring(&g, None, 2, budget) {
            Ok((c, stats)) => Ok(TrialRow {
                n,
                trial: 0,
                seed,
                palette: Some(c.palette()),
                steps: Some(stats.pivot_steps),
                remainder: Some(stats.remainder_size),
                censored: false,
            }),
            Err(cliquechroma::Error::Budget(_)) => Err(true),
            Err(_) => Err(false),
        },
        McMethod::Exact => match exact_chi_c(&g, n as u32, 2, budget) {
            Ok((chi, _)) => Ok(TrialRow {
                n,
                trial: 0,
                seed,
                palette: Some(chi),
                steps: None,
                remainder: None,
                censored: false,
            }),
            Err(cliquechroma::Error::Budget(_)) => Err(true),
            Err(_) => Err(false),
        },
    }
}

/// Runs `trials` seeded trials per n. Per-trial seeds are `base_seed + trial`,
/// so runs are reproducible and the worker count cannot change the result
/// set: rows are sorted back into (n, trial) order after the fan-out.
pub fn run_mc(
    n_list: &[usize],
    trials: u64,
    base_seed: u64,
    method: McMethod,
    budget: &Budget,
    threads: usize,
) -> Vec<TrialRow> {
    let mut jobs: Vec<(usize, u64)> = Vec::new();
    for &n in n_list {
        for t in 0..trials {
            jobs.push((n, t));
        }
    }
    let next = Mutex::new(0usize);
    let rows = Mutex::new(Vec::with_capacity(jobs.len()));
    std::thread::scope(|scope| {
        for _ in 0..threads.max(1) {
            scope.spawn(|| loop {
                let idx = {
                    let mut guard = next.lock().unwrap();
                    let idx = *guard;
                    *guard += 1;
                    idx
                };
                let Some(&(n, trial)) = jobs.get(idx) else { break };
                let seed = base_seed.wrapping_add(trial);
                let row = match run_one(n, seed, method, budget) {
                    Ok(mut row) => {
                        row.trial = trial;
                        row
                    }
                    Err(censored) => TrialRow {
                        n,
                        trial,
                        seed,
                        palette: None,
                        steps: None,
                        remainder: None,
                        censored,
                    },
                };
                rows.lock().unwrap().push(row);
            });
        }
    });
    let mut rows = rows.into_inner().unwrap();
    rows.sort_by_key(|r| (r.n, r.trial));
    rows
}

pub fn rows_to_csv(rows: &[TrialRow]) -> String {
    let mut out = String::from("# schema: cliquechroma.mc.v1\n");
    out.push_str("n,trial,seed,palette,steps,remainder,censored\n");
    for r in rows {
        let fmt_opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.n,
            r.trial,
            r.seed,
            r.palette.map(|p| p.to_string()).unwrap_or_default(),
            fmt_opt(r.steps),
            fmt_opt(r.remainder),
            r.censored,
        ));
    }
    out
}

pub fn summarize(rows: &[TrialRow], method: McMethod, trials: u64, base_seed: u64) -> McSummary {
    let mut grouped: BTreeMap<usize, Vec<&TrialRow>> = BTreeMap::new();
    for r in rows {
        grouped.entry(r.n).or_default().push(r);
    }
    let per_n = grouped
        .into_iter()
        .map(|(n, rows)| {
            let palettes: Vec<u32> = rows.iter().filter_map(|r| r.palette).collect();
            let censored = rows.iter().filter(|r| r.censored).count() as u64;
            let completed = palettes.len() as u64;
            let mean = if palettes.is_empty() {
                0.0
            } else {
                palettes.iter().map(|&p| p as f64).sum::<f64>() / palettes.len() as f64
            };
            McSummaryPerN {
                n,
                completed,
                censored,
                mean_palette: mean,
                min_palette: palettes.iter().copied().min().unwrap_or(0),
                max_palette: palettes.iter().copied().max().unwrap_or(0),
            }
        })
        .collect();
    McSummary {
        schema: "cliquechroma.mc.summary.v1",
        method: format!("{method:?}").to_lowercase(),
        trials_per_n: trials,
        base_seed,
        per_n,
    }
}
