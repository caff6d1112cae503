mod manifest;
mod mc;

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use cliquechroma::bounds::bound_report;
use cliquechroma::budget::Budget;
use cliquechroma::coloring::{
    audit_coloring, exact_chi_c, greedy_clique_coloring, verify_clique_coloring, AuditOutcome,
    Coloring, VerifyOutcome,
};
use cliquechroma::format::{read_coloring, read_graph, write_coloring, write_graph};
use cliquechroma::graph::{gen_random_graph, GenParams, Graph};
use cliquechroma::probcheck::{estimate_bad_event_probability, clique_property_spot_check};

use manifest::{sibling_manifest_path, write_manifest, ManifestBuilder};
use mc::{rows_to_csv, run_mc, summarize, McMethod};

const EXIT_OK: i32 = 0;
const EXIT_VIOLATION: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_BUDGET: i32 = 3;

#[derive(Parser)]
#[command(
    name = "cliquechroma",
    version,
    about = "Clique colorings of graphs: generation, greedy and exact solvers, audits, bounds, and Monte Carlo experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(clap::Args, Debug)]
struct BudgetArgs {
    /// Maximum search-tree nodes per clique search.
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Maximum maximal cliques per enumeration.
    #[arg(long)]
    budget_cliques: Option<u64>,
}

impl BudgetArgs {
    /// Flags win over the CLIQUECHROMA_BUDGET environment variable, which in
    /// turn overrides the built-in defaults for both limits.
    fn resolve(&self) -> Result<Budget> {
        let mut budget = Budget::default();
        if let Ok(raw) = std::env::var("CLIQUECHROMA_BUDGET") {
            let v: u64 = raw
                .parse()
                .with_context(|| format!("CLIQUECHROMA_BUDGET must be an integer, got `{raw}`"))?;
            budget.max_nodes = v;
            budget.max_cliques = v;
        }
        if let Some(v) = self.budget_nodes {
            budget.max_nodes = v;
        }
        if let Some(v) = self.budget_cliques {
            budget.max_cliques = v;
        }
        Ok(budget)
    }
}

fn record_budget(mb: &mut ManifestBuilder, budget: &Budget) {
    mb.param("budget_nodes", budget.max_nodes)
        .param("budget_cliques", budget.max_cliques);
}

/// Non-persisting subcommands embed their run manifest in the stdout JSON;
/// persisting ones write it next to the output files.
fn embed_manifest(value: &mut serde_json::Value, mb: ManifestBuilder) {
    if let serde_json::Value::Object(map) = value {
        map.insert(
            "manifest".to_string(),
            serde_json::to_value(mb.finish()).expect("manifest serializes"),
        );
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a random graph and write it in the text format.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the greedy clique coloring on a graph file.
    Greedy {
        #[arg(long = "in")]
        input: PathBuf,
        /// Write the coloring in the text format (plus a manifest).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        min_clique_size: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Compute the exact clique chromatic number of a graph file.
    Exact {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        max_colors: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        min_clique_size: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check a coloring file against a graph file.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long, default_value_t = 2)]
        min_clique_size: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Run the adversarial audit against a coloring.
    Audit {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        /// Class-size floor fraction recorded per step (default 1/log2 n).
        #[arg(long)]
        class_floor: Option<f64>,
        #[arg(long, default_value_t = 2)]
        min_clique_size: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Evaluate every closed-form bound at one (n, eps).
    Bounds {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Monte Carlo palette-size trials over G(n, 1/2).
    Mc {
        /// Comma-separated list of vertex counts.
        #[arg(long, value_delimiter = ',')]
        n_list: Vec<usize>,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = McMethod::Greedy)]
        method: McMethod,
        #[arg(long)]
        out_dir: PathBuf,
        /// Worker threads (defaults to the available parallelism).
        #[arg(long)]
        threads: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Estimate the probability of the bad dominating-clique event.
    Badevent {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        y: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        threshold: f64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Sampled spot check of the structural property on a graph file.
    Spotcheck {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long)]
        j_max: usize,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        /// Override the per-vertex non-neighbor threshold (the formula
        /// default is vacuous at desk scale).
        #[arg(long)]
        threshold: Option<f64>,
        /// Allow j_max beyond the adversary palette guard.
        #[arg(long)]
        force_jmax: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            classify_error(&err)
        }
    };
    std::process::exit(code);
}

fn classify_error(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<cliquechroma::Error>() {
        Some(cliquechroma::Error::Budget(_)) => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

fn load_graph(path: &Path) -> Result<(Graph, Vec<u8>)> {
    let bytes =
        std::fs::read(path).with_context(|| format!("reading graph file {}", path.display()))?;
    let text = std::str::from_utf8(&bytes).context("graph file is not UTF-8")?;
    let g = read_graph(text)?;
    Ok((g, bytes))
}

fn load_coloring(path: &Path) -> Result<(Coloring, Vec<u8>)> {
    let bytes = std::fs::read(path)
        .with_context(|| format!("reading coloring file {}", path.display()))?;
    let text = std::str::from_utf8(&bytes).context("coloring file is not UTF-8")?;
    let c = read_coloring(text)?;
    Ok((c, bytes))
}

/// Vertex lists in CLI JSON follow the file-format convention (1-indexed).
fn one_indexed(set: &cliquechroma::VertexSet) -> Vec<usize> {
    set.iter().map(|v| v + 1).collect()
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("valid JSON"));
}

fn run(command: Command) -> Result<i32> {
    match command {
        Command::Gen { n, p, seed, out } => {
            let params = GenParams::new(n, p, seed)?;
            let g = gen_random_graph(&params);
            let text = write_graph(&g);
            std::fs::write(&out, &text)
                .with_context(|| format!("writing graph to {}", out.display()))?;

            let mut mb = ManifestBuilder::new("gen");
            mb.param("n", n).param("p", p).param("seed", seed);
            mb.base_seed(seed).output(&out);
            write_manifest(&sibling_manifest_path(&out), &mb.finish())?;

            print_json(&json!({
                "schema": "cliquechroma.gen.v1",
                "n": n,
                "p": p,
                "seed": seed,
                "edges": g.edge_count(),
                "out": out.display().to_string(),
            }));
            Ok(EXIT_OK)
        }
        Command::Greedy {
            input,
            out,
            min_clique_size,
            budget,
        } => {
            let budget = budget.resolve()?;
            let (g, bytes) = load_graph(&input)?;
            let (coloring, stats) = greedy_clique_coloring(&g, None, min_clique_size, &budget)?;

            let mut mb = ManifestBuilder::new("greedy");
            mb.param("in", input.display().to_string())
                .param("min_clique_size", min_clique_size);
            record_budget(&mut mb, &budget);
            mb.input(&input, &bytes);

            let mut value = json!({
                "schema": "cliquechroma.greedy.v1",
                "n": g.n(),
                "palette": coloring.palette(),
                "pivot_steps": stats.pivot_steps,
                "remainder_size": stats.remainder_size,
                "merged": stats.merged,
            });
            if let Some(out) = &out {
                std::fs::write(out, write_coloring(&coloring))
                    .with_context(|| format!("writing coloring to {}", out.display()))?;
                mb.output(out);
                write_manifest(&sibling_manifest_path(out), &mb.finish())?;
            } else {
                embed_manifest(&mut value, mb);
            }
            print_json(&value);
            Ok(EXIT_OK)
        }
        Command::Exact {
            input,
            max_colors,
            out,
            min_clique_size,
            budget,
        } => {
            let budget = budget.resolve()?;
            let (g, bytes) = load_graph(&input)?;
            let max_colors = max_colors.unwrap_or(g.n().max(1) as u32);
            let (chi, witness) = exact_chi_c(&g, max_colors, min_clique_size, &budget)?;

            let mut mb = ManifestBuilder::new("exact");
            mb.param("in", input.display().to_string())
                .param("max_colors", max_colors)
                .param("min_clique_size", min_clique_size);
            record_budget(&mut mb, &budget);
            mb.input(&input, &bytes);

            let mut value = json!({
                "schema": "cliquechroma.exact.v1",
                "n": g.n(),
                "chi_c": chi,
            });
            if let Some(out) = &out {
                std::fs::write(out, write_coloring(&witness))
                    .with_context(|| format!("writing coloring to {}", out.display()))?;
                mb.output(out);
                write_manifest(&sibling_manifest_path(out), &mb.finish())?;
            } else {
                embed_manifest(&mut value, mb);
            }
            print_json(&value);
            Ok(EXIT_OK)
        }
        Command::Verify {
            input,
            coloring,
            min_clique_size,
            budget,
        } => {
            let budget = budget.resolve()?;
            let (g, g_bytes) = load_graph(&input)?;
            let (c, c_bytes) = load_coloring(&coloring)?;
            let mut mb = ManifestBuilder::new("verify");
            mb.param("in", input.display().to_string())
                .param("coloring", coloring.display().to_string())
                .param("min_clique_size", min_clique_size);
            record_budget(&mut mb, &budget);
            mb.input(&input, &g_bytes).input(&coloring, &c_bytes);

            let (mut value, code) = match verify_clique_coloring(&g, &c, min_clique_size, &budget)?
            {
                VerifyOutcome::Valid => (
                    json!({
                        "schema": "cliquechroma.verify.v1",
                        "valid": true,
                        "certificate": serde_json::Value::Null,
                    }),
                    EXIT_OK,
                ),
                VerifyOutcome::Violation(cert) => (
                    json!({
                        "schema": "cliquechroma.verify.v1",
                        "valid": false,
                        "certificate": one_indexed(&cert),
                    }),
                    EXIT_VIOLATION,
                ),
            };
            embed_manifest(&mut value, mb);
            print_json(&value);
            Ok(code)
        }
        Command::Audit {
            input,
            coloring,
            class_floor,
            min_clique_size,
            budget,
        } => {
            let budget = budget.resolve()?;
            let (g, g_bytes) = load_graph(&input)?;
            let (c, c_bytes) = load_coloring(&coloring)?;
            let mut mb = ManifestBuilder::new("audit");
            mb.param("in", input.display().to_string())
                .param("coloring", coloring.display().to_string())
                .param("class_floor", class_floor)
                .param("min_clique_size", min_clique_size);
            record_budget(&mut mb, &budget);
            mb.input(&input, &g_bytes).input(&coloring, &c_bytes);
            let trace = audit_coloring(&g, &c, class_floor, min_clique_size, &budget)?;
            let steps: Vec<_> = trace
                .steps
                .iter()
                .map(|s| {
                    json!({
                        "class": s.class_id,
                        "class_size_in_x": s.class_size_in_x,
                        "chosen_vertex": s.chosen_vertex + 1,
                        "nonneighbors_in_class": s.nonneighbors_in_class,
                        "below_floor": s.below_floor,
                    })
                })
                .collect();
            let (violation, outcome_json) = match &trace.outcome {
                AuditOutcome::Violation {
                    class_id,
                    certificate,
                } => (
                    true,
                    json!({
                        "violation": { "class": class_id, "certificate": one_indexed(certificate) }
                    }),
                ),
                AuditOutcome::Exhausted {
                    final_x,
                    class_sizes_in_x,
                } => (
                    false,
                    json!({
                        "exhausted": {
                            "final_x": one_indexed(final_x),
                            "class_sizes_in_x": class_sizes_in_x,
                        }
                    }),
                ),
            };
            let mut value = json!({
                "schema": "cliquechroma.audit.v1",
                "steps": steps,
                "outcome": outcome_json,
            });
            embed_manifest(&mut value, mb);
            print_json(&value);
            Ok(if violation { EXIT_VIOLATION } else { EXIT_OK })
        }
        Command::Bounds { n, eps, format } => {
            let report = bound_report(n, eps)?;
            match format {
                OutputFormat::Csv => {
                    println!("# schema: cliquechroma.bounds.v1");
                    println!("name,value,vacuous");
                    for (name, value) in &report.values {
                        println!(
                            "{name},{value},{}",
                            report.vacuous.contains(name)
                        );
                    }
                }
                OutputFormat::Json => {
                    let mut value = serde_json::to_value(&report)?;
                    if let serde_json::Value::Object(map) = &mut value {
                        map.insert("schema".to_string(), json!("cliquechroma.bounds.v1"));
                    }
                    let mut mb = ManifestBuilder::new("bounds");
                    mb.param("n", n).param("eps", eps);
                    embed_manifest(&mut value, mb);
                    print_json(&value);
                }
            }
            Ok(EXIT_OK)
        }
        Command::Mc {
            n_list,
            trials,
            seed,
            method,
            out_dir,
            threads,
            budget,
        } => {
            if n_list.is_empty() {
                return Err(cliquechroma::Error::invalid("n-list must be nonempty").into());
            }
            if trials == 0 {
                return Err(cliquechroma::Error::invalid("trials must be at least 1").into());
            }
            let budget = budget.resolve()?;
            let threads = threads.unwrap_or_else(|| {
                std::thread::available_parallelism().map_or(1, |p| p.get().min(8))
            });
            std::fs::create_dir_all(&out_dir)
                .with_context(|| format!("creating {}", out_dir.display()))?;

            let rows = run_mc(&n_list, trials, seed, method, &budget, threads);
            let csv_path = out_dir.join("trials.csv");
            std::fs::write(&csv_path, rows_to_csv(&rows))?;
            let summary = summarize(&rows, method, trials, seed);
            let summary_path = out_dir.join("summary.json");
            std::fs::write(&summary_path, serde_json::to_string_pretty(&summary)? + "\n")?;

            let mut mb = ManifestBuilder::new("mc");
            mb.param("n_list", &n_list)
                .param("trials", trials)
                .param("seed", seed)
                .param("method", format!("{method:?}").to_lowercase())
                .param("seed_rule", "per-trial seed = seed + trial_index")
                .param("threads", threads);
            record_budget(&mut mb, &budget);
            mb.base_seed(seed).output(&csv_path).output(&summary_path);
            write_manifest(&out_dir.join("manifest.json"), &mb.finish())?;

            let censored: u64 = rows.iter().filter(|r| r.censored).count() as u64;
            print_json(&json!({
                "schema": "cliquechroma.mc.v1",
                "rows": rows.len(),
                "censored": censored,
                "out_dir": out_dir.display().to_string(),
            }));
            Ok(EXIT_OK)
        }
        Command::Badevent {
            n,
            y,
            k,
            threshold,
            trials,
            seed,
            format,
            budget,
        } => {
            let budget = budget.resolve()?;
            let estimate = estimate_bad_event_probability(n, y, k, threshold, trials, seed, &budget)?;
            match format {
                OutputFormat::Csv => {
                    println!("# schema: cliquechroma.badevent.v1");
                    println!("n,y,k,threshold,trials,bad_events,censored,fraction,ci_low,ci_high");
                    println!(
                        "{n},{y},{k},{threshold},{trials},{},{},{},{},{}",
                        estimate.bad_events,
                        estimate.censored,
                        estimate.fraction,
                        estimate.ci_low,
                        estimate.ci_high
                    );
                }
                OutputFormat::Json => {
                    let mut value = serde_json::to_value(&estimate)?;
                    if let serde_json::Value::Object(map) = &mut value {
                        map.insert("schema".to_string(), json!("cliquechroma.badevent.v1"));
                    }
                    let mut mb = ManifestBuilder::new("badevent");
                    mb.param("n", n)
                        .param("y", y)
                        .param("k", k)
                        .param("threshold", threshold)
                        .param("trials", trials)
                        .param("seed", seed)
                        .param("seed_rule", "per-trial seed = seed + trial_index");
                    record_budget(&mut mb, &budget);
                    mb.base_seed(seed);
                    embed_manifest(&mut value, mb);
                    print_json(&value);
                }
            }
            Ok(EXIT_OK)
        }
        Command::Spotcheck {
            input,
            eps,
            j_max,
            samples,
            seed,
            threshold,
            force_jmax,
            budget,
        } => {
            let budget = budget.resolve()?;
            let (g, g_bytes) = load_graph(&input)?;
            let report = clique_property_spot_check(
                &g, eps, j_max, samples, seed, threshold, force_jmax, &budget,
            )?;
            let mut value = serde_json::to_value(&report)?;
            if let serde_json::Value::Object(map) = &mut value {
                map.insert("schema".to_string(), json!("cliquechroma.spotcheck.v1"));
                // Vertex ids in the sampled tuples follow the file convention.
                if let Some(details) = map.get_mut("details").and_then(|d| d.as_array_mut()) {
                    for d in details {
                        if let Some(tuple) = d.get_mut("tuple").and_then(|t| t.as_array_mut()) {
                            for t in tuple {
                                if let Some(v) = t.as_u64() {
                                    *t = json!(v + 1);
                                }
                            }
                        }
                    }
                }
            }
            let mut mb = ManifestBuilder::new("spotcheck");
            mb.param("in", input.display().to_string())
                .param("eps", eps)
                .param("j_max", j_max)
                .param("samples", samples)
                .param("seed", seed)
                .param("threshold", threshold)
                .param("force_jmax", force_jmax);
            record_budget(&mut mb, &budget);
            mb.base_seed(seed).input(&input, &g_bytes);
            embed_manifest(&mut value, mb);
            print_json(&value);
            Ok(EXIT_OK)
        }
    }
}
