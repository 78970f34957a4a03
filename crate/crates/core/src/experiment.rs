//! Parameter sweeps over generated games, written as CSV.
//!
//! Every replication gets its own seed derived from the master seed and its
//! row index, so results do not depend on the thread count or on scheduling.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gen::{self, EdgeListOptions, GraphSpec, UtilityFamilyParams};
use crate::graph::Graph;
use crate::heuristic::HeuristicParams;
use crate::report::Status;
use crate::solve::{self, SolveOptions, SolverChoice};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeListSource {
    pub path: PathBuf,
    #[serde(default)]
    pub keep_ids: bool,
    /// Only meaningful with `keep_ids`.
    #[serde(default)]
    pub zero_indexed: bool,
    #[serde(default)]
    pub largest_component: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub seed: u64,
    pub replications: usize,
    #[serde(default)]
    pub graphs: Vec<GraphSpec>,
    #[serde(default)]
    pub edge_lists: Vec<EdgeListSource>,
    pub gammas: Vec<f64>,
    #[serde(default = "default_alpha_pools")]
    pub alpha_pools: Vec<Vec<f64>>,
    #[serde(default = "default_beta_pools")]
    pub beta_pools: Vec<Vec<f64>>,
    #[serde(default = "default_method")]
    pub method: SolverChoice,
    #[serde(default)]
    pub heuristic: HeuristicParams,
    /// Raw CSV path; the aggregate and timing files are written next to it.
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Worker threads; defaults to the number of cores.
    #[serde(default)]
    pub threads: Option<usize>,
}

fn default_alpha_pools() -> Vec<Vec<f64>> {
    vec![gen::DEFAULT_ALPHAS.to_vec()]
}

fn default_beta_pools() -> Vec<Vec<f64>> {
    vec![gen::DEFAULT_BETAS.to_vec()]
}

fn default_method() -> SolverChoice {
    SolverChoice::Heuristic
}

fn config_error(message: impl Into<String>) -> Error {
    Error::InvalidParameter(message.into())
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Load {
            line: e
                .span()
                .map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1),
            message: e.message().trim().to_string(),
        })
    }

    /// Reads a config; relative edge-list paths resolve against its directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut config = Self::from_toml(&std::fs::read_to_string(path)?)?;
        let base = path.parent().unwrap_or(Path::new(""));
        for source in &mut config.edge_lists {
            if source.path.is_relative() {
                source.path = base.join(&source.path);
            }
        }
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications < 1 {
            return Err(config_error("replications must be at least 1"));
        }
        if self.graphs.is_empty() && self.edge_lists.is_empty() {
            return Err(config_error("no graphs or edge lists to sweep over"));
        }
        for (name, empty) in [
            ("gammas", self.gammas.is_empty()),
            ("alpha_pools", self.alpha_pools.is_empty()),
            ("beta_pools", self.beta_pools.is_empty()),
        ] {
            if empty {
                return Err(config_error(format!("{name} grid is empty")));
            }
        }
        for cell in self.cells() {
            cell.utilities.validate()?;
        }
        if self.threads == Some(0) {
            return Err(config_error("threads must be at least 1"));
        }
        self.heuristic.validate()
    }

    fn cells(&self) -> Vec<Cell> {
        let sources = self.graphs.len() + self.edge_lists.len();
        let mut cells = Vec::new();
        for source in 0..sources {
            for &gamma in &self.gammas {
                for alphas in &self.alpha_pools {
                    for betas in &self.beta_pools {
                        cells.push(Cell {
                            source,
                            utilities: UtilityFamilyParams {
                                gamma,
                                alpha_pool: alphas.clone(),
                                beta_pool: betas.clone(),
                            },
                        });
                    }
                }
            }
        }
        cells
    }
}

#[derive(Debug, Clone)]
struct Cell {
    source: usize,
    utilities: UtilityFamilyParams,
}

/// One replication.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub row: usize,
    pub cell: usize,
    pub seed: u64,
    pub graph: String,
    pub graph_params: String,
    pub n: usize,
    pub edges: usize,
    pub gamma: f64,
    pub alpha_pool: String,
    pub beta_pool: String,
    pub method: String,
    pub status: String,
    /// Normalized ε of the returned profile; empty when no profile exists.
    pub epsilon: Option<f64>,
    pub invest_ratio: Option<f64>,
    pub welfare: Option<f64>,
    pub iterations: usize,
}

/// Means and sample standard deviations over the replications of one cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggregateRow {
    pub cell: usize,
    pub graph: String,
    pub graph_params: String,
    pub gamma: f64,
    pub alpha_pool: String,
    pub beta_pool: String,
    pub replications: usize,
    pub psne_rate: f64,
    pub epsilon_mean: Option<f64>,
    pub epsilon_std: Option<f64>,
    pub invest_ratio_mean: Option<f64>,
    pub invest_ratio_std: Option<f64>,
    pub welfare_mean: Option<f64>,
    pub welfare_std: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimingRow {
    pub row: usize,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub rows: Vec<ExperimentRow>,
    pub aggregates: Vec<AggregateRow>,
    pub timings: Vec<TimingRow>,
}

/// SplitMix64 finalizer; decorrelates consecutive row seeds.
pub fn derive_seed(master: u64, row: u64) -> u64 {
    let mut z = master
        .wrapping_add(row.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

enum Source {
    Spec(GraphSpec),
    Fixed { label: String, graph: Graph },
}

fn pool_label(pool: &[f64]) -> String {
    pool.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(";")
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutcome> {
    config.validate()?;
    let mut sources: Vec<Source> = config.graphs.iter().cloned().map(Source::Spec).collect();
    for list in &config.edge_lists {
        let options = EdgeListOptions {
            zero_indexed: list.zero_indexed,
            compact: !list.keep_ids,
            largest_component: list.largest_component,
        };
        sources.push(Source::Fixed {
            label: list.path.display().to_string(),
            graph: gen::load_edge_list(&list.path, options)?,
        });
    }
    let cells = config.cells();
    let jobs: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..config.replications).map(move |r| (c, r)))
        .enumerate()
        .map(|(row, (cell, _))| (row, cell))
        .collect();

    let run_row = |&(row, cell_index): &(usize, usize)| -> Result<(ExperimentRow, TimingRow)> {
        let start = Instant::now();
        let cell = &cells[cell_index];
        let seed = derive_seed(config.seed, row as u64);
        let (graph, name, params) = match &sources[cell.source] {
            Source::Spec(spec) => {
                let spec = GraphSpec {
                    seed: derive_seed(seed, 1),
                    ..spec.clone()
                };
                (gen::gen_graph(&spec)?, spec.kind.name().to_string(), spec.kind.params_label())
            }
            Source::Fixed { label, graph } => (graph.clone(), "edge_list".to_string(), label.clone()),
        };
        let (n, edges) = (graph.n(), graph.edge_count());
        let instance = gen::gen_utilities(graph, &cell.utilities, derive_seed(seed, 2))?;
        let options = SolveOptions {
            choice: config.method,
            heuristic: HeuristicParams {
                seed,
                ..config.heuristic
            },
            ..SolveOptions::default()
        };
        let report = solve::solve(&instance, &options)?;
        let (epsilon, invest_ratio, welfare) = match report.profile() {
            Some(x) => (
                Some(match report.status {
                    Status::ApproxPsne { .. } => instance.max_epsilon(x, true)?,
                    _ => 0.0,
                }),
                Some(x.invest_ratio()),
                Some(instance.social_welfare(x)?),
            ),
            None => (None, None, None),
        };
        let record = ExperimentRow {
            row,
            cell: cell_index,
            seed,
            graph: name,
            graph_params: params,
            n,
            edges,
            gamma: cell.utilities.gamma,
            alpha_pool: pool_label(&cell.utilities.alpha_pool),
            beta_pool: pool_label(&cell.utilities.beta_pool),
            method: report.method.to_string(),
            status: report.status.label().to_string(),
            epsilon,
            invest_ratio,
            welfare,
            iterations: report.diagnostics.iterations,
        };
        let timing = TimingRow {
            row,
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        };
        Ok((record, timing))
    };

    let results: Vec<(ExperimentRow, TimingRow)> = match config.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| config_error(format!("cannot start worker pool: {e}")))?
            .install(|| jobs.par_iter().map(run_row).collect::<Result<_>>())?,
        None => jobs.par_iter().map(run_row).collect::<Result<_>>()?,
    };
    let (rows, timings): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let aggregates = aggregate(&rows, cells.len());
    Ok(ExperimentOutcome {
        rows,
        aggregates,
        timings,
    })
}

pub fn mean(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        None
    } else {
        Some(values.iter().sum::<f64>() / values.len() as f64)
    }
}

/// Sample standard deviation (n - 1 denominator); 0 for a single value.
pub fn sample_std(values: &[f64]) -> Option<f64> {
    let m = mean(values)?;
    if values.len() < 2 {
        return Some(0.0);
    }
    let ss: f64 = values.iter().map(|v| (v - m) * (v - m)).sum();
    Some((ss / (values.len() - 1) as f64).sqrt())
}

fn ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut out = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        // average rank for ties, 1-based
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            out[k] = rank;
        }
        i = j + 1;
    }
    out
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    let (rx, ry) = (ranks(x), ranks(y));
    let (mx, my) = (mean(&rx)?, mean(&ry)?);
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (a, b) in rx.iter().zip(&ry) {
        cov += (a - mx) * (b - my);
        vx += (a - mx) * (a - mx);
        vy += (b - my) * (b - my);
    }
    if vx == 0.0 || vy == 0.0 {
        return None;
    }
    Some(cov / (vx * vy).sqrt())
}

fn aggregate(rows: &[ExperimentRow], cells: usize) -> Vec<AggregateRow> {
    let mut out = Vec::with_capacity(cells);
    for cell in 0..cells {
        let members: Vec<&ExperimentRow> = rows.iter().filter(|r| r.cell == cell).collect();
        let Some(first) = members.first() else {
            continue;
        };
        let column = |f: fn(&ExperimentRow) -> Option<f64>| -> Vec<f64> {
            members.iter().filter_map(|r| f(r)).collect()
        };
        let eps = column(|r| r.epsilon);
        let ratio = column(|r| r.invest_ratio);
        let welfare = column(|r| r.welfare);
        let psne = members.iter().filter(|r| r.status == "psne").count();
        out.push(AggregateRow {
            cell,
            graph: first.graph.clone(),
            graph_params: first.graph_params.clone(),
            gamma: first.gamma,
            alpha_pool: first.alpha_pool.clone(),
            beta_pool: first.beta_pool.clone(),
            replications: members.len(),
            psne_rate: psne as f64 / members.len() as f64,
            epsilon_mean: mean(&eps),
            epsilon_std: sample_std(&eps),
            invest_ratio_mean: mean(&ratio),
            invest_ratio_std: sample_std(&ratio),
            welfare_mean: mean(&welfare),
            welfare_std: sample_std(&welfare),
        });
    }
    out
}

pub fn write_csv<T: Serialize, W: std::io::Write>(rows: &[T], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

/// Paths of the raw, aggregate and timing files for a raw output path.
pub fn output_paths(raw: &Path) -> (PathBuf, PathBuf, PathBuf) {
    let stem = raw
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "results".into());
    let sibling = |suffix: &str| raw.with_file_name(format!("{stem}_{suffix}.csv"));
    (raw.to_path_buf(), sibling("aggregate"), sibling("timing"))
}

impl ExperimentOutcome {
    /// Writes raw rows to `raw` plus `<stem>_aggregate.csv` and
    /// `<stem>_timing.csv` beside it. Only the timing file varies across runs.
    pub fn write(&self, raw: &Path) -> Result<(PathBuf, PathBuf, PathBuf)> {
        let (raw, agg, timing) = output_paths(raw);
        write_csv(&self.rows, std::fs::File::create(&raw)?)?;
        write_csv(&self.aggregates, std::fs::File::create(&agg)?)?;
        write_csv(&self.timings, std::fs::File::create(&timing)?)?;
        Ok((raw, agg, timing))
    }
}
