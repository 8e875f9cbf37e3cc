use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::Duration;

use anyhow::{bail, Result};
use hullkit::datagen::Dataset;
use hullkit::KernelKind;

use crate::record::RunRecord;
use crate::run::{run_once, Ratio, RunSpec, Source, DEFAULT_TIMEOUT};
use crate::structures::{Params, StructureKind};

pub const DEFAULT_REPEATS: u32 = 5;
pub const CAPACITIES: [usize; 4] = [8, 64, 512, 4096];
pub const NODE_BYTES: [usize; 4] = [16, 256, 1024, 4096];
pub const PARAM_DATASETS: [Dataset; 2] = [Dataset::Box, Dataset::Circle];

/// Settings shared by every experiment.
#[derive(Clone, Debug)]
pub struct Config {
    pub structures: Vec<StructureKind>,
    pub kernel: KernelKind,
    pub source: Source,
    pub seed: u64,
    pub repeats: u32,
    pub params: Params,
    pub timeout: Duration,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            structures: StructureKind::ALL.to_vec(),
            kernel: KernelKind::Quadratic,
            source: Source::Generated(Dataset::Box),
            seed: 0,
            repeats: DEFAULT_REPEATS,
            params: Params::default(),
            timeout: DEFAULT_TIMEOUT,
        }
    }
}

impl Config {
    fn validate(&self) -> Result<()> {
        if self.repeats == 0 {
            bail!("repeats must be at least 1");
        }
        if self.structures.is_empty() {
            bail!("no structures selected");
        }
        Ok(())
    }

    /// Repeat `r` runs on data seeded with `seed + r`.
    fn spec(&self, experiment: &str, structure: StructureKind, n_insert: usize, n_query: usize, repeat: u32) -> RunSpec {
        RunSpec {
            experiment: experiment.to_string(),
            structure,
            kernel: self.kernel,
            source: self.source.clone(),
            n_insert,
            n_query,
            seed: self.seed.wrapping_add(u64::from(repeat)),
            repeat,
            params: self.params,
            timeout: self.timeout,
            shadow: false,
        }
    }
}

/// `n_total` operations split by each ratio.
pub fn ratio_sweep(cfg: &Config, n_total: usize, ratios: &[Ratio]) -> Result<Vec<RunSpec>> {
    cfg.validate()?;
    let mut out = Vec::new();
    for &ratio in ratios {
        let (ni, nq) = ratio.split(n_total);
        for r in 0..cfg.repeats {
            for &s in &cfg.structures {
                out.push(cfg.spec("ratio", s, ni, nq, r));
            }
        }
    }
    Ok(out)
}

/// `n` inserts and `n` queries for each `n`, ascending.
pub fn scaling(cfg: &Config, sizes: &[usize]) -> Result<Vec<RunSpec>> {
    cfg.validate()?;
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        bail!("sizes must be strictly ascending: {sizes:?}");
    }
    let mut out = Vec::new();
    for &n in sizes {
        for r in 0..cfg.repeats {
            for &s in &cfg.structures {
                out.push(cfg.spec("scale", s, n, n, r));
            }
        }
    }
    Ok(out)
}

/// Base capacities for the bucketed structures and node sizes for the
/// B-tree ones, each on box and circle data. The parameter value goes in
/// the experiment column, e.g. `params:bucket_size=512`.
pub fn param_study(cfg: &Config, n_total: usize, ratio: Ratio, capacities: &[usize], node_bytes: &[usize]) -> Result<Vec<RunSpec>> {
    cfg.validate()?;
    if capacities.is_empty() || node_bytes.is_empty() {
        bail!("parameter lists must not be empty");
    }
    let (ni, nq) = ratio.split(n_total);
    let mut out = Vec::new();
    for d in PARAM_DATASETS {
        let base = Config { source: Source::Generated(d), ..cfg.clone() };
        for &c in capacities {
            let cfg = Config { params: Params { base_capacity: c, ..base.params }, ..base.clone() };
            for r in 0..cfg.repeats {
                for s in cfg.structures.iter().filter(|s| s.is_log()) {
                    out.push(cfg.spec(&format!("params:bucket_size={c}"), *s, ni, nq, r));
                }
            }
        }
        for &b in node_bytes {
            let cfg = Config { params: Params { node_bytes: b, ..base.params }, ..base.clone() };
            let btrees = [StructureKind::Btree, StructureKind::LogBtree];
            for r in 0..cfg.repeats {
                for s in cfg.structures.iter().filter(|s| btrees.contains(s)) {
                    out.push(cfg.spec(&format!("params:node_bytes={b}"), *s, ni, nq, r));
                }
            }
        }
    }
    Ok(out)
}

/// Every kernel on every structure; inexact kernels are shadowed by the
/// exact one, so `predicate_errors` is 1 for a run whose hull diverged.
pub fn kernel_study(cfg: &Config, n_total: usize, ratio: Ratio) -> Result<Vec<RunSpec>> {
    cfg.validate()?;
    let (ni, nq) = ratio.split(n_total);
    let mut out = Vec::new();
    for k in KernelKind::ALL {
        let cfg = Config { kernel: k, ..cfg.clone() };
        for r in 0..cfg.repeats {
            for &s in &cfg.structures {
                out.push(RunSpec { shadow: true, ..cfg.spec("kernels", s, ni, nq, r) });
            }
        }
    }
    Ok(out)
}

/// Runs the specs on up to `jobs` threads and returns records in spec
/// order. Use one job for timings meant to be compared.
pub fn execute(specs: &[RunSpec], jobs: usize) -> Result<Vec<RunRecord>> {
    let jobs = jobs.clamp(1, specs.len().max(1));
    if jobs == 1 {
        return specs.iter().map(run_once).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<RunRecord>>>> = Mutex::new((0..specs.len()).map(|_| None).collect());
    thread::scope(|sc| {
        for _ in 0..jobs {
            sc.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(spec) = specs.get(i) else { break };
                let r = run_once(spec);
                slots.lock().unwrap()[i] = Some(r);
            });
        }
    });
    slots.into_inner().unwrap().into_iter().map(|r| r.expect("every spec ran")).collect()
}

/// Mean total time per (experiment, structure, kernel, dataset, n_insert,
/// n_query) over the records that finished, in first-seen order.
pub fn mean_totals(records: &[RunRecord]) -> Vec<(String, f64)> {
    let mut keys: Vec<String> = Vec::new();
    let mut sums: Vec<(f64, usize)> = Vec::new();
    for r in records {
        let Some(t) = r.total_time() else { continue };
        let key = format!("{} {} {} {} {}+{}", r.experiment, r.structure, r.kernel, r.dataset, r.n_insert, r.n_query);
        match keys.iter().position(|k| *k == key) {
            Some(i) => {
                sums[i].0 += t;
                sums[i].1 += 1;
            }
            None => {
                keys.push(key);
                sums.push((t, 1));
            }
        }
    }
    keys.into_iter().zip(sums).map(|(k, (s, c))| (k, s / c as f64)).collect()
}
