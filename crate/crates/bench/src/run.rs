use std::fmt;
use std::hint::black_box;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use hullkit::datagen::{generate, load_points, Dataset, GeneratorSpec};
use hullkit::{KernelKind, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::record::RunRecord;
use crate::structures::{build, Params, StructureKind};

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(10);

/// Query points come from the same distribution under a derived seed.
const QUERY_SEED_MIX: u64 = 0x9e37_79b9_7f4a_7c15;
/// Operations per timed batch; a batch holds inserts and queries in ratio.
const BATCH_OPS: usize = 64;
/// Inserts between two memory samples.
const MEMORY_SAMPLE_EVERY: usize = 256;
/// Inserts between two full vertex comparisons in a divergence check.
const FULL_CHECK_EVERY: usize = 1024;

#[derive(Clone, PartialEq, Debug)]
pub enum Source {
    Generated(Dataset),
    File(PathBuf),
}

impl Source {
    pub fn name(&self) -> String {
        match self {
            Source::Generated(d) => d.name().to_string(),
            Source::File(p) => p.display().to_string(),
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Source {
    type Err = anyhow::Error;

    /// A generator name, or else the path of a point file.
    fn from_str(s: &str) -> Result<Self> {
        if let Ok(d) = s.parse::<Dataset>() {
            return Ok(Source::Generated(d));
        }
        let p = PathBuf::from(s);
        if p.is_file() {
            Ok(Source::File(p))
        } else {
            bail!("`{s}` is neither a dataset (box, bell, disk, circle) nor a readable file")
        }
    }
}

/// Inserts and queries `a:b`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Ratio {
    pub inserts: usize,
    pub queries: usize,
}

impl Ratio {
    /// Splits `total` operations in this ratio.
    pub fn split(self, total: usize) -> (usize, usize) {
        let sum = (self.inserts + self.queries) as u128;
        let ins = ((total as u128 * self.inserts as u128 + sum / 2) / sum) as usize;
        (ins, total - ins)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.inserts, self.queries)
    }
}

impl FromStr for Ratio {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let Some((a, b)) = s.split_once(':') else {
            bail!("ratio `{s}` must look like INSERTS:QUERIES");
        };
        let inserts = a.trim().parse().with_context(|| format!("ratio `{s}`"))?;
        let queries = b.trim().parse().with_context(|| format!("ratio `{s}`"))?;
        if inserts == 0 && queries == 0 {
            bail!("ratio `{s}` has no operations");
        }
        Ok(Ratio { inserts, queries })
    }
}

/// Insert and query points for one run.
#[derive(Clone, Debug)]
pub struct Workload {
    pub inserts: Vec<Point>,
    pub queries: Vec<Point>,
}

pub fn workload(source: &Source, n_insert: usize, n_query: usize, seed: u64) -> Result<Workload> {
    match source {
        Source::Generated(kind) => Ok(Workload {
            inserts: generate(&GeneratorSpec::new(*kind, n_insert, seed))?,
            queries: generate(&GeneratorSpec::new(*kind, n_query, seed ^ QUERY_SEED_MIX))?,
        }),
        Source::File(path) => {
            let pts = load_points(path)?;
            if n_insert > pts.len() {
                bail!("{} holds {} points, {n_insert} requested", path.display(), pts.len());
            }
            if n_query > 0 && pts.is_empty() {
                bail!("{} holds no points to draw queries from", path.display());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ QUERY_SEED_MIX);
            let queries = (0..n_query).map(|_| pts[rng.random_range(0..pts.len())]).collect();
            Ok(Workload { inserts: pts[..n_insert].to_vec(), queries })
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunSpec {
    pub experiment: String,
    pub structure: StructureKind,
    pub kernel: KernelKind,
    pub source: Source,
    pub n_insert: usize,
    pub n_query: usize,
    pub seed: u64,
    pub repeat: u32,
    pub params: Params,
    pub timeout: Duration,
    /// Also replay the inserts against the exact kernel and record whether
    /// the hulls ever differ in `predicate_errors`.
    pub shadow: bool,
}

impl RunSpec {
    fn record(&self) -> RunRecord {
        RunRecord {
            experiment: self.experiment.clone(),
            structure: self.structure.name().to_string(),
            kernel: self.kernel.name().to_string(),
            dataset: self.source.name(),
            seed: self.seed,
            repeat: self.repeat,
            n_insert: self.n_insert,
            n_query: self.n_query,
            time_insert_s: None,
            time_query_s: None,
            hull_size: 0,
            peak_bytes: 0,
            predicate_errors: 0,
            timed_out: false,
        }
    }
}

/// Runs interleaved inserts and containment queries, timing each kind
/// separately. Data generation and memory sampling are not timed.
///
/// A panic inside the structure is an error, except in a shadowed run,
/// where it is a predicate error and the times cover the batches that
/// finished before it.
pub fn run_once(spec: &RunSpec) -> Result<RunRecord> {
    let w = workload(&spec.source, spec.n_insert, spec.n_query, spec.seed)?;
    let mut rec = spec.record();
    let mut t = Timing::default();
    let res = catch_unwind(AssertUnwindSafe(|| timed(spec, &w, &mut rec, &mut t)));
    match res {
        Ok(r) => r?,
        Err(_) if spec.shadow => rec.predicate_errors = 1,
        Err(_) => bail!("{} panicked under the {} kernel", spec.structure, spec.kernel),
    }
    if !rec.timed_out {
        rec.time_insert_s = Some(t.insert.as_secs_f64());
        rec.time_query_s = Some(t.query.as_secs_f64());
    }
    if spec.shadow && rec.predicate_errors == 0 && spec.kernel != KernelKind::Exact {
        let d = first_divergence(spec.structure, spec.kernel, spec.params, &w.inserts)?;
        rec.predicate_errors = u64::from(d.is_some());
    }
    Ok(rec)
}

#[derive(Default)]
struct Timing {
    insert: Duration,
    query: Duration,
}

fn timed(spec: &RunSpec, w: &Workload, rec: &mut RunRecord, t: &mut Timing) -> Result<()> {
    let mut s = build(spec.structure, spec.kernel, spec.params)?;
    let (ni, nq) = (w.inserts.len(), w.queries.len());
    let per_batch_i = if nq == 0 { BATCH_OPS } else { (BATCH_OPS * ni).div_ceil(ni + nq).max(usize::from(ni > 0)) };
    let per_batch_q = if ni == 0 { BATCH_OPS } else { (BATCH_OPS * nq).div_ceil(ni + nq).max(usize::from(nq > 0)) };

    let start = Instant::now();
    let (mut i, mut q) = (0, 0);
    rec.peak_bytes = s.memory_bytes();
    let mut next_sample = MEMORY_SAMPLE_EVERY;
    let mut hits = 0usize;
    while i < ni || q < nq {
        let ie = (i + per_batch_i).min(ni);
        let t0 = Instant::now();
        for &p in &w.inserts[i..ie] {
            s.insert(p)?;
        }
        t.insert += t0.elapsed();
        i = ie;
        if i >= next_sample {
            rec.peak_bytes = rec.peak_bytes.max(s.memory_bytes());
            next_sample = i + MEMORY_SAMPLE_EVERY;
        }
        let qe = (q + per_batch_q).min(nq);
        let t0 = Instant::now();
        for &p in &w.queries[q..qe] {
            hits += usize::from(s.contains(p));
        }
        t.query += t0.elapsed();
        q = qe;
        if start.elapsed() > spec.timeout {
            rec.timed_out = true;
            break;
        }
    }
    black_box(hits);
    rec.peak_bytes = rec.peak_bytes.max(s.memory_bytes());
    rec.hull_size = s.hull_size();
    Ok(())
}

/// Inserts `points` into a structure under `kernel` and into the same
/// structure under the exact kernel, and returns the number of inserts
/// after which their hulls first differ. A panic under `kernel` counts as
/// a divergence at that insert.
pub fn first_divergence(
    structure: StructureKind,
    kernel: KernelKind,
    params: Params,
    points: &[Point],
) -> Result<Option<usize>> {
    let mut s = build(structure, kernel, params)?;
    let mut exact = build(structure, KernelKind::Exact, params)?;
    for (k, &p) in points.iter().enumerate() {
        let want = exact.insert(p)?;
        let step = catch_unwind(AssertUnwindSafe(|| -> Result<bool> {
            let got = s.insert(p)?;
            let mut same = got == want && s.hull_size() == exact.hull_size();
            if same && ((k + 1) % FULL_CHECK_EVERY == 0 || k + 1 == points.len()) {
                same = s.vertices() == exact.vertices();
            }
            Ok(same)
        }));
        match step {
            Ok(Ok(true)) => {}
            Ok(Ok(false)) | Err(_) => return Ok(Some(k + 1)),
            Ok(Err(e)) => return Err(e),
        }
    }
    Ok(None)
}
