use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use hullbench::experiments::{self, CAPACITIES, NODE_BYTES};
use hullbench::{execute, write_csv, write_csv_atomic, Config, Params, Ratio, RunRecord, Source, StructureKind};
use hullkit::datagen::{format_points, generate, Dataset, GeneratorSpec};
use hullkit::predicates::audit_kernels;
use hullkit::KernelKind;

#[derive(Parser)]
#[command(name = "hullbench", version, about = "Benchmarks for incremental convex hull structures")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write generated points, one `x y` pair per line.
    Gen {
        #[arg(long, default_value = "box")]
        dataset: Dataset,
        #[arg(long, value_parser = parse_count, default_value = "1024")]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every structure's hull against a brute-force hull.
    Verify {
        #[arg(long, value_parser = parse_count, value_delimiter = ',', default_value = "16,128,1024,4096")]
        n: Vec<usize>,
        /// Number of seeds per size, starting at --seed.
        #[arg(long, default_value_t = 50)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_value = "box,bell,disk,circle")]
        dataset: Vec<Dataset>,
        #[arg(long, value_delimiter = ',', default_value = "all")]
        structure: Vec<String>,
        #[arg(long, default_value = "exact")]
        kernel: KernelKind,
    },
    /// Run an experiment and write its CSV.
    Bench {
        #[command(subcommand)]
        exp: Experiment,
    },
    /// Count predicate calls on which a kernel disagrees with the exact one.
    Audit {
        #[arg(long, default_value = "circle")]
        dataset: Dataset,
        #[arg(long, value_parser = parse_count, default_value = "16384")]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_value = "naive,quadratic")]
        kernel: Vec<KernelKind>,
    },
}

#[derive(Subcommand)]
enum Experiment {
    /// Fixed total of operations, split between inserts and queries.
    Ratio {
        /// Total operations.
        #[arg(long, value_parser = parse_count, default_value = "16384")]
        n: usize,
        /// INSERTS:QUERIES, comma-separated for a sweep.
        #[arg(long, value_delimiter = ',', default_value = "1:9,1:3,1:1,3:1,9:1")]
        ratio: Vec<Ratio>,
        #[command(flatten)]
        common: Common,
    },
    /// n inserts and n queries for each n.
    Scale {
        #[arg(long, value_parser = parse_count, value_delimiter = ',', default_value = "2^10,2^12,2^14,2^16,2^18")]
        n: Vec<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Grid over base capacities and B-tree node sizes on box and circle.
    Params {
        #[arg(long, value_parser = parse_count, default_value = "16384")]
        n: usize,
        #[arg(long, default_value = "1:1")]
        ratio: Ratio,
        #[command(flatten)]
        common: Common,
    },
    /// Every kernel, shadowed by the exact one.
    Kernels {
        #[arg(long, value_parser = parse_count, default_value = "16384")]
        n: usize,
        #[arg(long, default_value = "1:1")]
        ratio: Ratio,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Structure names, comma-separated, or `all`.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    structure: Vec<String>,
    #[arg(long, default_value = "quadratic")]
    kernel: KernelKind,
    /// A generator name or a point file.
    #[arg(long, default_value = "box")]
    dataset: Source,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = experiments::DEFAULT_REPEATS)]
    repeats: u32,
    /// Base bucket capacity; a list only for `params`.
    #[arg(long, value_parser = parse_count, value_delimiter = ',')]
    bucket_size: Vec<usize>,
    /// B-tree node size in bytes; a list only for `params`.
    #[arg(long, value_parser = parse_count, value_delimiter = ',')]
    btree_node_bytes: Vec<usize>,
    /// Per-run limit in seconds.
    #[arg(long, default_value_t = 10.0)]
    timeout: f64,
    /// CSV path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run one experiment at a time (the default).
    #[arg(long, conflicts_with = "jobs")]
    sequential: bool,
    /// Run this many experiments at once; timings are then not comparable.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

/// A count written as digits or as `2^k`.
fn parse_count(s: &str) -> Result<usize> {
    let s = s.trim();
    if let Some(k) = s.strip_prefix("2^") {
        let k: u32 = k.parse().with_context(|| format!("bad exponent in `{s}`"))?;
        return 1usize.checked_shl(k).filter(|_| k < usize::BITS).with_context(|| format!("`{s}` is too large"));
    }
    s.parse().with_context(|| format!("`{s}` is not a count"))
}

fn parse_structures(names: &[String]) -> Result<Vec<StructureKind>> {
    if names.iter().any(|n| n == "all") {
        return Ok(StructureKind::ALL.to_vec());
    }
    names.iter().map(|n| n.parse()).collect()
}

fn single(v: &[usize], flag: &str, default: usize) -> Result<usize> {
    match v {
        [] => Ok(default),
        [x] => Ok(*x),
        _ => bail!("--{flag} takes one value here; lists are for `bench params`"),
    }
}

impl Common {
    fn config(&self, grid: bool) -> Result<Config> {
        if !(self.timeout > 0.0 && self.timeout.is_finite()) {
            bail!("--timeout must be a positive number of seconds");
        }
        let d = Params::default();
        let params = if grid {
            d
        } else {
            Params {
                base_capacity: single(&self.bucket_size, "bucket-size", d.base_capacity)?,
                node_bytes: single(&self.btree_node_bytes, "btree-node-bytes", d.node_bytes)?,
            }
        };
        Ok(Config {
            structures: parse_structures(&self.structure)?,
            kernel: self.kernel,
            source: self.dataset.clone(),
            seed: self.seed,
            repeats: self.repeats,
            params,
            timeout: Duration::from_secs_f64(self.timeout),
        })
    }

    fn jobs(&self) -> usize {
        if self.sequential {
            1
        } else {
            self.jobs.max(1)
        }
    }

    fn emit(&self, records: &[RunRecord]) -> Result<()> {
        match &self.out {
            Some(p) => write_csv_atomic(p, records),
            None => write_csv(io::stdout().lock(), records),
        }
    }
}

fn bench(exp: Experiment) -> Result<()> {
    let (specs, common) = match exp {
        Experiment::Ratio { n, ratio, common } => (experiments::ratio_sweep(&common.config(false)?, n, &ratio)?, common),
        Experiment::Scale { n, common } => (experiments::scaling(&common.config(false)?, &n)?, common),
        Experiment::Params { n, ratio, common } => {
            let caps = if common.bucket_size.is_empty() { CAPACITIES.to_vec() } else { common.bucket_size.clone() };
            let nodes = if common.btree_node_bytes.is_empty() { NODE_BYTES.to_vec() } else { common.btree_node_bytes.clone() };
            (experiments::param_study(&common.config(true)?, n, ratio, &caps, &nodes)?, common)
        }
        Experiment::Kernels { n, ratio, common } => (experiments::kernel_study(&common.config(false)?, n, ratio)?, common),
    };
    let records = execute(&specs, common.jobs())?;
    common.emit(&records)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Gen { dataset, n, seed, out } => {
            let text = format_points(&generate(&GeneratorSpec::new(dataset, n, seed))?);
            match out {
                Some(p) => std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?,
                None => io::stdout().lock().write_all(text.as_bytes())?,
            }
            Ok(true)
        }
        Cmd::Verify { n, seeds, seed, dataset, structure, kernel } => {
            let structures = parse_structures(&structure)?;
            let rep = hullbench::verify(&n, seed..seed + seeds, &dataset, &structures, kernel, Params::default())?;
            for m in &rep.mismatches {
                println!("MISMATCH {m}");
            }
            println!("{} cases, {} mismatches", rep.cases, rep.mismatches.len());
            Ok(rep.ok())
        }
        Cmd::Bench { exp } => bench(exp).map(|_| true),
        Cmd::Audit { dataset, n, seed, kernel } => {
            let pts = generate(&GeneratorSpec::new(dataset, n, seed))?;
            println!("kernel,samples,slope_less,above_line,lies_right");
            for k in kernel {
                let r = audit_kernels(&pts, k);
                println!("{},{},{},{},{}", k, r.samples, r.slope_less, r.above_line, r.lies_right);
                if let Some(w) = &r.first_witness {
                    eprintln!("{k}: {} answered {} (exact {}) on {:?}", w.predicate, w.kernel_answer, w.exact_answer, w.points);
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
