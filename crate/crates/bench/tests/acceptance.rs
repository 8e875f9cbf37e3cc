//! Acceptance criteria, run in order on one thread so that the timing
//! criteria see an otherwise idle process. Prints one PASS or FAIL line per
//! criterion and exits nonzero if any failed.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::HashMap;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use common::probes::{self, Probe};
use common::{filled, sim};
use hullbench::experiments::{execute, param_study, ratio_sweep};
use hullbench::{first_divergence, run_once, verify, Config, Params, Ratio, RunRecord, RunSpec, Source, StructureKind};
use hullkit::datagen::{generate, Dataset, GeneratorSpec};
use hullkit::hull::HullSeq;
use hullkit::stores::{BSeq, NodeBytes};
use hullkit::{Exact, Kernel, KernelKind, LogStructure, Point, Quadratic, VectorStore};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn oracle_equivalence() -> Outcome {
    let rep = verify(
        &[16, 128, 1024, 4096],
        0..50,
        &Dataset::ALL,
        &StructureKind::ALL,
        KernelKind::Exact,
        Params::default(),
    )
    .map_err(|e| e.to_string())?;
    let mut detail = format!("{} structure builds, {} mismatches", rep.cases, rep.mismatches.len());
    if let Some(m) = rep.mismatches.first() {
        detail += &format!("; first: {m}");
    }
    check(rep.ok() && rep.cases == 4 * 4 * 50 * 6, detail)
}

fn integral(kind: Dataset, n: usize, seed: u64) -> Vec<Point> {
    let spec = GeneratorSpec::new(kind, n, seed).with_extent((1u64 << 25) as f64);
    generate(&spec).unwrap().into_iter().map(|q| Point::new(q.x.round(), q.y.round())).collect()
}

fn probe_all<K: Kernel>(sets: &[Vec<Point>], rounds: usize, integral: bool) -> Result<usize, String> {
    let mut probes = 0;
    for (i, pts) in sets.iter().enumerate() {
        let mut pr = Probe::new(pts, 1000 + i as u64);
        let all = filled::<K>(pts);
        for (query, check) in probes::ALL {
            for _ in 0..rounds {
                check(&all, &mut pr, integral).map_err(|e| format!("{query} on {} points: {e}", pts.len()))?;
            }
        }
        probes += rounds;
    }
    Ok(probes)
}

/// Log structures answer `contains` and `line_intersect` with their
/// combined-bucket algorithms, so those are covered by the same probes.
fn query_oracles() -> Outcome {
    let mut least = usize::MAX;
    for kind in Dataset::ALL {
        let sets: Vec<Vec<Point>> =
            [(50, 1), (700, 2), (3000, 3)].iter().map(|&(n, s)| generate(&GeneratorSpec::new(kind, n, s)).unwrap()).collect();
        least = least.min(probe_all::<Exact>(&sets, 350, false).map_err(|e| format!("exact, {kind}: {e}"))?);
        let ints: Vec<Vec<Point>> = [(50, 4), (700, 5), (3000, 6)].iter().map(|&(n, s)| integral(kind, n, s)).collect();
        least = least.min(probe_all::<Quadratic>(&ints, 350, true).map_err(|e| format!("quadratic, {kind}: {e}"))?);
    }
    check(least >= 1000, format!("{least} probes per query kind, generator and kernel; all match"))
}

fn kernel_robustness() -> Outcome {
    let n = 1 << 14;
    let mut failures = Vec::new();
    let mut lines = Vec::new();
    for kind in Dataset::ALL {
        let mut counts = HashMap::new();
        for seed in 0..10 {
            let pts = generate(&GeneratorSpec::new(kind, n, seed)).unwrap();
            for k in [KernelKind::Naive, KernelKind::Quadratic] {
                let d = first_divergence(StructureKind::Vector, k, Params::default(), &pts).map_err(|e| e.to_string())?;
                *counts.entry(k).or_insert(0) += usize::from(d.is_some());
            }
        }
        let (naive, quad) = (counts[&KernelKind::Naive], counts[&KernelKind::Quadratic]);
        lines.push(format!("{kind}: naive {naive}/10, quadratic {quad}/10"));
        if quad != 0 {
            failures.push(format!("quadratic diverged on {kind}"));
        }
        match kind {
            Dataset::Circle if naive < 8 => failures.push(format!("naive diverged in {naive}/10 circle runs, need >= 8")),
            Dataset::Circle => {}
            _ if naive != 0 => failures.push(format!("naive diverged on {kind}")),
            _ => {}
        }
    }
    let detail = lines.join("; ");
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{}; {detail}", failures.join(", ")))
    }
}

fn scheme_one<S: HullSeq, K: Kernel>(s: &LogStructure<S, K>) -> Result<(), String> {
    let (want, base) = sim::occupancy(s.inserted(), s.base_capacity());
    let got: Vec<(usize, usize)> = s.occupancy().iter().map(|i| (i.level, i.virtual_size)).collect();
    if got != want || s.base_count() != base {
        return Err(format!("after {} inserts: {got:?} + {} vs {want:?} + {base}", s.inserted(), s.base_count()));
    }
    if got.iter().any(|&(level, size)| size != 1 << level) {
        return Err(format!("level sizes {got:?}"));
    }
    let total = got.iter().map(|l| l.1).sum::<usize>() + s.base_count();
    if total as u64 != s.inserted() {
        return Err(format!("{total} points accounted for after {} inserts", s.inserted()));
    }
    Ok(())
}

/// Random mixes of inserts (from all generators) and queries; the level
/// layout is compared with the counter model after every operation.
fn bucket_automaton() -> Outcome {
    const OPS: usize = 100_000;
    let pools: Vec<Vec<Point>> = Dataset::ALL.iter().map(|&k| generate(&GeneratorSpec::new(k, OPS, 77)).unwrap()).collect();
    let mut checked = 0;
    for run in 0..4u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(run);
        let cap = 1 << rng.random_range(1..8);
        let mut lin = LogStructure::<Vec<Point>, Quadratic>::linear(cap).map_err(|e| e.to_string())?;
        let mut bt = LogStructure::<BSeq, Quadratic>::btree(cap, NodeBytes(64)).map_err(|e| e.to_string())?;
        let mut inserts = 0;
        for op in 0..OPS {
            let p = pools[rng.random_range(0..pools.len())][rng.random_range(0..OPS)];
            if rng.random_bool(0.7) {
                lin.insert(p).map_err(|e| e.to_string())?;
                bt.insert(p).map_err(|e| e.to_string())?;
                inserts += 1;
            } else if lin.contains_combined(p) != bt.contains_combined(p) {
                return Err(format!("run {run}, op {op}: structures disagree on {p:?}"));
            }
            scheme_one(&lin).map_err(|e| format!("run {run} linear cap {cap}, op {op}: {e}"))?;
            scheme_one(&bt).map_err(|e| format!("run {run} btree cap {cap}, op {op}: {e}"))?;
            checked += 2;
        }
        if inserts as u64 != lin.inserted() {
            return Err(format!("run {run}: insert count {} vs {inserts}", lin.inserted()));
        }
    }
    Ok(format!("4 runs x {OPS} ops, {checked} layout checks, all match the counter model"))
}

fn hull_size(points: &[Point]) -> usize {
    let mut h = VectorStore::<Quadratic>::new();
    for &p in points {
        h.insert(p).unwrap();
    }
    h.hull_size()
}

fn median_hull(kind: Dataset, n: usize, seeds: u64) -> f64 {
    let mut v: Vec<usize> = (0..seeds).map(|s| hull_size(&generate(&GeneratorSpec::new(kind, n, s)).unwrap())).collect();
    v.sort_unstable();
    v[v.len() / 2] as f64
}

fn hull_growth() -> Outcome {
    let n = 1 << 14;
    let circle = hull_size(&generate(&GeneratorSpec::new(Dataset::Circle, n, 0)).unwrap());
    let boxes: Vec<usize> = (0..4).map(|s| hull_size(&generate(&GeneratorSpec::new(Dataset::Box, 1 << 20, s)).unwrap())).collect();
    let box_mean = boxes.iter().sum::<usize>() as f64 / boxes.len() as f64;
    // Least-squares fit of h = c * n^(1/3) through the origin.
    let fit_n: Vec<usize> = (10..=16).step_by(2).map(|k| 1 << k).collect();
    let fit_h: Vec<f64> = fit_n.iter().map(|&n| median_hull(Dataset::Disk, n, 5)).collect();
    let cube: Vec<f64> = fit_n.iter().map(|&n| (n as f64).cbrt()).collect();
    let c = fit_h.iter().zip(&cube).map(|(h, x)| h * x).sum::<f64>() / cube.iter().map(|x| x * x).sum::<f64>();
    let probe = 1 << 18;
    let big = hull_size(&generate(&GeneratorSpec::new(Dataset::Disk, probe, 99)).unwrap()) as f64;
    let ratios: Vec<f64> = fit_h.iter().zip(&cube).map(|(h, x)| h / (c * x)).chain([big / (c * (probe as f64).cbrt())]).collect();
    let disk_ok = ratios.iter().all(|r| (0.3..=10.0).contains(r));
    check(
        circle * 2 >= n && box_mean <= 120.0 && disk_ok,
        format!(
            "circle {circle}/{n}; box mean {box_mean:.1} over {boxes:?} at 2^20; disk c = {c:.2}, ratios to fit {:?}",
            ratios.iter().map(|r| (r * 100.0).round() / 100.0).collect::<Vec<_>>()
        ),
    )
}

fn mean_total(records: &[RunRecord]) -> HashMap<(String, String), f64> {
    let mut acc: HashMap<(String, String), (f64, usize)> = HashMap::new();
    for r in records {
        let e = acc.entry((r.dataset.clone(), r.structure.clone())).or_default();
        match r.total_time() {
            Some(t) => {
                e.0 += t;
                e.1 += 1;
            }
            None => e.0 = f64::INFINITY,
        }
    }
    acc.into_iter().map(|(k, (s, c))| (k, if c == 0 { f64::INFINITY } else { s / c as f64 })).collect()
}

fn orderings_once() -> Outcome {
    let mut failures = Vec::new();
    let mut lines = Vec::new();
    for kind in Dataset::ALL {
        let cfg = Config { source: Source::Generated(kind), kernel: KernelKind::Quadratic, ..Config::default() };
        let specs = ratio_sweep(&cfg, 1 << 15, &[Ratio { inserts: 1, queries: 1 }]).map_err(|e| e.to_string())?;
        let recs = execute(&specs, 1).map_err(|e| e.to_string())?;
        let means = mean_total(&recs);
        let t = |s: StructureKind| means[&(kind.name().to_string(), s.name().to_string())];
        let best = |pick: &dyn Fn(StructureKind) -> bool| {
            StructureKind::ALL.into_iter().filter(|&s| pick(s)).map(|s| (t(s), s)).min_by(|a, b| a.0.total_cmp(&b.0)).unwrap()
        };
        lines.push(format!(
            "{kind}: {}",
            StructureKind::ALL.iter().map(|&s| format!("{s} {:.2}ms", t(s) * 1e3)).collect::<Vec<_>>().join(" ")
        ));
        let (tree, tree_s) = best(&|s| s.is_tree());
        let (other, other_s) = best(&|s| !s.is_tree());
        if tree * 1.0 < other * 1.5 {
            failures.push(format!("{kind}: tree {tree_s} within 1.5x of fastest non-tree {other_s}"));
        }
        match kind {
            Dataset::Box | Dataset::Bell => {
                let (rest, rest_s) = best(&|s| s != StructureKind::Vector);
                if t(StructureKind::Vector) * 1.5 > rest {
                    failures.push(format!("{kind}: vector not 1.5x faster than {rest_s}"));
                }
            }
            Dataset::Circle => {
                let (log, log_s) = best(&|s| s.is_log());
                let (rest, rest_s) = best(&|s| !s.is_log());
                if log * 1.5 > rest {
                    failures.push(format!("circle: {log_s} not 1.5x faster than {rest_s}"));
                }
                if t(StructureKind::Vector) < 10.0 * log {
                    failures.push(format!("circle: vector only {:.2}x slower than {log_s}, need 10x", t(StructureKind::Vector) / log));
                }
            }
            Dataset::Disk => {}
        }
    }
    let detail = lines.join("; ");
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{}; {detail}", failures.join("; ")))
    }
}

/// One rerun is allowed for a noisy machine.
fn performance_orderings() -> Outcome {
    orderings_once().or_else(|first| orderings_once().map_err(|second| format!("{second} (first attempt: {first})")))
}

fn memory_ordering() -> Outcome {
    let peak = |structure| -> Result<usize, String> {
        let spec = RunSpec {
            experiment: "memory".into(),
            structure,
            kernel: KernelKind::Quadratic,
            source: Source::Generated(Dataset::Circle),
            n_insert: 1 << 17,
            n_query: 0,
            seed: 0,
            repeat: 0,
            params: Params::default(),
            timeout: std::time::Duration::from_secs(600),
            shadow: false,
        };
        run_once(&spec).map(|r| r.peak_bytes).map_err(|e| e.to_string())
    };
    let v = peak(StructureKind::Vector)?;
    let b = peak(StructureKind::Btree)?;
    let a = peak(StructureKind::Avl)?;
    let ratio = a as f64 / v as f64;
    check(
        v < b && b < a && ratio >= 2.0,
        format!("vector {v} B, btree {b} B ({:.2}x), avl {a} B ({ratio:.2}x)", b as f64 / v as f64),
    )
}

fn param_orderings() -> Outcome {
    let cfg = Config {
        structures: vec![StructureKind::LogLinear, StructureKind::Btree],
        kernel: KernelKind::Quadratic,
        ..Config::default()
    };
    let specs = param_study(&cfg, 1 << 15, Ratio { inserts: 1, queries: 1 }, &[512, 4096], &[16, 1024]).map_err(|e| e.to_string())?;
    let recs = execute(&specs, 1).map_err(|e| e.to_string())?;
    let mean = |experiment: &str, structure: StructureKind, f: &dyn Fn(&RunRecord) -> Option<f64>| {
        let v: Vec<f64> = recs
            .iter()
            .filter(|r| r.dataset == "circle" && r.experiment == experiment && r.structure == structure.name())
            .map(|r| f(r).unwrap_or(f64::INFINITY))
            .collect();
        v.iter().sum::<f64>() / v.len() as f64
    };
    let ins = |r: &RunRecord| r.time_insert_s;
    let total = |r: &RunRecord| r.total_time();
    let c512 = mean("params:bucket_size=512", StructureKind::LogLinear, &ins);
    let c4096 = mean("params:bucket_size=4096", StructureKind::LogLinear, &ins);
    let b1024 = mean("params:node_bytes=1024", StructureKind::Btree, &total);
    let b16 = mean("params:node_bytes=16", StructureKind::Btree, &total);
    check(
        c512 <= c4096 && b1024 <= b16,
        format!(
            "log-linear circle inserts: cap 512 {:.2}ms, cap 4096 {:.2}ms; btree circle overall: 1024 B {:.2}ms, 16 B {:.2}ms",
            c512 * 1e3,
            c4096 * 1e3,
            b1024 * 1e3,
            b16 * 1e3
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("bucket automaton", bucket_automaton),
        ("performance orderings", performance_orderings),
        ("memory ordering", memory_ordering),
        ("parameter orderings", param_orderings),
        ("oracle equivalence", oracle_equivalence),
        ("query oracles", query_oracles),
        ("kernel robustness", kernel_robustness),
        ("hull growth", hull_growth),
    ];
    let mut failed = 0;
    let mut out = std::io::stdout();
    for (name, run) in criteria {
        let t = Instant::now();
        let res = run();
        let secs = t.elapsed().as_secs_f64();
        let (tag, detail) = match &res {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        writeln!(out, "{tag} {name} ({secs:.1}s): {detail}").unwrap();
        out.flush().unwrap();
        failed += usize::from(res.is_err());
    }
    writeln!(out, "{} of {} criteria passed", criteria.len() - failed, criteria.len()).unwrap();
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
