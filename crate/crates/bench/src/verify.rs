use anyhow::Result;
use hullkit::datagen::{generate, Dataset, GeneratorSpec};
use hullkit::{KernelKind, Point};

use crate::structures::{build, Params, StructureKind};

/// Outcome of comparing every structure's hull with the brute-force one.
#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub cases: usize,
    pub mismatches: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn oracle_hull(points: &[Point]) -> Vec<Point> {
    let raw: Vec<(f64, f64)> = points.iter().map(|p| (p.x, p.y)).collect();
    hull_oracle::canonical_hull(&raw).into_iter().map(|(x, y)| Point::new(x, y)).collect()
}

/// Builds each structure from generated points and checks `vertices()`
/// against the oracle hull of the same points.
pub fn verify(
    sizes: &[usize],
    seeds: impl IntoIterator<Item = u64> + Clone,
    datasets: &[Dataset],
    structures: &[StructureKind],
    kernel: KernelKind,
    params: Params,
) -> Result<VerifyReport> {
    let mut rep = VerifyReport::default();
    for &kind in datasets {
        for &n in sizes {
            for seed in seeds.clone() {
                let pts = generate(&GeneratorSpec::new(kind, n, seed))?;
                let want = oracle_hull(&pts);
                for &s in structures {
                    let mut h = build(s, kernel, params)?;
                    for &p in &pts {
                        h.insert(p)?;
                    }
                    rep.cases += 1;
                    let got = h.vertices();
                    if got != want {
                        rep.mismatches.push(format!(
                            "{s}/{kernel} on {kind} n={n} seed={seed}: {} vertices, oracle has {}",
                            got.len(),
                            want.len()
                        ));
                    }
                }
            }
        }
    }
    Ok(rep)
}
