//! Seeded point generators and a reader for plain-text point files.
//!
//! All generators draw from `ChaCha8Rng::seed_from_u64(seed)`, so a
//! `(kind, n, seed, extent)` tuple always yields the same points.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{HullError, Result};
use crate::geometry::Point;

pub const DEFAULT_EXTENT: f64 = 1000.0;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Dataset {
    /// Uniform in the square `[0, extent]^2`.
    Box,
    /// Gaussian around the centre of the square, sigma `extent / 6` per axis.
    Bell,
    /// Uniform by area in the disk inscribed in the square.
    Disk,
    /// Uniform angle on the circle inscribed in the square.
    Circle,
}

impl Dataset {
    pub const ALL: [Dataset; 4] = [Dataset::Box, Dataset::Bell, Dataset::Disk, Dataset::Circle];

    pub fn name(self) -> &'static str {
        match self {
            Dataset::Box => "box",
            Dataset::Bell => "bell",
            Dataset::Disk => "disk",
            Dataset::Circle => "circle",
        }
    }
}

impl fmt::Display for Dataset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Dataset {
    type Err = HullError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase();
        Dataset::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| HullError::InvalidParameter(format!("unknown dataset `{s}`")))
    }
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct GeneratorSpec {
    pub kind: Dataset,
    pub n: usize,
    pub seed: u64,
    pub extent: f64,
}

impl GeneratorSpec {
    pub fn new(kind: Dataset, n: usize, seed: u64) -> Self {
        GeneratorSpec { kind, n, seed, extent: DEFAULT_EXTENT }
    }

    pub fn with_extent(mut self, extent: f64) -> Self {
        self.extent = extent;
        self
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Vec<Point>> {
    let e = spec.extent;
    if !(e.is_finite() && e > 0.0) {
        return Err(HullError::InvalidParameter(format!("extent must be positive, got {e}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let c = e / 2.0;
    let mut out = Vec::with_capacity(spec.n);
    match spec.kind {
        Dataset::Box => {
            for _ in 0..spec.n {
                let x = rng.random::<f64>() * e;
                let y = rng.random::<f64>() * e;
                out.push(Point::new(x, y));
            }
        }
        Dataset::Bell => {
            let normal = Normal::new(c, e / 6.0).expect("sigma is positive");
            for _ in 0..spec.n {
                let x = normal.sample(&mut rng);
                let y = normal.sample(&mut rng);
                out.push(Point::new(x, y));
            }
        }
        Dataset::Disk => {
            for _ in 0..spec.n {
                let r = c * rng.random::<f64>().sqrt();
                let t = rng.random::<f64>() * std::f64::consts::TAU;
                out.push(Point::new(c + r * t.cos(), c + r * t.sin()));
            }
        }
        Dataset::Circle => {
            for _ in 0..spec.n {
                let t = rng.random::<f64>() * std::f64::consts::TAU;
                out.push(Point::new(c + c * t.cos(), c + c * t.sin()));
            }
        }
    }
    Ok(out)
}

/// Parses the point-file format: two whitespace-separated numbers per line,
/// `#` comment lines and blank lines ignored.
pub fn parse_points(text: &str) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| HullError::Parse { line: i + 1, msg };
        let mut fields = line.split_whitespace();
        let (Some(xs), Some(ys), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err(format!("expected two numbers, got `{line}`")));
        };
        let x: f64 = xs.parse().map_err(|_| err(format!("not a number: `{xs}`")))?;
        let y: f64 = ys.parse().map_err(|_| err(format!("not a number: `{ys}`")))?;
        if !(x.is_finite() && y.is_finite()) {
            return Err(err(format!("non-finite coordinate in `{line}`")));
        }
        out.push(Point::new(x, y));
    }
    Ok(out)
}

pub fn load_points(path: impl AsRef<Path>) -> Result<Vec<Point>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| HullError::Io(format!("{}: {e}", path.display())))?;
    parse_points(&text)
}

/// Writes points in the format read by [`load_points`], one per line with
/// round-trip precision.
pub fn format_points(points: &[Point]) -> String {
    let mut s = String::with_capacity(points.len() * 40);
    for p in points {
        s.push_str(&format!("{:?} {:?}\n", p.x, p.y));
    }
    s
}
