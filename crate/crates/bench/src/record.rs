use std::io::{Read, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};

pub const HEADER: [&str; 14] = [
    "experiment",
    "structure",
    "kernel",
    "dataset",
    "seed",
    "repeat",
    "n_insert",
    "n_query",
    "time_insert_s",
    "time_query_s",
    "hull_size",
    "peak_bytes",
    "predicate_errors",
    "timed_out",
];

/// One CSV row. Timing fields are `None` exactly when the run timed out.
#[derive(Clone, PartialEq, Debug)]
pub struct RunRecord {
    pub experiment: String,
    pub structure: String,
    pub kernel: String,
    pub dataset: String,
    pub seed: u64,
    pub repeat: u32,
    pub n_insert: usize,
    pub n_query: usize,
    pub time_insert_s: Option<f64>,
    pub time_query_s: Option<f64>,
    pub hull_size: usize,
    pub peak_bytes: usize,
    pub predicate_errors: u64,
    pub timed_out: bool,
}

impl RunRecord {
    pub fn total_time(&self) -> Option<f64> {
        Some(self.time_insert_s? + self.time_query_s?)
    }

    fn fields(&self) -> [String; 14] {
        let time = |t: Option<f64>| t.map(|t| format!("{t:?}")).unwrap_or_default();
        [
            self.experiment.clone(),
            self.structure.clone(),
            self.kernel.clone(),
            self.dataset.clone(),
            self.seed.to_string(),
            self.repeat.to_string(),
            self.n_insert.to_string(),
            self.n_query.to_string(),
            time(self.time_insert_s),
            time(self.time_query_s),
            self.hull_size.to_string(),
            self.peak_bytes.to_string(),
            self.predicate_errors.to_string(),
            self.timed_out.to_string(),
        ]
    }

    fn from_fields(r: &csv::StringRecord) -> Result<RunRecord> {
        if r.len() != HEADER.len() {
            bail!("expected {} fields, got {}", HEADER.len(), r.len());
        }
        let f = |i: usize| &r[i];
        let num = |i: usize| -> Result<u64> { f(i).parse().with_context(|| format!("column {}: `{}`", HEADER[i], f(i))) };
        let time = |i: usize| -> Result<Option<f64>> {
            if f(i).is_empty() {
                return Ok(None);
            }
            let t: f64 = f(i).parse().with_context(|| format!("column {}: `{}`", HEADER[i], f(i)))?;
            if !(t >= 0.0 && t.is_finite()) {
                bail!("column {}: negative or non-finite time {t}", HEADER[i]);
            }
            Ok(Some(t))
        };
        let rec = RunRecord {
            experiment: f(0).to_string(),
            structure: f(1).to_string(),
            kernel: f(2).to_string(),
            dataset: f(3).to_string(),
            seed: num(4)?,
            repeat: u32::try_from(num(5)?)?,
            n_insert: usize::try_from(num(6)?)?,
            n_query: usize::try_from(num(7)?)?,
            time_insert_s: time(8)?,
            time_query_s: time(9)?,
            hull_size: usize::try_from(num(10)?)?,
            peak_bytes: usize::try_from(num(11)?)?,
            predicate_errors: num(12)?,
            timed_out: f(13).parse().with_context(|| format!("column timed_out: `{}`", f(13)))?,
        };
        if rec.timed_out != (rec.time_insert_s.is_none() || rec.time_query_s.is_none()) {
            bail!("timing fields must be empty exactly when timed_out is true");
        }
        Ok(rec)
    }
}

pub fn write_csv<W: Write>(out: W, records: &[RunRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in records {
        w.write_record(r.fields())?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the CSV next to `path` and renames it into place, so readers
/// never see a partial file.
pub fn write_csv_atomic(path: &Path, records: &[RunRecord]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating a file in {}", dir.display()))?;
    write_csv(&mut tmp, records)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<RunRecord>> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers()?.clone();
    if header.iter().ne(HEADER) {
        bail!("unexpected header: {}", header.iter().collect::<Vec<_>>().join(","));
    }
    let mut out = Vec::new();
    for (i, row) in rd.records().enumerate() {
        let row = row?;
        out.push(RunRecord::from_fields(&row).with_context(|| format!("row {}", i + 2))?);
    }
    Ok(out)
}
