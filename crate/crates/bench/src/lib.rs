//! Benchmark harness for `hullkit`: builds workloads, times structures on
//! them and writes one CSV row per run.

pub mod experiments;
pub mod record;
pub mod run;
pub mod structures;
pub mod verify;

pub use experiments::{execute, Config};
pub use record::{read_csv, write_csv, write_csv_atomic, RunRecord, HEADER};
pub use run::{first_divergence, run_once, workload, Ratio, RunSpec, Source, Workload};
pub use structures::{build, Params, StructureKind};
pub use verify::{verify, VerifyReport};
