//! Benchmark rows.
//!
//! The first ten columns are fixed; `total_s` (root finding through
//! verification) and `worker_probes` (table-build swaps per worker, `;`
//! separated) follow them.

use serde::{Deserialize, Serialize};

pub const CSV_HEADER: &str =
    "d,n,backend,workers,wall_s,visited,probes_mean,candidates,factors,seed,total_s,worker_probes";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub d: usize,
    pub n: usize,
    pub backend: String,
    pub workers: usize,
    pub wall_s: f64,
    pub visited: u64,
    pub probes_mean: f64,
    pub candidates: u64,
    pub factors: usize,
    pub seed: u64,
    pub total_s: f64,
    pub worker_probes: String,
}

#[derive(Debug)]
pub struct RecordError(pub String);

impl std::fmt::Display for RecordError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "bad bench record: {}", self.0)
    }
}

impl std::error::Error for RecordError {}

impl BenchRecord {
    pub fn validate(&self) -> Result<(), RecordError> {
        let finite = [self.wall_s, self.probes_mean, self.total_s]
            .iter()
            .all(|x| x.is_finite() && *x >= 0.0);
        if !finite || self.wall_s <= 0.0 {
            return Err(RecordError("times and means must be finite, wall_s positive".into()));
        }
        if self.backend.parse::<rfr_core::Backend>().is_err() {
            return Err(RecordError(format!("unknown backend {:?}", self.backend)));
        }
        if !self.worker_probes.is_empty()
            && self.worker_probes.split(';').any(|p| p.parse::<u64>().is_err())
        {
            return Err(RecordError("worker_probes must be ;-separated counts".into()));
        }
        Ok(())
    }

    /// One CSV row without a trailing newline.
    pub fn to_csv_row(&self) -> String {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        w.serialize(self).expect("in-memory write");
        let bytes = w.into_inner().expect("in-memory flush");
        String::from_utf8(bytes).expect("csv output is UTF-8").trim_end().to_string()
    }

    /// Parses one row (no header) and validates it.
    pub fn from_csv_row(row: &str) -> Result<Self, RecordError> {
        let mut r = csv::ReaderBuilder::new()
            .has_headers(false)
            .from_reader(row.as_bytes());
        let rec: BenchRecord = r
            .deserialize()
            .next()
            .ok_or_else(|| RecordError("empty row".into()))?
            .map_err(|e| RecordError(e.to_string()))?;
        rec.validate()?;
        Ok(rec)
    }

    /// Parses a whole CSV document with the standard header.
    pub fn parse_document(text: &str) -> Result<Vec<Self>, RecordError> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let header = r.headers().map_err(|e| RecordError(e.to_string()))?;
        if header.iter().collect::<Vec<_>>().join(",") != CSV_HEADER {
            return Err(RecordError("unexpected header".into()));
        }
        let mut out = Vec::new();
        for rec in r.deserialize::<BenchRecord>() {
            let rec = rec.map_err(|e| RecordError(e.to_string()))?;
            rec.validate()?;
            out.push(rec);
        }
        Ok(out)
    }
}
