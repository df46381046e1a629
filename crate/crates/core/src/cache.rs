//! Append-only results cache: one tab separated line per canonical graph,
//! `graph6  gamma  gamma_e  gamma_e_star`.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use crate::domination::Params;
use crate::error::Result;
use crate::graph::{canonical_code, graph6, CanonicalCode};

/// Environment variable naming the default cache file.
pub const CACHE_ENV: &str = "EXPDOM_CACHE";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheRecord {
    pub graph6: String,
    pub gamma: usize,
    pub gamma_e: usize,
    pub gamma_e_star: usize,
}

impl CacheRecord {
    pub fn new(code: &CanonicalCode, p: Params) -> Self {
        CacheRecord {
            graph6: code.as_graph6().to_string(),
            gamma: p.gamma,
            gamma_e: p.gamma_e,
            gamma_e_star: p.gamma_e_star,
        }
    }

    pub fn params(&self) -> Params {
        Params { gamma: self.gamma, gamma_e: self.gamma_e, gamma_e_star: self.gamma_e_star }
    }

    pub fn to_line(&self) -> String {
        format!("{}\t{}\t{}\t{}", self.graph6, self.gamma, self.gamma_e, self.gamma_e_star)
    }

    /// Parses and validates a line: the graph must be in canonical form and
    /// the values must satisfy `gamma_e_star <= gamma_e <= gamma`.
    pub fn parse_line(line: &str) -> std::result::Result<(CanonicalCode, Self), String> {
        let fields: Vec<&str> = line.split('\t').collect();
        let [g6, a, b, c] = fields[..] else {
            return Err(format!("expected 4 fields, found {}", fields.len()));
        };
        let num = |s: &str| s.parse::<usize>().map_err(|e| format!("bad number `{s}`: {e}"));
        let rec = CacheRecord { graph6: g6.to_string(), gamma: num(a)?, gamma_e: num(b)?, gamma_e_star: num(c)? };
        let g = graph6::decode(g6).map_err(|e| e.to_string())?;
        let code = canonical_code(&g);
        if code.as_graph6() != g6 {
            return Err("graph is not in canonical form".into());
        }
        if !rec.params().chain_holds() || rec.gamma > g.order() {
            return Err("values violate gamma_e_star <= gamma_e <= gamma <= n".into());
        }
        Ok((code, rec))
    }
}

pub struct ResultsCache {
    path: PathBuf,
    writer: Mutex<BufWriter<File>>,
}

impl ResultsCache {
    /// Opens (creating if needed) the cache at `path` and returns the valid records
    /// already in it. Corrupt lines are skipped with a warning.
    pub fn open(path: impl AsRef<Path>) -> Result<(Self, Vec<(CanonicalCode, CacheRecord)>)> {
        let path = path.as_ref().to_path_buf();
        let mut records = Vec::new();
        if path.exists() {
            let reader = BufReader::new(File::open(&path)?);
            for (i, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                match CacheRecord::parse_line(&line) {
                    Ok(r) => records.push(r),
                    Err(e) => log::warn!("{}:{}: skipping corrupt cache line: {e}", path.display(), i + 1),
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(&path)?;
        let cache = ResultsCache { path, writer: Mutex::new(BufWriter::new(file)) };
        Ok((cache, records))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn append(&self, record: &CacheRecord) -> Result<()> {
        let mut w = self.writer.lock().expect("cache writer poisoned");
        writeln!(w, "{}", record.to_line())?;
        Ok(())
    }

    pub fn flush(&self) -> Result<()> {
        self.writer.lock().expect("cache writer poisoned").flush()?;
        Ok(())
    }
}
