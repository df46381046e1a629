//! Exhaustive sweeps and their reports.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{ClassKind, Engine};
use crate::enumeration::{levels, StreamMode};
use crate::error::{Error, Result};
use crate::graph::{canonical_code, Graph};
use crate::patterns::{
    check_catalog, is_free, PatternName, COROLLARY1_RESTRICTION, OBSTRUCTIONS, THEOREM1_RESTRICTION, TREE_OBSTRUCTIONS,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sweep {
    /// `{BULL, DIAMOND, K4, K23, P2xP3}`-free connected graphs: membership in `G`
    /// iff `{P7, C7, F1..F5}`-free.
    Theorem1,
    /// Same claim over `{K3, K23, P2xP3}`-free connected graphs.
    Corollary1,
    /// Trees: membership in `G` iff `{P7, F1}`-free.
    Corollary2,
    /// Connected graphs: membership in `G` iff membership in `G*`.
    Conjecture3,
    /// Search for minimal forbidden induced subgraphs.
    Minimal,
}

impl Sweep {
    pub fn name(self) -> &'static str {
        match self {
            Sweep::Theorem1 => "theorem1",
            Sweep::Corollary1 => "corollary1",
            Sweep::Corollary2 => "corollary2",
            Sweep::Conjecture3 => "conjecture3",
            Sweep::Minimal => "minimal",
        }
    }

    pub fn default_max_n(self) -> usize {
        match self {
            Sweep::Theorem1 | Sweep::Corollary1 => 9,
            Sweep::Corollary2 => 12,
            Sweep::Conjecture3 | Sweep::Minimal => 8,
        }
    }

    pub fn mode(self) -> StreamMode {
        match self {
            Sweep::Corollary2 => StreamMode::Trees,
            _ => StreamMode::ConnectedGraphs,
        }
    }

    pub fn restriction(self) -> &'static [PatternName] {
        match self {
            Sweep::Theorem1 => &THEOREM1_RESTRICTION,
            Sweep::Corollary1 => &COROLLARY1_RESTRICTION,
            _ => &[],
        }
    }

    pub fn forbidden(self) -> &'static [PatternName] {
        match self {
            Sweep::Theorem1 | Sweep::Corollary1 => &OBSTRUCTIONS,
            Sweep::Corollary2 => &TREE_OBSTRUCTIONS,
            _ => &[],
        }
    }

    /// Whether a nonempty counterexample list means the claim failed (as
    /// opposed to being reported in-band).
    pub fn is_claim(self) -> bool {
        matches!(self, Sweep::Theorem1 | Sweep::Corollary1 | Sweep::Corollary2)
    }

    fn in_domain(self, g: &Graph) -> bool {
        match self.mode() {
            StreamMode::Trees => g.is_tree(),
            StreamMode::ConnectedGraphs => g.order() > 0 && g.is_connected() && is_free(g, self.restriction()),
        }
    }
}

impl fmt::Display for Sweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Sweep {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        [Sweep::Theorem1, Sweep::Corollary1, Sweep::Corollary2, Sweep::Conjecture3, Sweep::Minimal]
            .into_iter()
            .find(|w| w.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown sweep `{s}`"))
    }
}

/// Where the graphs of a sweep come from.
#[derive(Clone, Debug)]
pub enum SweepSource {
    /// Every class of order `1..=max_n` produced by the enumeration module.
    Generated { max_n: usize },
    /// Externally supplied graphs; those outside the sweep's domain are skipped.
    Graphs(Vec<Graph>),
}

/// A minimal forbidden graph found by [`find_minimal_forbidden`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoundGraph {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub gamma: usize,
    pub gamma_e: usize,
    pub gamma_e_star: usize,
    /// Catalog name when isomorphic to a catalog pattern.
    pub catalog: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub sweep: Sweep,
    pub class: ClassKind,
    pub max_n: usize,
    pub source: String,
    pub restriction: Vec<String>,
    pub forbidden: Vec<String>,
    /// Graphs scanned, per order.
    pub counts: BTreeMap<usize, usize>,
    pub skipped: usize,
    /// graph6 of every graph where the claim fails (for the conjecture probe:
    /// every divergence between `G` and `G*`; for the minimal search: every
    /// found graph without `γ = 3` and `γ_e = 2`).
    pub counterexamples: Vec<String>,
    /// graph6 of every scanned graph violating `γ_e* <= γ_e <= γ`.
    pub chain_violations: Vec<String>,
    pub found: Vec<FoundGraph>,
    /// Catalog obstructions that are not minimal violators.
    pub catalog_notes: Vec<String>,
    pub verified: bool,
    pub elapsed_ms: u64,
    pub config_hash: String,
}

impl VerificationReport {
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// The report as one line of JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// The report with timing zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> Self {
        VerificationReport { elapsed_ms: 0, ..self.clone() }
    }
}

#[derive(Serialize)]
struct HashedConfig<'a> {
    version: &'a str,
    sweep: Sweep,
    class: ClassKind,
    max_n: usize,
    source: &'a str,
    restriction: &'a [String],
    forbidden: &'a [String],
}

fn names(ps: &[PatternName]) -> Vec<String> {
    ps.iter().map(|p| p.as_str().to_string()).collect()
}

fn config_hash(c: &HashedConfig<'_>) -> String {
    let json = serde_json::to_vec(c).expect("config serializes");
    hex::encode(Sha256::digest(json))
}

/// Sorted by canonical code, deduplicated, restricted to the sweep's domain.
fn prepare_input(sweep: Sweep, graphs: Vec<Graph>) -> (Vec<Graph>, usize, String) {
    let total = graphs.len();
    let mut digest = Sha256::new();
    for g in &graphs {
        digest.update(g.to_string().as_bytes());
        digest.update(b"\n");
    }
    let mut coded: Vec<_> = graphs
        .into_par_iter()
        .filter(|g| sweep.in_domain(g))
        .map(|g| canonical_code(&g))
        .collect();
    coded.par_sort_unstable();
    coded.dedup();
    let kept: Vec<Graph> = coded.into_iter().map(|c| c.to_graph()).collect();
    let skipped = total - kept.len();
    (kept, skipped, format!("input:{}", hex::encode(digest.finalize())))
}

fn source_graphs(sweep: Sweep, source: SweepSource) -> Result<(Vec<Graph>, usize, String, usize)> {
    match source {
        SweepSource::Generated { max_n } => {
            let gs = levels(max_n, sweep.mode(), sweep.restriction())?.into_iter().flatten().collect();
            Ok((gs, 0, "generated".into(), max_n))
        }
        SweepSource::Graphs(gs) => {
            let (gs, skipped, label) = prepare_input(sweep, gs);
            let max_n = gs.iter().map(Graph::order).max().unwrap_or(0);
            Ok((gs, skipped, label, max_n))
        }
    }
}

/// The catalog check run before every sweep. Wrong parameter values abort
/// the sweep; non-minimal obstructions are reported.
fn startup_check() -> Result<Vec<String>> {
    let c = check_catalog()?;
    if let Some(o) = c.obstructions.iter().find(|o| !o.values_ok()) {
        return Err(Error::SelfCheck(o.to_string()));
    }
    Ok(c.notes())
}

struct Outcome {
    order: usize,
    counterexample: bool,
    chain_ok: bool,
}

fn scan_one(engine: &Engine, sweep: Sweep, g: &Graph) -> Result<Outcome> {
    let chain_ok = engine.params(g).chain_holds();
    let counterexample = match sweep {
        Sweep::Conjecture3 => {
            engine.in_class(g, ClassKind::G)?.member != engine.in_class(g, ClassKind::GStar)?.member
        }
        _ => engine.in_class(g, ClassKind::G)?.member != is_free(g, sweep.forbidden()),
    };
    Ok(Outcome { order: g.order(), counterexample, chain_ok })
}

/// Runs a verification sweep (not [`Sweep::Minimal`]) over `source` on the current rayon pool.
pub fn run_sweep_on(engine: &Engine, sweep: Sweep, source: SweepSource) -> Result<VerificationReport> {
    assert!(sweep != Sweep::Minimal, "use find_minimal_forbidden");
    let start = Instant::now();
    let catalog_notes = startup_check()?;
    let (graphs, skipped, label, max_n) = source_graphs(sweep, source)?;
    let outcomes: Vec<Outcome> = graphs.par_iter().map(|g| scan_one(engine, sweep, g)).collect::<Result<_>>()?;
    let mut counts = BTreeMap::new();
    let mut counterexamples = Vec::new();
    let mut chain_violations = Vec::new();
    for (g, o) in graphs.iter().zip(&outcomes) {
        *counts.entry(o.order).or_insert(0) += 1;
        if o.counterexample {
            counterexamples.push(g.to_string());
        }
        if !o.chain_ok {
            chain_violations.push(g.to_string());
        }
    }
    engine.flush()?;
    let restriction = names(sweep.restriction());
    let forbidden = names(sweep.forbidden());
    let class = ClassKind::G;
    let config_hash = config_hash(&HashedConfig {
        version: env!("CARGO_PKG_VERSION"),
        sweep,
        class,
        max_n,
        source: &label,
        restriction: &restriction,
        forbidden: &forbidden,
    });
    Ok(VerificationReport {
        sweep,
        class,
        max_n,
        source: label,
        restriction,
        forbidden,
        counts,
        skipped,
        verified: counterexamples.is_empty() && chain_violations.is_empty(),
        counterexamples,
        chain_violations,
        found: Vec::new(),
        catalog_notes,
        elapsed_ms: start.elapsed().as_millis() as u64,
        config_hash,
    })
}

pub fn run_sweep(engine: &Engine, sweep: Sweep, max_n: usize) -> Result<VerificationReport> {
    run_sweep_on(engine, sweep, SweepSource::Generated { max_n })
}

pub fn verify_theorem1(engine: &Engine, n_max: usize) -> Result<VerificationReport> {
    run_sweep(engine, Sweep::Theorem1, n_max)
}

pub fn verify_corollary1(engine: &Engine, n_max: usize) -> Result<VerificationReport> {
    run_sweep(engine, Sweep::Corollary1, n_max)
}

pub fn verify_corollary2(engine: &Engine, n_max: usize) -> Result<VerificationReport> {
    run_sweep(engine, Sweep::Corollary2, n_max)
}

/// Divergences between `G` and `G*` are listed as counterexamples; the
/// report is produced regardless.
pub fn probe_conjecture3(engine: &Engine, n_max: usize) -> Result<VerificationReport> {
    run_sweep(engine, Sweep::Conjecture3, n_max)
}

/// All connected minimal forbidden graphs of `kind` with at most `n_max`
/// vertices, among the `restriction`-free graphs.
pub fn find_minimal_forbidden(
    engine: &Engine,
    n_max: usize,
    kind: ClassKind,
    restriction: &[PatternName],
) -> Result<VerificationReport> {
    let start = Instant::now();
    let catalog_notes = startup_check()?;
    let mut restriction = restriction.to_vec();
    restriction.sort();
    restriction.dedup();
    let graphs: Vec<Graph> = levels(n_max, StreamMode::ConnectedGraphs, &restriction)?.into_iter().flatten().collect();
    let minimal: Vec<bool> = graphs.par_iter().map(|g| engine.is_minimal_forbidden(g, kind)).collect();
    let catalog: Vec<_> = PatternName::ALL.iter().map(|&p| (canonical_code(p.graph()), p)).collect();
    let mut counts = BTreeMap::new();
    let mut found = Vec::new();
    let mut chain_violations = Vec::new();
    for (g, &is_min) in graphs.iter().zip(&minimal) {
        *counts.entry(g.order()).or_insert(0) += 1;
        if !is_min {
            continue;
        }
        let p = engine.params(g);
        if !p.chain_holds() {
            chain_violations.push(g.to_string());
        }
        let code = canonical_code(g);
        found.push(FoundGraph {
            graph6: g.to_string(),
            n: g.order(),
            m: g.size(),
            gamma: p.gamma,
            gamma_e: p.gamma_e,
            gamma_e_star: p.gamma_e_star,
            catalog: catalog.iter().find(|(c, _)| *c == code).map(|(_, p)| p.as_str().to_string()),
        });
    }
    engine.flush()?;
    let counterexamples: Vec<String> = match kind {
        ClassKind::G => found.iter().filter(|f| (f.gamma, f.gamma_e) != (3, 2)).map(|f| f.graph6.clone()).collect(),
        ClassKind::GStar => Vec::new(),
    };
    let restriction = names(&restriction);
    let label = "generated".to_string();
    let config_hash = config_hash(&HashedConfig {
        version: env!("CARGO_PKG_VERSION"),
        sweep: Sweep::Minimal,
        class: kind,
        max_n: n_max,
        source: &label,
        restriction: &restriction,
        forbidden: &[],
    });
    Ok(VerificationReport {
        sweep: Sweep::Minimal,
        class: kind,
        max_n: n_max,
        source: label,
        restriction,
        forbidden: Vec::new(),
        counts,
        skipped: 0,
        verified: counterexamples.is_empty() && chain_violations.is_empty(),
        counterexamples,
        chain_violations,
        found,
        catalog_notes,
        elapsed_ms: start.elapsed().as_millis() as u64,
        config_hash,
    })
}
