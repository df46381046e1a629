//! Input parsing, output records and rendering for the command-line tool.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::domination::{all_parameters, porous_weights, weights, ParamResult};
use crate::error::{Error, Result};
use crate::graph::{graph6, Graph, VertexSet};
use crate::hereditary::{MembershipResult, VerificationReport};
use crate::patterns::{Embedding, PatternName};

/// Largest order for which `γ_e` and `γ_e*` are computed exactly.
pub const MAX_EXPONENTIAL_ORDER: usize = 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            _ => Err(format!("unknown format `{s}` (expected json, csv or text)")),
        }
    }
}

/// Settings shared by the sweep commands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub max_n: usize,
    pub workers: usize,
    pub restriction: Vec<PatternName>,
    pub format: OutputFormat,
    pub cache: Option<PathBuf>,
}

impl SweepConfig {
    pub fn validate(&self, cap: usize, what: &'static str) -> Result<()> {
        if self.max_n == 0 || self.max_n > cap {
            return Err(Error::SizeCap { what, n: self.max_n, cap });
        }
        if self.workers == 0 {
            return Err(Error::Usage("workers must be at least 1".into()));
        }
        Ok(())
    }
}

/// Parses graphs from text: either graph6 lines, or an edge list whose first
/// number is the order followed by pairs `u v`. `#` starts a comment in edge
/// lists. Content made only of digits and whitespace is read as an edge list.
pub fn parse_graphs(text: &str) -> Result<Vec<Graph>> {
    let stripped: String = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join("\n");
    let is_edge_list = stripped.chars().any(|c| c.is_ascii_digit())
        && stripped.chars().all(|c| c.is_ascii_digit() || c.is_whitespace());
    if is_edge_list {
        return parse_edge_list(&stripped).map(|g| vec![g]);
    }
    let graphs: Vec<Graph> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(graph6::decode)
        .collect::<Result<_>>()?;
    if graphs.is_empty() {
        return Err(Error::Graph6("no graph in input".into()));
    }
    Ok(graphs)
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let nums: Vec<usize> = text
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|e| Error::EdgeList(format!("`{t}`: {e}"))))
        .collect::<Result<_>>()?;
    let Some((&n, rest)) = nums.split_first() else {
        return Err(Error::EdgeList("empty input".into()));
    };
    if rest.len() % 2 != 0 {
        return Err(Error::EdgeList("odd number of endpoints".into()));
    }
    let edges: Vec<(usize, usize)> = rest.chunks(2).map(|c| (c[0], c[1])).collect();
    Graph::from_edge_list(n, &edges)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certified {
    pub value: usize,
    pub certificate: Vec<usize>,
}

impl From<ParamResult> for Certified {
    fn from(r: ParamResult) -> Self {
        Certified { value: r.value, certificate: r.certificate.to_vec() }
    }
}

/// Weights of every vertex for one set, as exact fractions `p/2^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightTable {
    pub set: Vec<usize>,
    pub weight: Vec<String>,
    pub porous_weight: Vec<String>,
}

impl WeightTable {
    pub fn new(g: &Graph, d: VertexSet) -> Result<Self> {
        let fmt = |ws: Vec<crate::domination::DyadicWeight>| ws.into_iter().map(|w| w.reduced().to_string()).collect();
        Ok(WeightTable { set: d.to_vec(), weight: fmt(weights(g, d)?), porous_weight: fmt(porous_weights(g, d)?) })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Explain {
    pub gamma_e: WeightTable,
    pub gamma_e_star: WeightTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamsRecord {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub gamma: Certified,
    pub gamma_e: Certified,
    pub gamma_e_star: Certified,
    pub gamma_equals_gamma_e: bool,
    pub gamma_equals_gamma_e_star: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub explain: Option<Explain>,
}

pub fn params_record(g: &Graph, explain: bool) -> Result<ParamsRecord> {
    if g.order() > MAX_EXPONENTIAL_ORDER {
        return Err(Error::SizeCap { what: "exact exponential domination", n: g.order(), cap: MAX_EXPONENTIAL_ORDER });
    }
    let [a, b, c] = all_parameters(g);
    let explain = if explain && g.order() > 0 {
        Some(Explain { gamma_e: WeightTable::new(g, b.certificate)?, gamma_e_star: WeightTable::new(g, c.certificate)? })
    } else {
        None
    };
    Ok(ParamsRecord {
        graph6: g.to_string(),
        n: g.order(),
        m: g.size(),
        gamma_equals_gamma_e: a.value == b.value,
        gamma_equals_gamma_e_star: a.value == c.value,
        gamma: a.into(),
        gamma_e: b.into(),
        gamma_e_star: c.into(),
        explain,
    })
}

fn set_str(s: &[usize]) -> String {
    s.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn json<T: Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("records serialize")
}

pub fn render_params(records: &[ParamsRecord], format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Json => records.iter().for_each(|r| writeln!(out, "{}", json(r)).unwrap()),
        OutputFormat::Csv => {
            out.push_str("graph6,n,m,gamma,gamma_e,gamma_e_star,gamma_cert,gamma_e_cert,gamma_e_star_cert,eq_gamma_e,eq_gamma_e_star\n");
            for r in records {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    csv_field(&r.graph6),
                    r.n,
                    r.m,
                    r.gamma.value,
                    r.gamma_e.value,
                    r.gamma_e_star.value,
                    set_str(&r.gamma.certificate),
                    set_str(&r.gamma_e.certificate),
                    set_str(&r.gamma_e_star.certificate),
                    r.gamma_equals_gamma_e,
                    r.gamma_equals_gamma_e_star
                )
                .unwrap();
            }
        }
        OutputFormat::Text => {
            for r in records {
                writeln!(out, "graph {} (n={}, m={})", r.graph6, r.n, r.m).unwrap();
                for (name, c) in [("gamma", &r.gamma), ("gamma_e", &r.gamma_e), ("gamma_e*", &r.gamma_e_star)] {
                    writeln!(out, "  {name:<9}= {}  {{{}}}", c.value, set_str(&c.certificate)).unwrap();
                }
                writeln!(out, "  gamma = gamma_e: {}", r.gamma_equals_gamma_e).unwrap();
                writeln!(out, "  gamma = gamma_e*: {}", r.gamma_equals_gamma_e_star).unwrap();
                if let Some(e) = &r.explain {
                    for (label, t) in [("gamma_e", &e.gamma_e), ("gamma_e*", &e.gamma_e_star)] {
                        writeln!(out, "  {label} certificate D = {{{}}}:", set_str(&t.set)).unwrap();
                        writeln!(out, "    {:>3}  {:<12} w*", "u", "w").unwrap();
                        for (u, (w, ws)) in t.weight.iter().zip(&t.porous_weight).enumerate() {
                            writeln!(out, "    {u:>3}  {w:<12} {ws}").unwrap();
                        }
                    }
                }
            }
        }
    }
    out
}

/// graph6 strings may contain commas and quotes.
fn csv_field(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Serialize)]
struct MembershipOut<'a> {
    graph6: String,
    #[serde(flatten)]
    result: &'a MembershipResult,
}

pub fn render_membership(g: &Graph, r: &MembershipResult, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => format!("{}\n", json(&MembershipOut { graph6: g.to_string(), result: r })),
        OutputFormat::Csv => {
            let (verts, g6) = match &r.witness {
                Some(w) => (set_str(&w.vertices), csv_field(&w.graph6)),
                None => (String::new(), String::new()),
            };
            format!("graph6,class,member,witness_vertices,witness_graph6\n{},{},{},{verts},{g6}\n", csv_field(&g.to_string()), r.class, r.member)
        }
        OutputFormat::Text => match &r.witness {
            None => format!("{g}: member of {}\n", r.class),
            Some(w) => format!(
                "{g}: not a member of {}\n  witness {{{}}} = {} (gamma={}, gamma_e={}, gamma_e*={})\n",
                r.class,
                set_str(&w.vertices),
                w.graph6,
                w.gamma,
                w.gamma_e,
                w.gamma_e_star
            ),
        },
    }
}

#[derive(Serialize)]
struct MatchOut<'a> {
    graph6: String,
    pattern: &'a str,
    embedding: Option<&'a [usize]>,
}

pub fn render_match(g: &Graph, pattern: &str, e: Option<&Embedding>, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            format!("{}\n", json(&MatchOut { graph6: g.to_string(), pattern, embedding: e.map(|e| e.map.as_slice()) }))
        }
        OutputFormat::Csv => format!(
            "graph6,pattern,embedding\n{},{},{}\n",
            csv_field(&g.to_string()),
            csv_field(pattern),
            e.map_or("free".to_string(), |e| set_str(&e.map))
        ),
        OutputFormat::Text => match e {
            Some(e) => format!("{e}\n"),
            None => "free\n".to_string(),
        },
    }
}

pub fn render_report(r: &VerificationReport, format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Json => writeln!(out, "{}", r.to_json()).unwrap(),
        OutputFormat::Csv => {
            if r.found.is_empty() {
                out.push_str("order,scanned\n");
                for (n, c) in &r.counts {
                    writeln!(out, "{n},{c}").unwrap();
                }
            } else {
                out.push_str("graph6,n,m,gamma,gamma_e,gamma_e_star,catalog\n");
                for f in &r.found {
                    writeln!(
                        out,
                        "{},{},{},{},{},{},{}",
                        csv_field(&f.graph6),
                        f.n,
                        f.m,
                        f.gamma,
                        f.gamma_e,
                        f.gamma_e_star,
                        f.catalog.as_deref().unwrap_or("")
                    )
                    .unwrap();
                }
            }
        }
        OutputFormat::Text => {
            writeln!(out, "sweep {} (class {}, max_n {}, source {})", r.sweep, r.class, r.max_n, r.source).unwrap();
            if !r.restriction.is_empty() {
                writeln!(out, "  restriction: {}", r.restriction.join(" ")).unwrap();
            }
            for (n, c) in &r.counts {
                writeln!(out, "  n={n:<3} scanned {c}").unwrap();
            }
            if r.skipped > 0 {
                writeln!(out, "  skipped {}", r.skipped).unwrap();
            }
            for f in &r.found {
                writeln!(
                    out,
                    "  found {:<12} n={} m={} gamma={} gamma_e={} gamma_e*={} {}",
                    f.graph6,
                    f.n,
                    f.m,
                    f.gamma,
                    f.gamma_e,
                    f.gamma_e_star,
                    f.catalog.as_deref().unwrap_or("")
                )
                .unwrap();
            }
            for note in &r.catalog_notes {
                writeln!(out, "  note: {note}").unwrap();
            }
            writeln!(out, "  counterexamples: {}", r.counterexamples.len()).unwrap();
            writeln!(out, "  chain violations: {}", r.chain_violations.len()).unwrap();
            writeln!(out, "  verified: {}  ({} ms, config {})", r.verified, r.elapsed_ms, r.config_hash).unwrap();
        }
    }
    out
}

/// Exit status for an error: 3 for unreadable input, 4 for size caps, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Graph6(_)
        | Error::EdgeList(_)
        | Error::Io(_)
        | Error::VertexOutOfRange { .. }
        | Error::SelfLoop(_)
        | Error::NotInSet(_)
        | Error::EmptySet => 3,
        Error::SizeCap { .. } | Error::TooManyVertices(_) => 4,
        Error::UnknownPattern(_) | Error::Usage(_) => 2,
        Error::SelfCheck(_) => 1,
    }
}
