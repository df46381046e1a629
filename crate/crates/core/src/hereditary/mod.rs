//! Membership in the hereditary classes where `γ = γ_e` (class `G`) or
//! `γ = γ_e*` (class `G*`) holds for every induced subgraph.
//!
//! All three parameters are additive over connected components, so a graph
//! is in a class iff each of its connected induced subgraphs satisfies the
//! equality. Membership is decided by the recursion
//! `g ∈ class ⟺ equality(g) ∧ ∀v: g - v ∈ class`, memoized on canonical
//! codes; what is stored per class is the minimum order of a connected
//! violating induced subgraph, which also drives witness extraction.

mod sweeps;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

pub use sweeps::{
    find_minimal_forbidden, probe_conjecture3, run_sweep, run_sweep_on, verify_corollary1, verify_corollary2,
    verify_theorem1, FoundGraph, Sweep, SweepSource, VerificationReport,
};

use crate::cache::{CacheRecord, ResultsCache};
use crate::domination::{parameters, Params};
use crate::error::{Error, Result};
use crate::graph::{canonical_code, CanonicalCode, Graph, VertexSet};

/// Largest order accepted by membership queries.
pub const MAX_MEMBERSHIP_ORDER: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassKind {
    /// `γ(H) = γ_e(H)` for every induced subgraph `H`.
    #[serde(rename = "G")]
    G,
    /// `γ(H) = γ_e*(H)` for every induced subgraph `H`.
    #[serde(rename = "G*")]
    GStar,
}

impl ClassKind {
    pub fn equality(self, p: &Params) -> bool {
        match self {
            ClassKind::G => p.gamma == p.gamma_e,
            ClassKind::GStar => p.gamma == p.gamma_e_star,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassKind::G => "G",
            ClassKind::GStar => "G*",
        })
    }
}

impl FromStr for ClassKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "G" | "g" => Ok(ClassKind::G),
            "G*" | "g*" | "GSTAR" | "gstar" => Ok(ClassKind::GStar),
            _ => Err(format!("unknown class `{s}`")),
        }
    }
}

/// A minimum-order connected induced subgraph violating the class equality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Vertices of the query graph inducing the witness.
    pub vertices: Vec<usize>,
    /// graph6 of the induced subgraph, vertices relabelled in ascending order.
    pub graph6: String,
    pub gamma: usize,
    pub gamma_e: usize,
    pub gamma_e_star: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipResult {
    pub class: ClassKind,
    pub member: bool,
    pub witness: Option<Witness>,
}

/// Memo tables shared by all queries and sweeps; safe to use from many threads.
#[derive(Default)]
pub struct Engine {
    params: DashMap<CanonicalCode, Params>,
    min_violator: [DashMap<CanonicalCode, Option<usize>>; 2],
    cache: Option<ResultsCache>,
}

impl Engine {
    pub fn new() -> Self {
        Engine::default()
    }

    /// An engine whose parameter table is loaded from, and appended to, a results cache.
    pub fn with_cache(path: impl AsRef<Path>) -> Result<Self> {
        let (cache, records) = ResultsCache::open(path)?;
        let engine = Engine { cache: Some(cache), ..Engine::default() };
        for (code, rec) in records {
            engine.params.insert(code, rec.params());
        }
        Ok(engine)
    }

    pub fn cached_params(&self) -> usize {
        self.params.len()
    }

    pub fn flush(&self) -> Result<()> {
        match &self.cache {
            Some(c) => c.flush(),
            None => Ok(()),
        }
    }

    /// `(γ, γ_e, γ_e*)` of `g`, memoized by canonical code.
    pub fn params(&self, g: &Graph) -> Params {
        self.params_coded(&canonical_code(g), g)
    }

    fn params_coded(&self, code: &CanonicalCode, g: &Graph) -> Params {
        if let Some(p) = self.params.get(code) {
            return *p;
        }
        let p = parameters(g);
        let fresh = self.params.insert(code.clone(), p).is_none();
        if fresh {
            if let Some(cache) = &self.cache {
                if let Err(e) = cache.append(&CacheRecord::new(code, p)) {
                    log::warn!("could not append to {}: {e}", cache.path().display());
                }
            }
        }
        p
    }

    /// `γ(g) = γ_e(g)` (or `γ(g) = γ_e*(g)`), evaluated per component and summed.
    pub fn equality_holds(&self, g: &Graph, kind: ClassKind) -> bool {
        let total = g
            .connected_components()
            .into_iter()
            .map(|c| self.params(&g.induced_subgraph(c)))
            .fold(Params { gamma: 0, gamma_e: 0, gamma_e_star: 0 }, |a, p| Params {
                gamma: a.gamma + p.gamma,
                gamma_e: a.gamma_e + p.gamma_e,
                gamma_e_star: a.gamma_e_star + p.gamma_e_star,
            });
        kind.equality(&total)
    }

    /// Minimum order of a connected induced subgraph of `g` violating the equality.
    pub fn min_violator_order(&self, g: &Graph, kind: ClassKind) -> Option<usize> {
        g.connected_components()
            .into_iter()
            .filter_map(|c| self.min_violator_connected(&g.induced_subgraph(c), kind))
            .min()
    }

    fn min_violator_connected(&self, g: &Graph, kind: ClassKind) -> Option<usize> {
        let code = canonical_code(g);
        if let Some(m) = self.min_violator[kind.index()].get(&code) {
            return *m;
        }
        let own = (!kind.equality(&self.params_coded(&code, g))).then_some(g.order());
        let below = if g.order() > 1 {
            (0..g.order()).filter_map(|v| self.min_violator_order(&g.remove_vertex(v), kind)).min()
        } else {
            None
        };
        let m = match (own, below) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.min_violator[kind.index()].insert(code, m);
        m
    }

    pub fn in_class(&self, g: &Graph, kind: ClassKind) -> Result<MembershipResult> {
        if g.order() > MAX_MEMBERSHIP_ORDER {
            return Err(Error::SizeCap { what: "class membership", n: g.order(), cap: MAX_MEMBERSHIP_ORDER });
        }
        let Some(m) = self.min_violator_order(g, kind) else {
            return Ok(MembershipResult { class: kind, member: true, witness: None });
        };
        let s = self.locate_witness(g, m, kind);
        let h = g.induced_subgraph(s);
        let p = self.params(&h);
        let witness = Witness {
            vertices: s.to_vec(),
            graph6: h.to_string(),
            gamma: p.gamma,
            gamma_e: p.gamma_e,
            gamma_e_star: p.gamma_e_star,
        };
        Ok(MembershipResult { class: kind, member: false, witness: Some(witness) })
    }

    /// Descends from the component holding a violator of order `m`, always
    /// into the first vertex deletion and component that keeps one, until the
    /// current set itself has order `m`.
    fn locate_witness(&self, g: &Graph, m: usize, kind: ClassKind) -> VertexSet {
        let holds = |s: VertexSet| self.min_violator_connected(&g.induced_subgraph(s), kind) == Some(m);
        let mut cur = components_within(g, g.vertices())
            .into_iter()
            .find(|&c| holds(c))
            .expect("some component holds the violator");
        'descend: while cur.len() > m {
            for v in cur {
                if let Some(c) = components_within(g, cur.without(v)).into_iter().find(|&c| holds(c)) {
                    cur = c;
                    continue 'descend;
                }
            }
            unreachable!("a smaller violator lies in some vertex deletion");
        }
        cur
    }

    /// Connected, violates the equality, and every proper induced subgraph is in the class.
    pub fn is_minimal_forbidden(&self, g: &Graph, kind: ClassKind) -> bool {
        g.order() > 0
            && g.is_connected()
            && !kind.equality(&self.params(g))
            && (0..g.order()).all(|v| self.min_violator_order(&g.remove_vertex(v), kind).is_none())
    }
}

fn components_within(g: &Graph, s: VertexSet) -> Vec<VertexSet> {
    let mut left = s;
    let mut out = Vec::new();
    while let Some(v) = left.first() {
        let c = g.reach_within(VertexSet::singleton(v), left);
        out.push(c);
        left = left.difference(c);
    }
    out
}

/// `γ(g) = γ_e(g)`.
pub fn equality_holds(g: &Graph) -> bool {
    Engine::new().equality_holds(g, ClassKind::G)
}

pub fn in_class(g: &Graph, kind: ClassKind) -> Result<MembershipResult> {
    Engine::new().in_class(g, kind)
}

pub fn is_minimal_forbidden(g: &Graph, kind: ClassKind) -> bool {
    Engine::new().is_minimal_forbidden(g, kind)
}
