use serde::{Deserialize, Serialize};

use super::weight::threshold_met;
use crate::graph::{k_subsets, Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ParamKind {
    #[serde(rename = "gamma")]
    Gamma,
    #[serde(rename = "gamma_e")]
    GammaE,
    #[serde(rename = "gamma_e_star")]
    GammaEStar,
}

/// An optimal value together with the lexicographically smallest optimal set,
/// i.e. the one with the smallest bit pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamResult {
    pub kind: ParamKind,
    pub value: usize,
    pub certificate: VertexSet,
}

/// The three parameters of one graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub gamma: usize,
    pub gamma_e: usize,
    pub gamma_e_star: usize,
}

impl Params {
    pub fn chain_holds(&self) -> bool {
        self.gamma_e_star <= self.gamma_e && self.gamma_e <= self.gamma
    }
}

/// Branch and bound for dominating sets.
///
/// Branches on the smallest undominated vertex over the allowed members of
/// its closed neighbourhood and prunes with `ceil(undominated / best cover)`.
struct DomSearch {
    closed: Vec<u64>,
    full: u64,
    allowed: u64,
    best_size: usize,
    best_set: u64,
    first_only: bool,
}

impl DomSearch {
    fn new(g: &Graph, allowed: u64, bound: usize, first_only: bool) -> Self {
        DomSearch {
            closed: (0..g.order()).map(|u| g.closed_neighbors(u).bits()).collect(),
            full: g.vertices().bits(),
            allowed,
            best_size: bound,
            best_set: 0,
            first_only,
        }
    }

    fn found(&self) -> bool {
        self.best_set != 0 || self.full == 0
    }

    fn run(&mut self, dominated: u64, chosen: u64, size: usize) {
        if dominated == self.full {
            if size < self.best_size {
                self.best_size = size;
                self.best_set = chosen;
            }
            return;
        }
        let undominated = self.full & !dominated;
        let mut cover = 0;
        let mut a = self.allowed & !chosen;
        while a != 0 {
            let c = a.trailing_zeros() as usize;
            a &= a - 1;
            cover = cover.max((self.closed[c] & undominated).count_ones() as usize);
        }
        if cover == 0 {
            return;
        }
        let lower = (undominated.count_ones() as usize).div_ceil(cover);
        if size + lower >= self.best_size {
            return;
        }
        let u = undominated.trailing_zeros() as usize;
        let mut cands = self.closed[u] & self.allowed;
        while cands != 0 {
            let c = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            self.run(dominated | self.closed[c], chosen | 1 << c, size + 1);
            if self.first_only && self.found() {
                return;
            }
        }
    }
}

/// Some dominating set of size at most `k` avoiding `forbidden`.
fn dominating_set_within(g: &Graph, forbidden: u64, k: usize) -> Option<u64> {
    let mut s = DomSearch::new(g, g.vertices().bits() & !forbidden, k + 1, true);
    s.run(0, 0, 0);
    s.found().then_some(s.best_set)
}

/// `γ(G)` with the lexicographically smallest minimum dominating set.
pub fn domination_number(g: &Graph) -> ParamResult {
    let n = g.order();
    let mut s = DomSearch::new(g, g.vertices().bits(), n + 1, false);
    s.run(0, 0, 0);
    let gamma = s.best_size;
    let mut current = s.best_set;
    // From the top vertex down, forbid every vertex that some optimal set avoids.
    let mut forbidden = 0u64;
    for v in (0..n).rev() {
        if current >> v & 1 == 0 {
            forbidden |= 1 << v;
        } else if let Some(other) = dominating_set_within(g, forbidden | 1 << v, gamma) {
            forbidden |= 1 << v;
            current = other;
        }
    }
    debug_assert_eq!(current.count_ones() as usize, gamma);
    ParamResult { kind: ParamKind::Gamma, value: gamma, certificate: VertexSet::from_bits(current) }
}

/// Smallest `k <= upper` admitting a set of size `k` that passes the weight threshold,
/// scanning `k`-subsets in increasing bit-pattern order.
fn smallest_threshold_set(g: &Graph, upper: usize, porous: bool) -> Option<VertexSet> {
    (0..=upper.min(g.order()))
        .flat_map(|k| k_subsets(g.order(), k))
        .find(|d| threshold_met(g, d.bits(), porous))
}

/// `γ_e(G)`, searched by cardinality up to `γ(G)`.
///
/// Exponential domination is not monotone under adding vertices to `D`, so
/// every subset of each cardinality is tested.
pub fn exponential_domination_number(g: &Graph) -> ParamResult {
    let gamma = domination_number(g);
    exponential_domination_number_below(g, gamma.value)
}

pub(crate) fn exponential_domination_number_below(g: &Graph, gamma: usize) -> ParamResult {
    let d = smallest_threshold_set(g, gamma, false).expect("every dominating set is exponential dominating");
    ParamResult { kind: ParamKind::GammaE, value: d.len(), certificate: d }
}

/// `γ_e*(G)`, searched by cardinality up to `γ_e(G)`.
pub fn porous_exponential_domination_number(g: &Graph) -> ParamResult {
    let gamma_e = exponential_domination_number(g);
    porous_exponential_domination_number_below(g, gamma_e.value)
}

pub(crate) fn porous_exponential_domination_number_below(g: &Graph, gamma_e: usize) -> ParamResult {
    let d = smallest_threshold_set(g, gamma_e, true).expect("w* dominates w pointwise");
    ParamResult { kind: ParamKind::GammaEStar, value: d.len(), certificate: d }
}

/// All three parameters with certificates, sharing the upper bounds.
pub fn all_parameters(g: &Graph) -> [ParamResult; 3] {
    let gamma = domination_number(g);
    let gamma_e = exponential_domination_number_below(g, gamma.value);
    let gamma_e_star = porous_exponential_domination_number_below(g, gamma_e.value);
    [gamma, gamma_e, gamma_e_star]
}

pub fn parameters(g: &Graph) -> Params {
    let [a, b, c] = all_parameters(g);
    Params { gamma: a.value, gamma_e: b.value, gamma_e_star: c.value }
}
