//! The fixed catalog of named small graphs and an induced-subgraph matcher.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::domination::{domination_number, exponential_domination_number};
use crate::error::{Error, Result};
use crate::graph::{Distance, Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatternName {
    K3,
    K4,
    Diamond,
    Bull,
    K23,
    P2xP3,
    P7,
    C7,
    F1,
    F2,
    F3,
    F4,
    F5,
    P2xC3,
}

impl PatternName {
    pub const ALL: [PatternName; 14] = [
        PatternName::K3,
        PatternName::K4,
        PatternName::Diamond,
        PatternName::Bull,
        PatternName::K23,
        PatternName::P2xP3,
        PatternName::P7,
        PatternName::C7,
        PatternName::F1,
        PatternName::F2,
        PatternName::F3,
        PatternName::F4,
        PatternName::F5,
        PatternName::P2xC3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PatternName::K3 => "K3",
            PatternName::K4 => "K4",
            PatternName::Diamond => "DIAMOND",
            PatternName::Bull => "BULL",
            PatternName::K23 => "K23",
            PatternName::P2xP3 => "P2xP3",
            PatternName::P7 => "P7",
            PatternName::C7 => "C7",
            PatternName::F1 => "F1",
            PatternName::F2 => "F2",
            PatternName::F3 => "F3",
            PatternName::F4 => "F4",
            PatternName::F5 => "F5",
            PatternName::P2xC3 => "P2xC3",
        }
    }

    pub fn pattern(self) -> &'static Pattern {
        &catalog()[self as usize]
    }

    pub fn graph(self) -> &'static Graph {
        &self.pattern().graph
    }
}

impl fmt::Display for PatternName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PatternName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "B" => return Ok(PatternName::Bull),
            "D" => return Ok(PatternName::Diamond),
            _ => {}
        }
        PatternName::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::UnknownPattern(s.to_string()))
    }
}

/// Parses a comma separated list such as `BULL,DIAMOND,K4`.
pub fn parse_pattern_list(s: &str) -> Result<Vec<PatternName>> {
    let mut out: Vec<PatternName> =
        s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// The restriction of the main characterization: bull, diamond, K4, K_{2,3}, P2 x P3.
pub const THEOREM1_RESTRICTION: [PatternName; 5] =
    [PatternName::Bull, PatternName::Diamond, PatternName::K4, PatternName::K23, PatternName::P2xP3];

/// Triangle-free variant of the restriction.
pub const COROLLARY1_RESTRICTION: [PatternName; 3] = [PatternName::K3, PatternName::K23, PatternName::P2xP3];

/// The seven obstructions: P7, C7, F1..F5.
pub const OBSTRUCTIONS: [PatternName; 7] = [
    PatternName::P7,
    PatternName::C7,
    PatternName::F1,
    PatternName::F2,
    PatternName::F3,
    PatternName::F4,
    PatternName::F5,
];

pub const TREE_OBSTRUCTIONS: [PatternName; 2] = [PatternName::P7, PatternName::F1];

#[derive(Clone, Debug)]
pub struct Pattern {
    pub name: PatternName,
    pub graph: Graph,
}

fn edges(name: PatternName) -> (usize, Vec<(usize, usize)>) {
    use PatternName::*;
    let cycle = |k: usize| (0..k).map(|i| (i, (i + 1) % k)).collect::<Vec<_>>();
    match name {
        K3 => (3, cycle(3)),
        K4 => (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        Diamond => (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]),
        // triangle 0 1 2 with horns 3 on 0 and 4 on 1
        Bull => (5, vec![(0, 1), (1, 2), (2, 0), (0, 3), (1, 4)]),
        K23 => (5, vec![(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]),
        // top row 0-1-2, bottom row 3-4-5
        P2xP3 => (6, vec![(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)]),
        P7 => (7, (0..6).map(|i| (i, i + 1)).collect()),
        C7 => (7, cycle(7)),
        // path 0-1-2 with pendants 3, 4, 5
        F1 => (6, vec![(0, 1), (1, 2), (0, 3), (1, 4), (2, 5)]),
        // 4-cycle 0 1 2 3 and the path 1-4-5-6
        F2 => (7, vec![(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 5), (5, 6)]),
        // 4-cycle 0 1 2 3, then 1-4, 2-5, 4-6, 5-6
        F3 => (7, vec![(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (2, 5), (4, 6), (5, 6)]),
        // 4-cycles 0 1 2 3 and 0 4 5 6
        F4 => (7, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 0)]),
        // 4-cycle p=0 q=1 r=2 s=3, path 1-4-5-3, pendant 6 on 2
        F5 => (7, vec![(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 5), (5, 3), (2, 6)]),
        // two triangles 0 1 2 and 3 4 5 joined by a perfect matching
        P2xC3 => (6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]),
    }
}

fn expected_order_size(name: PatternName) -> (usize, usize) {
    use PatternName::*;
    match name {
        K3 => (3, 3),
        K4 => (4, 6),
        Diamond => (4, 5),
        Bull => (5, 5),
        K23 => (5, 6),
        P2xP3 => (6, 7),
        P7 => (7, 6),
        C7 => (7, 7),
        F1 => (6, 5),
        F2 | F3 | F4 | F5 => (7, if name == F2 { 7 } else { 8 }),
        P2xC3 => (6, 9),
    }
}

/// All fourteen named patterns, indexed by [`PatternName`] discriminant.
pub fn catalog() -> &'static [Pattern] {
    static CATALOG: OnceLock<Vec<Pattern>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        PatternName::ALL
            .into_iter()
            .map(|name| {
                let (n, e) = edges(name);
                let graph = Graph::from_edge_list(n, &e).expect("catalog edge lists are valid");
                assert_eq!((graph.order(), graph.size()), expected_order_size(name), "{name}");
                Pattern { name, graph }
            })
            .collect()
    })
}

/// Solver-backed facts about one of P7, C7, F1..F5.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionCheck {
    pub name: PatternName,
    pub gamma: usize,
    pub gamma_e: usize,
    /// Smallest proper connected induced subgraph that already has `γ > γ_e`, if any.
    pub inner_violator: Option<VertexSet>,
    /// Catalog name of that subgraph when it is a catalog graph.
    pub inner_violator_name: Option<PatternName>,
}

impl ObstructionCheck {
    pub fn values_ok(&self) -> bool {
        (self.gamma, self.gamma_e) == (3, 2)
    }

    pub fn is_minimal(&self) -> bool {
        self.inner_violator.is_none()
    }
}

impl fmt::Display for ObstructionCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: gamma={} gamma_e={}", self.name, self.gamma, self.gamma_e)?;
        match (self.inner_violator, self.inner_violator_name) {
            (None, _) => write!(f, ", minimal"),
            (Some(s), Some(n)) => write!(f, ", not minimal: {s} induces {n}"),
            (Some(s), None) => write!(f, ", not minimal: {s} violates"),
        }
    }
}

/// Result of [`check_catalog`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogCheck {
    pub obstructions: Vec<ObstructionCheck>,
}

impl CatalogCheck {
    /// Every obstruction has `γ = 3` and `γ_e = 2`.
    pub fn values_ok(&self) -> bool {
        self.obstructions.iter().all(ObstructionCheck::values_ok)
    }

    pub fn all_minimal(&self) -> bool {
        self.obstructions.iter().all(ObstructionCheck::is_minimal)
    }

    pub fn passed(&self) -> bool {
        self.values_ok() && self.all_minimal()
    }

    /// One line per obstruction that is not minimal.
    pub fn notes(&self) -> Vec<String> {
        self.obstructions.iter().filter(|o| !o.is_minimal()).map(ToString::to_string).collect()
    }
}

fn violates(g: &Graph) -> bool {
    domination_number(g).value != exponential_domination_number(g).value
}

/// Checks the catalog against the solvers. Orders, sizes and connectivity
/// are hard errors; the values of P7, C7, F1..F5 and whether each is a
/// minimal violator of `γ = γ_e` are returned for inspection.
pub fn check_catalog() -> Result<CatalogCheck> {
    static CHECK: OnceLock<std::result::Result<CatalogCheck, String>> = OnceLock::new();
    CHECK.get_or_init(compute_check).clone().map_err(Error::SelfCheck)
}

fn compute_check() -> std::result::Result<CatalogCheck, String> {
    for p in catalog() {
        let got = (p.graph.order(), p.graph.size());
        if got != expected_order_size(p.name) {
            return Err(format!("{} has order/size {got:?}", p.name));
        }
        if !p.graph.is_connected() {
            return Err(format!("{} is disconnected", p.name));
        }
    }
    if PatternName::F1.graph().girth() != Distance::Infinite {
        return Err("F1 is not a tree".into());
    }
    let obstructions = OBSTRUCTIONS
        .iter()
        .map(|&name| {
            let g = name.graph();
            let full = g.vertices().bits();
            let inner_violator = (1..full)
                .map(VertexSet::from_bits)
                .filter(|&s| {
                    let h = g.induced_subgraph(s);
                    h.is_connected() && violates(&h)
                })
                .min_by_key(|s| (s.len(), s.bits()));
            let inner_violator_name = inner_violator.and_then(|s| {
                let h = g.induced_subgraph(s);
                PatternName::ALL.into_iter().find(|p| {
                    let q = p.graph();
                    q.order() == h.order() && q.size() == h.size() && find_induced_graph(&h, q).is_some()
                })
            });
            ObstructionCheck {
                name,
                gamma: domination_number(g).value,
                gamma_e: exponential_domination_number(g).value,
                inner_violator,
                inner_violator_name,
            }
        })
        .collect();
    Ok(CatalogCheck { obstructions })
}

/// Strict form of [`check_catalog`]: also fails when a value differs from
/// `γ = 3, γ_e = 2` or an obstruction is not a minimal violator.
pub fn self_check() -> Result<CatalogCheck> {
    let c = check_catalog()?;
    if let Some(o) = c.obstructions.iter().find(|o| !o.values_ok() || !o.is_minimal()) {
        return Err(Error::SelfCheck(o.to_string()));
    }
    Ok(c)
}

/// Injective map from pattern vertices to host vertices, `map[p] = host vertex`,
/// preserving adjacency and non-adjacency.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    pub fn image(&self) -> VertexSet {
        self.map.iter().copied().collect()
    }

    pub fn is_induced_embedding(&self, host: &Graph, pattern: &Graph) -> bool {
        let k = pattern.order();
        self.map.len() == k
            && self.image().len() == k
            && self.map.iter().all(|&h| h < host.order())
            && (0..k).all(|a| (a + 1..k).all(|b| pattern.has_edge(a, b) == host.has_edge(self.map[a], self.map[b])))
    }
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{i}->{h}")?;
        }
        Ok(())
    }
}

struct Matcher<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    order: Vec<usize>,
    host_ok: Vec<u64>,
    map: Vec<usize>,
}

impl Matcher<'_> {
    fn extend(&mut self, depth: usize, used: u64) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let p = self.order[depth];
        let mut cand = self.host_ok[p] & !used;
        for &q in &self.order[..depth] {
            let row = self.host.rows()[self.map[q]];
            cand &= if self.pattern.has_edge(p, q) { row } else { !row };
        }
        while cand != 0 {
            let h = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.map[p] = h;
            if self.extend(depth + 1, used | 1 << h) {
                return true;
            }
        }
        false
    }
}

/// Finds an induced copy of `pattern` in `host`.
///
/// Pattern vertices are matched in order of non-increasing degree (ties by
/// index), each against host vertices of at least the same degree that are
/// consistent with every earlier assignment. The first embedding found, which
/// is the least one in that matching order, is returned.
pub fn find_induced_graph(host: &Graph, pattern: &Graph) -> Option<Embedding> {
    let k = pattern.order();
    if k > host.order() {
        return None;
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&p| (std::cmp::Reverse(pattern.degree(p)), p));
    let host_ok = (0..k)
        .map(|p| {
            (0..host.order())
                .filter(|&h| host.degree(h) >= pattern.degree(p))
                .fold(0u64, |m, h| m | 1 << h)
        })
        .collect();
    let mut m = Matcher { host, pattern, order, host_ok, map: vec![0; k] };
    m.extend(0, 0).then_some(Embedding { map: m.map })
}

pub fn find_induced(host: &Graph, name: PatternName) -> Option<Embedding> {
    find_induced_graph(host, name.graph())
}

/// The first listed pattern that embeds, with its embedding.
pub fn find_any(host: &Graph, names: &[PatternName]) -> Option<(PatternName, Embedding)> {
    names.iter().find_map(|&n| find_induced(host, n).map(|e| (n, e)))
}

/// True iff no listed pattern is an induced subgraph of `host`.
pub fn is_free(host: &Graph, names: &[PatternName]) -> bool {
    find_any(host, names).is_none()
}
