//! Exact exponential-domination weights.
//!
//! Every weight of a graph of order `n` is kept at the fixed scale `2^n`.
//! A finite constrained distance satisfies `d <= n - 1`, so the summand
//! `(1/2)^(d-1)` is the integer `2^(n+1-d)` at that scale and no rounding
//! ever happens. Numerators are `u128`: a sum of at most 64 terms, each at
//! most `2^65`, fits.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Distance, Graph, VertexSet};

/// `numerator / 2^scale_exponent`.
#[derive(Clone, Copy, Debug)]
pub struct DyadicWeight {
    numerator: u128,
    scale_exponent: u32,
}

impl DyadicWeight {
    pub const fn new(numerator: u128, scale_exponent: u32) -> Self {
        DyadicWeight { numerator, scale_exponent }
    }

    pub const fn zero(scale_exponent: u32) -> Self {
        DyadicWeight::new(0, scale_exponent)
    }

    pub const fn numerator(self) -> u128 {
        self.numerator
    }

    pub const fn scale_exponent(self) -> u32 {
        self.scale_exponent
    }

    /// `(1/2)^(d-1)` at scale `2^k`; zero for an infinite distance.
    pub fn term(d: Distance, k: u32) -> Self {
        match d {
            Distance::Finite(d) => {
                let e = k as i64 + 1 - d as i64;
                assert!(e >= 0, "distance {d} not representable at scale 2^{k}");
                DyadicWeight::new(1u128 << e, k)
            }
            Distance::Infinite => DyadicWeight::zero(k),
        }
    }

    /// Exact `self >= 1`.
    pub fn at_least_one(self) -> bool {
        self.numerator >= 1u128 << self.scale_exponent
    }

    /// Numerator at the finer scale `2^k`, `k >= scale_exponent`.
    fn numerator_at(self, k: u32) -> u128 {
        let shift = k - self.scale_exponent;
        self.numerator
            .checked_shl(shift)
            .filter(|x| x >> shift == self.numerator)
            .expect("dyadic weight overflow")
    }

    /// Lowest-terms representation.
    pub fn reduced(self) -> Self {
        if self.numerator == 0 {
            return DyadicWeight::zero(0);
        }
        let tz = self.numerator.trailing_zeros().min(self.scale_exponent);
        DyadicWeight::new(self.numerator >> tz, self.scale_exponent - tz)
    }
}

impl std::ops::Add for DyadicWeight {
    type Output = DyadicWeight;

    fn add(self, rhs: Self) -> Self {
        let k = self.scale_exponent.max(rhs.scale_exponent);
        DyadicWeight::new(self.numerator_at(k) + rhs.numerator_at(k), k)
    }
}

impl Ord for DyadicWeight {
    fn cmp(&self, other: &Self) -> Ordering {
        let a = self.reduced();
        let b = other.reduced();
        // compare a.num / 2^ka with b.num / 2^kb by lifting the smaller scale
        let (x, kx, y, ky, flip) = if a.scale_exponent >= b.scale_exponent {
            (a.numerator, a.scale_exponent, b.numerator, b.scale_exponent, false)
        } else {
            (b.numerator, b.scale_exponent, a.numerator, a.scale_exponent, true)
        };
        let shift = kx - ky;
        let ord = if y == 0 {
            x.cmp(&0)
        } else if shift >= 128 || y.leading_zeros() < shift {
            Ordering::Less
        } else {
            x.cmp(&(y << shift))
        };
        if flip {
            ord.reverse()
        } else {
            ord
        }
    }
}

impl PartialOrd for DyadicWeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for DyadicWeight {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for DyadicWeight {}

impl fmt::Display for DyadicWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.numerator, self.scale_exponent)
    }
}

fn check_inputs(g: &Graph, d: VertexSet, u: usize) -> Result<()> {
    g.check_set(d)?;
    g.check_vertex(u)?;
    if d.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(())
}

/// Minimum length of a `u`-`v` path with exactly one end vertex (namely `v`) in `d`
/// and no internal vertex in `d`.
pub fn dist_constrained(g: &Graph, d: VertexSet, u: usize, v: usize) -> Result<Distance> {
    g.check_set(d)?;
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if !d.contains(v) {
        return Err(Error::NotInSet(v));
    }
    if u == v {
        return Ok(Distance::Finite(0));
    }
    if d.contains(u) {
        return Ok(Distance::Infinite);
    }
    Ok(g.bfs_within(v, g.vertices().difference(d).with(v))[u])
}

/// Constrained distances from every member of a fixed set `d`, computed with one
/// BFS per member on the graph with the other members removed.
pub struct ConstrainedDistances<'a> {
    g: &'a Graph,
    d: VertexSet,
    from: Vec<(usize, Vec<Distance>)>,
}

impl<'a> ConstrainedDistances<'a> {
    pub fn new(g: &'a Graph, d: VertexSet) -> Result<Self> {
        g.check_set(d)?;
        let others = g.vertices().difference(d);
        let from = d.iter().map(|v| (v, g.bfs_within(v, others.with(v)))).collect();
        Ok(ConstrainedDistances { g, d, from })
    }

    pub fn get(&self, u: usize, v: usize) -> Option<Distance> {
        let (_, dist) = self.from.iter().find(|(w, _)| *w == v)?;
        Some(if u != v && self.d.contains(u) { Distance::Infinite } else { dist[u] })
    }

    pub fn weight(&self, u: usize) -> DyadicWeight {
        let k = self.g.order() as u32;
        if self.d.contains(u) {
            return DyadicWeight::new(2u128 << k, k);
        }
        self.from
            .iter()
            .map(|(_, dist)| DyadicWeight::term(dist[u], k))
            .fold(DyadicWeight::zero(k), |a, b| a + b)
    }
}

/// `w_(G,D)(u)`.
pub fn weight(g: &Graph, d: VertexSet, u: usize) -> Result<DyadicWeight> {
    check_inputs(g, d, u)?;
    Ok(ConstrainedDistances::new(g, d)?.weight(u))
}

/// `w_(G,D)(u)` for every vertex `u`.
pub fn weights(g: &Graph, d: VertexSet) -> Result<Vec<DyadicWeight>> {
    if d.is_empty() {
        return Err(Error::EmptySet);
    }
    let cd = ConstrainedDistances::new(g, d)?;
    Ok((0..g.order()).map(|u| cd.weight(u)).collect())
}

/// `w*_(G,D)(u)`: like [`weight`] but with ordinary graph distances.
pub fn porous_weight(g: &Graph, d: VertexSet, u: usize) -> Result<DyadicWeight> {
    check_inputs(g, d, u)?;
    Ok(porous_weights(g, d)?[u])
}

pub fn porous_weights(g: &Graph, d: VertexSet) -> Result<Vec<DyadicWeight>> {
    g.check_set(d)?;
    if d.is_empty() {
        return Err(Error::EmptySet);
    }
    let k = g.order() as u32;
    let mut out = vec![DyadicWeight::zero(k); g.order()];
    for v in d {
        for (u, dist) in g.bfs(v).into_iter().enumerate() {
            out[u] = out[u] + DyadicWeight::term(dist, k);
        }
    }
    Ok(out)
}

/// Every vertex outside `d` has a neighbour in `d`.
pub fn is_dominating(g: &Graph, d: VertexSet) -> bool {
    g.closed_neighborhood_of(d.intersection(g.vertices())) == g.vertices()
}

pub fn is_exponential_dominating(g: &Graph, d: VertexSet) -> bool {
    d.is_subset(g.vertices()) && threshold_met(g, d.bits(), false)
}

pub fn is_porous_exponential_dominating(g: &Graph, d: VertexSet) -> bool {
    d.is_subset(g.vertices()) && threshold_met(g, d.bits(), true)
}

/// Checks `w(u) >= 1` (or `w*(u) >= 1`) for all `u` at scale `2^n`, with word-level BFS.
pub(crate) fn threshold_met(g: &Graph, d: u64, porous: bool) -> bool {
    let n = g.order();
    if n == 0 {
        return true;
    }
    if d == 0 {
        return false;
    }
    let rows = g.rows();
    let full = VertexSet::full(n).bits();
    let mut acc = [0u128; 64];
    let mut rest = d;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let allowed = if porous { full } else { full & !(d & !(1 << v)) };
        let mut seen = 1u64 << v;
        let mut frontier = seen;
        let mut dist = 0;
        while frontier != 0 {
            dist += 1;
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                next |= rows[f.trailing_zeros() as usize];
                f &= f - 1;
            }
            next &= allowed & !seen;
            seen |= next;
            frontier = next;
            let term = 1u128 << (n + 1 - dist);
            let mut m = next & !d;
            while m != 0 {
                acc[m.trailing_zeros() as usize] += term;
                m &= m - 1;
            }
        }
    }
    let one = 1u128 << n;
    let mut outside = full & !d;
    while outside != 0 {
        let u = outside.trailing_zeros() as usize;
        if acc[u] < one {
            return false;
        }
        outside &= outside - 1;
    }
    true
}
