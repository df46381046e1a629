//! Canonical labelling by partition refinement and individualisation.
//!
//! The search tree is the usual one: refine the ordered partition to an
//! equitable one, pick the first non-singleton cell and individualise each
//! of its vertices in turn. Every leaf is a discrete partition, hence a
//! relabelling, and the canonical form is the relabelled graph whose
//! row-major adjacency bit string is lexicographically smallest.
//!
//! Vertices of the target cell that are twins of an already tried vertex
//! are skipped: the transposition of two twins is an automorphism that
//! fixes every individualised vertex, so both subtrees hold the same leaves.

use std::cmp::Ordering;

use super::Graph;

/// Complete isomorphism invariant: the graph6 string of the canonical form.
///
/// Its length depends only on the order, and the ordering is by order first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Box<str>);

impl CanonicalCode {
    pub fn order(&self) -> usize {
        self.to_graph().order()
    }

    /// The canonical representative.
    pub fn to_graph(&self) -> Graph {
        super::graph6::decode(&self.0).expect("canonical codes are valid graph6")
    }

    pub fn as_graph6(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }
}

impl std::fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CanonicalCode({})", self.0)
    }
}

impl std::fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn canonical_code(g: &Graph) -> CanonicalCode {
    let (c, _) = canonical_form(g);
    CanonicalCode(super::graph6::encode(&c).into_boxed_str())
}

/// Canonical form and the labelling that produces it: `label[v]` is the new name of `v`.
pub fn canonical_form(g: &Graph) -> (Graph, Vec<usize>) {
    let n = g.order();
    if n == 0 {
        return (g.clone(), Vec::new());
    }
    let mut search = Search {
        g,
        best_key: Vec::new(),
        best_label: Vec::new(),
        key: vec![0; n],
        label: vec![0; n],
    };
    search.descend(vec![g.vertices().bits()]);
    let rows = (0..n)
        .map(|i| search.best_key[i].reverse_bits())
        .collect();
    (Graph::from_rows_unchecked(rows), search.best_label)
}

struct Search<'a> {
    g: &'a Graph,
    best_key: Vec<u64>,
    best_label: Vec<usize>,
    key: Vec<u64>,
    label: Vec<usize>,
}

impl Search<'_> {
    fn descend(&mut self, mut cells: Vec<u64>) {
        refine(self.g, &mut cells);
        let Some(target) = cells.iter().position(|c| c.count_ones() > 1) else {
            self.leaf(&cells);
            return;
        };
        let cell = cells[target];
        let mut tried = 0u64;
        let mut rest = cell;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.has_twin_in(v, tried) {
                continue;
            }
            tried |= 1 << v;
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(1 << v);
            next.push(cell & !(1 << v));
            next.extend_from_slice(&cells[target + 1..]);
            self.descend(next);
        }
    }

    fn has_twin_in(&self, v: usize, set: u64) -> bool {
        let rows = self.g.rows();
        let mut s = set;
        while s != 0 {
            let u = s.trailing_zeros() as usize;
            s &= s - 1;
            if rows[u] & !(1 << v) == rows[v] & !(1 << u) {
                return true;
            }
        }
        false
    }

    fn leaf(&mut self, cells: &[u64]) {
        let n = self.g.order();
        for (pos, c) in cells.iter().enumerate() {
            self.label[c.trailing_zeros() as usize] = pos;
        }
        let rows = self.g.rows();
        for (pos, c) in cells.iter().enumerate() {
            let u = c.trailing_zeros() as usize;
            let mut r = 0u64;
            let mut nb = rows[u];
            while nb != 0 {
                let v = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                r |= 1 << self.label[v];
            }
            // bit 0 becomes the most significant, so numeric order is string order
            self.key[pos] = r.reverse_bits();
        }
        let better = self.best_key.is_empty() || self.key.cmp(&self.best_key) == Ordering::Less;
        if better {
            self.best_key.clone_from(&self.key);
            self.best_label.clone_from(&self.label);
        }
        debug_assert_eq!(self.key.len(), n);
    }
}

/// Refines an ordered partition (cells as bit masks) until it is equitable.
///
/// A cell is split by the number of neighbours its vertices have in a
/// splitter cell; fragments are ordered by increasing count. Every step
/// depends only on the structure, so the result is label-equivariant.
fn refine(g: &Graph, cells: &mut Vec<u64>) {
    let rows = g.rows();
    let mut counts: Vec<(u32, usize)> = Vec::with_capacity(g.order());
    'outer: loop {
        for s in 0..cells.len() {
            let splitter = cells[s];
            for c in 0..cells.len() {
                let cell = cells[c];
                if cell.count_ones() < 2 {
                    continue;
                }
                counts.clear();
                let mut m = cell;
                while m != 0 {
                    let v = m.trailing_zeros() as usize;
                    m &= m - 1;
                    counts.push(((rows[v] & splitter).count_ones(), v));
                }
                let first = counts[0].0;
                if counts.iter().all(|&(k, _)| k == first) {
                    continue;
                }
                counts.sort_unstable();
                let mut fragments = Vec::new();
                let mut cur = 0u64;
                let mut cur_k = counts[0].0;
                for &(k, v) in &counts {
                    if k != cur_k {
                        fragments.push(cur);
                        cur = 0;
                        cur_k = k;
                    }
                    cur |= 1 << v;
                }
                fragments.push(cur);
                cells.splice(c..=c, fragments);
                continue 'outer;
            }
        }
        break;
    }
}
