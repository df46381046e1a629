//! Acceptance suite. Prints one line per criterion and exits nonzero if any fails.
//!
//! Reference values are recomputed here by brute force (all subsets, all
//! simple paths, all injections, all permutations) without the library's
//! solvers, matcher or canonical labelling.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use expdom::domination::{
    dist_constrained, domination_number, exponential_domination_number, parameters,
    porous_weight, weight, DyadicWeight,
};
use expdom::enumeration::{connected_graphs, filtered, trees};
use expdom::graph::graph6;
use expdom::hereditary::{probe_conjecture3, verify_corollary2, verify_theorem1, Engine};
use expdom::patterns::{check_catalog, find_induced_graph, PatternName, THEOREM1_RESTRICTION};
use expdom::{Distance, Graph, VertexSet};

/// Brute-force references.
mod oracle {
    use super::*;

    /// Shortest `u`-`v` path avoiding `blocked`, by listing every simple path.
    pub fn path_dist(g: &Graph, u: usize, v: usize, blocked: u64) -> Option<usize> {
        fn go(g: &Graph, at: usize, v: usize, seen: u64, len: usize, blocked: u64, best: &mut Option<usize>) {
            if at == v {
                *best = Some(best.map_or(len, |b| b.min(len)));
                return;
            }
            for w in 0..g.order() {
                if g.has_edge(at, w) && seen >> w & 1 == 0 && blocked >> w & 1 == 0 {
                    go(g, w, v, seen | 1 << w, len + 1, blocked, best);
                }
            }
        }
        if blocked >> u & 1 == 1 {
            return None;
        }
        let mut best = None;
        go(g, u, v, 1 << u, 0, blocked, &mut best);
        best
    }

    /// Distance from `u` to `v` in `G - (D \ {v})`.
    pub fn dist(g: &Graph, d: u64, u: usize, v: usize) -> Option<usize> {
        path_dist(g, u, v, d & !(1 << v))
    }

    /// `w(u)` (or `w*(u)`) times `2^n`.
    pub fn scaled_weight(g: &Graph, d: u64, u: usize, porous: bool) -> u128 {
        let n = g.order();
        (0..n)
            .filter(|&v| d >> v & 1 == 1)
            .filter_map(|v| if porous { path_dist(g, u, v, 0) } else { dist(g, d, u, v) })
            .map(|k| 1u128 << (n + 1 - k))
            .sum()
    }

    pub fn to_dyadic(g: &Graph, scaled: u128) -> DyadicWeight {
        DyadicWeight::new(scaled, g.order() as u32)
    }

    fn dominates(g: &Graph, d: u64) -> bool {
        (0..g.order()).all(|u| d >> u & 1 == 1 || (0..g.order()).any(|v| d >> v & 1 == 1 && g.has_edge(u, v)))
    }

    fn exp_dominates(g: &Graph, d: u64, porous: bool) -> bool {
        (0..g.order()).all(|u| scaled_weight(g, d, u, porous) >> g.order() >= 1)
    }

    /// Minimum size and the numerically smallest minimum set.
    fn smallest(g: &Graph, ok: impl Fn(u64) -> bool) -> (usize, u64) {
        (0u64..1 << g.order())
            .filter(|&d| ok(d))
            .map(|d| (d.count_ones() as usize, d))
            .min()
            .expect("the full set always qualifies")
    }

    pub fn gamma(g: &Graph) -> (usize, u64) {
        smallest(g, |d| dominates(g, d))
    }

    pub fn gamma_e(g: &Graph) -> usize {
        smallest(g, |d| d != 0 && exp_dominates(g, d, false)).0
    }

    pub fn gamma_e_star(g: &Graph) -> usize {
        smallest(g, |d| d != 0 && exp_dominates(g, d, true)).0
    }

    pub fn is_connected(n: usize, adj: &[u64]) -> bool {
        let mut seen = 1u64;
        let mut stack = vec![0];
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if adj[u] >> v & 1 == 1 && seen >> v & 1 == 0 {
                    seen |= 1 << v;
                    stack.push(v);
                }
            }
        }
        seen.count_ones() as usize == n
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    /// Number of isomorphism classes of connected graphs on `n` vertices, by
    /// taking the least upper-triangle bit string over all relabellings.
    pub fn connected_class_count(n: usize) -> usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let perms = permutations(n);
        let mut classes = BTreeSet::new();
        for mask in 0u64..1 << pairs.len() {
            let mut adj = vec![0u64; n];
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
            }
            if n > 0 && !is_connected(n, &adj) {
                continue;
            }
            let key = perms
                .iter()
                .map(|p| {
                    pairs.iter().enumerate().fold(0u64, |acc, (k, &(i, j))| {
                        acc | (((adj[p[i]] >> p[j]) & 1) << k)
                    })
                })
                .min()
                .unwrap();
            classes.insert(key);
        }
        classes.len()
    }

    /// Exhaustive search over injections, assigning pattern vertices in index order.
    pub fn embeds(host: &Graph, pattern: &Graph) -> bool {
        fn go(host: &Graph, pattern: &Graph, map: &mut Vec<usize>) -> bool {
            let i = map.len();
            if i == pattern.order() {
                return true;
            }
            for h in 0..host.order() {
                if map.contains(&h) {
                    continue;
                }
                if (0..i).all(|j| pattern.has_edge(i, j) == host.has_edge(h, map[j])) {
                    map.push(h);
                    if go(host, pattern, map) {
                        return true;
                    }
                    map.pop();
                }
            }
            false
        }
        go(host, pattern, &mut Vec::new())
    }

    pub fn is_induced_embedding(host: &Graph, pattern: &Graph, map: &[usize]) -> bool {
        let distinct: BTreeSet<_> = map.iter().collect();
        map.len() == pattern.order()
            && distinct.len() == map.len()
            && map.iter().all(|&h| h < host.order())
            && (0..map.len())
                .all(|i| (0..i).all(|j| pattern.has_edge(i, j) == host.has_edge(map[i], map[j])))
    }

    /// graph6 written directly from the format description.
    pub fn graph6(g: &Graph) -> String {
        let n = g.order();
        let mut bytes: Vec<u8> = Vec::new();
        if n <= 62 {
            bytes.push(n as u8 + 63);
        } else {
            bytes.push(126);
            for shift in [12, 6, 0] {
                bytes.push(((n >> shift) & 63) as u8 + 63);
            }
        }
        let bits: Vec<bool> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).map(|(i, j)| g.has_edge(i, j)).collect();
        for chunk in bits.chunks(6) {
            let mut v = 0u8;
            for (k, &b) in chunk.iter().enumerate() {
                if b {
                    v |= 1 << (5 - k);
                }
            }
            bytes.push(v + 63);
        }
        String::from_utf8(bytes).unwrap()
    }
}

fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edge_list(n, &edges).unwrap()
}

fn random_nonempty_subset(rng: &mut StdRng, n: usize) -> VertexSet {
    loop {
        let s: VertexSet = (0..n).filter(|_| rng.gen_bool(0.35)).collect();
        if !s.is_empty() {
            return s;
        }
    }
}

fn all_connected(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(|n| connected_graphs(n).unwrap().into_graphs()).collect()
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion1() -> Outcome {
    let expected = [1, 1, 2, 6, 21, 112, 853, 11117];
    let mut total = 0;
    for n in 1..=8 {
        let s = connected_graphs(n).unwrap();
        check(s.len() == expected[n - 1], || format!("n={n}: {} classes, expected {}", s.len(), expected[n - 1]))?;
        if n <= 6 {
            let brute = oracle::connected_class_count(n);
            check(s.len() == brute, || format!("n={n}: {} classes, brute force gives {brute}", s.len()))?;
        }
        for g in s.iter() {
            let p = parameters(g);
            check(p.chain_holds(), || format!("chain fails on {g}: {p:?}"))?;
            if n <= 6 {
                let want = (oracle::gamma(g).0, oracle::gamma_e(g), oracle::gamma_e_star(g));
                check((p.gamma, p.gamma_e, p.gamma_e_star) == want, || format!("{g}: {p:?} vs oracle {want:?}"))?;
            }
        }
        total += s.len();
    }
    Ok(format!("{total} connected graphs n<=8, 0 violations; class counts and values match brute force for n<=6"))
}

fn criterion2() -> Outcome {
    let engine = Engine::new();
    let r = verify_theorem1(&engine, 9).map_err(|e| e.to_string())?;
    check(r.counterexamples.is_empty(), || format!("counterexamples: {:?}", r.counterexamples))?;
    check(r.chain_violations.is_empty(), || format!("chain violations: {:?}", r.chain_violations))?;
    for n in 1..=8 {
        let post = filtered(connected_graphs(n).unwrap(), &THEOREM1_RESTRICTION).len();
        check(r.counts[&n] == post, || format!("n={n}: sweep scanned {}, filtered stream has {post}", r.counts[&n]))?;
    }
    Ok(format!("{} restricted graphs n<=9, 0 counterexamples", r.total()))
}

fn criterion3() -> Outcome {
    let expected = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551];
    for (i, &want) in expected.iter().enumerate() {
        let got = trees(i + 1).unwrap().len();
        check(got == want, || format!("{got} trees of order {}, expected {want}", i + 1))?;
    }
    let r = verify_corollary2(&Engine::new(), 12).map_err(|e| e.to_string())?;
    check(r.counterexamples.is_empty(), || format!("counterexamples: {:?}", r.counterexamples))?;
    check(r.total() == expected.iter().sum::<usize>(), || format!("scanned {}", r.total()))?;
    Ok(format!("{} trees n<=12, 0 counterexamples", r.total()))
}

fn criterion4() -> Outcome {
    let c = check_catalog().map_err(|e| e.to_string())?;
    let mut lines = Vec::new();
    for o in &c.obstructions {
        let g = o.name.graph();
        let brute = (oracle::gamma(g).0, oracle::gamma_e(g));
        check(brute == (o.gamma, o.gamma_e), || format!("{}: solver {:?}, brute force {brute:?}", o.name, (o.gamma, o.gamma_e)))?;
        lines.push(o.to_string());
    }
    let summary = lines.join("; ");
    if c.passed() {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn criterion5() -> Outcome {
    let c6 = Graph::cycle(6);
    let prism = PatternName::P2xC3.graph();
    for (name, g) in [("C6", &c6), ("P2xC3", prism)] {
        let (a, b) = (domination_number(g).value, exponential_domination_number(g).value);
        check((a, b) == (2, 2), || format!("{name}: gamma={a}, gamma_e={b}"))?;
    }
    let two = DyadicWeight::new(2, 0);
    let one = DyadicWeight::new(1, 0);
    let mut rng = StdRng::seed_from_u64(5);
    let mut neighbours_checked = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=16);
        let p = rng.gen_range(0.1..0.6);
        let g = random_graph(&mut rng, n, p);
        let d = random_nonempty_subset(&mut rng, n);
        let members = d.to_vec();
        let u = members[rng.gen_range(0..members.len())];
        let w = weight(&g, d, u).unwrap();
        check(w == two, || format!("{g}, D={d}, u={u}: w={w}"))?;
        for x in g.vertices() {
            if !d.contains(x) && g.neighbors(x).intersects(d) {
                let w = weight(&g, d, x).unwrap();
                check(w >= one, || format!("{g}, D={d}, x={x}: w={w}"))?;
                neighbours_checked += 1;
            }
        }
    }
    Ok(format!("spot values exact; 100 instances with w(u)=2, {neighbours_checked} neighbours with w>=1"))
}

fn criterion6() -> Outcome {
    let graphs7 = all_connected(7);
    for g in &graphs7 {
        let r = domination_number(g);
        let want = oracle::gamma(g);
        check((r.value, r.certificate.bits()) == want, || format!("{g}: B&B {:?}, subsets {want:?}", (r.value, r.certificate)))?;
    }
    let mut pairs = 0;
    for g in all_connected(6) {
        let n = g.order();
        for d in 1u64..1 << n {
            let ds = VertexSet::from_bits(d);
            for u in 0..n {
                for v in ds {
                    let got = dist_constrained(&g, ds, u, v).unwrap();
                    let want = oracle::dist(&g, d, u, v).map_or(Distance::Infinite, Distance::Finite);
                    check(got == want, || format!("{g}, D={ds}: dist({u},{v}) = {got}, paths give {want}"))?;
                }
                let w = weight(&g, ds, u).unwrap();
                let want = oracle::to_dyadic(&g, oracle::scaled_weight(&g, d, u, false));
                check(w == want, || format!("{g}, D={ds}, u={u}: w={w}, paths give {want}"))?;
                let ws = porous_weight(&g, ds, u).unwrap();
                let want = oracle::to_dyadic(&g, oracle::scaled_weight(&g, d, u, true));
                check(ws == want, || format!("{g}, D={ds}, u={u}: w*={ws}, paths give {want}"))?;
                pairs += 1;
            }
        }
    }
    check(pairs >= 1000, || format!("only {pairs} (D,u) pairs"))?;
    let hosts = all_connected(8);
    let mut matches = 0;
    for h in &hosts {
        for p in PatternName::ALL {
            let pat = p.graph();
            let got = find_induced_graph(h, pat);
            check(got.is_some() == oracle::embeds(h, pat), || format!("{h} vs {p}: matcher {got:?}"))?;
            if let Some(e) = got {
                check(oracle::is_induced_embedding(h, pat, &e.map), || format!("{h} vs {p}: invalid {e}"))?;
                matches += 1;
            }
        }
    }
    Ok(format!(
        "gamma on {} graphs n<=7; weights on all {pairs} (D,u) pairs of connected n<=6; matcher on {} hosts x 14 patterns ({matches} embeddings)",
        graphs7.len(),
        hosts.len()
    ))
}

fn criterion7() -> Outcome {
    let star = Graph::star(4);
    let d: VertexSet = [1, 2, 3].into_iter().collect();
    let before = weight(&star, d, 4).unwrap();
    let after = weight(&star, d.with(0), 4).unwrap();
    check(before == DyadicWeight::new(3, 1) && after == DyadicWeight::new(1, 0), || {
        format!("K_1,4: w(4) = {before} then {after}")
    })?;
    check(oracle::scaled_weight(&star, d.bits(), 4, false) > oracle::scaled_weight(&star, d.with(0).bits(), 4, false), || {
        "oracle disagrees on the witness".into()
    })?;
    let mut rng = StdRng::seed_from_u64(7);
    let mut decreases = 0;
    let mut trials = 0;
    while trials < 10_000 {
        let n = rng.gen_range(2..=14);
        let p = rng.gen_range(0.1..0.7);
        let g = random_graph(&mut rng, n, p);
        let d = random_nonempty_subset(&mut rng, n);
        let outside = g.vertices().difference(d).to_vec();
        if outside.is_empty() {
            continue;
        }
        trials += 1;
        let v = outside[rng.gen_range(0..outside.len())];
        let u = rng.gen_range(0..n);
        let (a, b) = (porous_weight(&g, d, u).unwrap(), porous_weight(&g, d.with(v), u).unwrap());
        check(b >= a, || format!("{g}, D={d}, add {v}: w*({u}) fell from {a} to {b}"))?;
        if weight(&g, d.with(v), u).unwrap() < weight(&g, d, u).unwrap() {
            decreases += 1;
        }
    }
    Ok(format!("K_1,4 witness w(4): 3/2 -> 1; porous weight never fell in 10000 trials ({decreases} non-porous decreases seen)"))
}

fn criterion8() -> Outcome {
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let a = single.install(|| probe_conjecture3(&Engine::new(), 8)).map_err(|e| e.to_string())?;
    let b = probe_conjecture3(&Engine::new(), 8).map_err(|e| e.to_string())?;
    check(a.without_timing().to_json() == b.without_timing().to_json(), || "reports differ between runs".into())?;
    check(a.chain_violations.is_empty(), || format!("chain violations: {:?}", a.chain_violations))?;
    for g6 in &a.counterexamples {
        println!("  divergence between G and G*: {g6}");
    }
    check(a.total() == 1 + 1 + 2 + 6 + 21 + 112 + 853 + 11117, || format!("scanned {}", a.total()))?;
    Ok(format!("{} graphs n<=8, deterministic, chain holds, {} divergences", a.total(), a.counterexamples.len()))
}

fn criterion9() -> Outcome {
    let mut count = 0;
    for g in all_connected(8) {
        let s = graph6::encode(&g);
        check(s == oracle::graph6(&g), || format!("encoder disagrees with reference on {s}"))?;
        check(graph6::decode(&s).as_ref() == Ok(&g), || format!("{s} does not round-trip"))?;
        count += 1;
    }
    let mut rng = StdRng::seed_from_u64(9);
    for _ in 0..1000 {
        let n = rng.gen_range(0..=64);
        let p = rng.gen_range(0.0..1.0);
        let g = random_graph(&mut rng, n, p);
        let s = graph6::encode(&g);
        check(s == oracle::graph6(&g), || format!("encoder disagrees with reference on n={n}"))?;
        let back = graph6::decode(&s).map_err(|e| e.to_string())?;
        check(back == g && graph6::encode(&back) == s, || format!("n={n} graph does not round-trip"))?;
    }
    Ok(format!("{count} enumerated graphs n<=8 and 1000 random graphs n<=64 round-trip"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("inequality chain on connected graphs n<=8", criterion1),
        ("restricted-class characterization sweep n<=9", criterion2),
        ("tree characterization sweep n<=12", criterion3),
        ("catalog self-check", criterion4),
        ("spot values and weight identities", criterion5),
        ("oracle equivalences", criterion6),
        ("non-monotone witness and porous monotonicity", criterion7),
        ("G versus G* probe n<=8", criterion8),
        ("graph6 round trip", criterion9),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {}: PASS [{title}] {msg} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL [{title}] {msg} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
