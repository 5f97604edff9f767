//! Brute-force oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use surfcalc::dualgraph::{is_negative_definite, DualGraph};

pub fn graph(weights: &[i64], edges: &[(usize, usize)]) -> DualGraph {
    let mut g = DualGraph::new();
    for (i, w) in weights.iter().enumerate() {
        g.add_curve(format!("v{i}"), *w, true).unwrap();
    }
    for &(a, b) in edges {
        g.add_edge(&format!("v{a}"), &format!("v{b}")).unwrap();
    }
    g
}

/// Minimal `Z` with all coefficients in `1..=bound` and `Z.E <= 0` for every
/// curve, by exhaustive odometer enumeration.
pub fn brute_fundamental_cycle(g: &DualGraph, bound: i64) -> Option<BTreeMap<String, i64>> {
    let names: Vec<&str> = g.names().collect();
    let n = names.len();
    let m: Vec<Vec<i64>> = names
        .iter()
        .map(|a| names.iter().map(|b| g.pair(a, b)).collect())
        .collect();
    let mut z = vec![1i64; n];
    let mut p: Vec<i64> = (0..n).map(|i| m[i].iter().sum()).collect();
    let mut positive = p.iter().filter(|&&v| v > 0).count();
    let mut best: Option<(i64, Vec<i64>)> = None;
    loop {
        if positive == 0 {
            let s: i64 = z.iter().sum();
            match &mut best {
                Some((bs, bz)) => {
                    // anti-nef cycles are closed under minimum, so track the meet
                    for (b, v) in bz.iter_mut().zip(&z) {
                        *b = (*b).min(*v);
                    }
                    *bs = (*bs).min(s);
                }
                None => best = Some((s, z.clone())),
            }
        }
        let mut k = 0;
        loop {
            if k == n {
                return best.map(|(_, bz)| names.iter().map(|s| s.to_string()).zip(bz).collect());
            }
            let delta = if z[k] < bound { 1 } else { 1 - bound };
            z[k] += delta;
            for i in 0..n {
                let before = p[i] > 0;
                p[i] += m[i][k] * delta;
                match (before, p[i] > 0) {
                    (false, true) => positive += 1,
                    (true, false) => positive -= 1,
                    _ => {}
                }
            }
            if delta == 1 {
                break;
            }
            k += 1;
        }
    }
}

fn canonical_rooted(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&u| u != parent)
        .map(|&u| canonical_rooted(adj, u, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn canonical_tree(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    (0..n).map(|r| canonical_rooted(&adj, r, usize::MAX)).min().unwrap()
}

/// All trees on `n` vertices up to isomorphism, as edge lists.
pub fn trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    let mut level: Vec<Vec<(usize, usize)>> = vec![vec![]];
    for size in 1..n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..size {
                let mut e = t.clone();
                e.push((v, size));
                if seen.insert(canonical_tree(size + 1, &e)) {
                    next.push(e);
                }
            }
        }
        level = next;
    }
    level
}

/// Connected negative-definite test family for the fundamental cycle oracle:
/// trees on up to 6 vertices with weights in {-2, -3}, trees on 7 and 8
/// vertices with a single -3, and cycles of length 3 to 6.
pub fn negative_definite_family() -> Vec<DualGraph> {
    let mut out = Vec::new();
    for n in 1..=6 {
        for t in trees(n) {
            for mask in 0..(1u32 << n) {
                let w: Vec<i64> = (0..n).map(|i| if mask >> i & 1 == 1 { -3 } else { -2 }).collect();
                out.push(graph(&w, &t));
            }
        }
    }
    for n in 7..=8 {
        for t in trees(n) {
            for heavy in 0..n {
                let w: Vec<i64> = (0..n).map(|i| if i == heavy { -3 } else { -2 }).collect();
                out.push(graph(&w, &t));
            }
            out.push(graph(&vec![-2; n], &t));
        }
    }
    for n in 3..=6 {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        out.push(graph(&vec![-3; n], &edges));
        let mut w = vec![-2; n];
        w[0] = -3;
        out.push(graph(&w, &edges));
    }
    out.retain(is_negative_definite);
    // the same weighted tree can arise from several masks; keep one copy
    let mut seen = BTreeSet::new();
    out.retain(|g| seen.insert(surfcalc::dualgraph::io::to_json(g)));
    out
}

/// Continuant of a chain of positive entries, computed directly.
pub fn continuant(entries: &[u64]) -> u64 {
    let (mut prev, mut cur) = (1u64, 1u64);
    for (k, &a) in entries.iter().enumerate() {
        let next = if k == 0 { a } else { a * cur - prev };
        prev = cur;
        cur = next;
    }
    cur
}

/// Every chain with entries `>= 2` and continuant at most `max`, by DFS.
pub fn chains_up_to(max: u64) -> Vec<Vec<u64>> {
    fn go(cur: &mut Vec<u64>, max: u64, out: &mut Vec<Vec<u64>>) {
        for a in 2..=max + 1 {
            cur.push(a);
            if continuant(cur) <= max {
                out.push(cur.clone());
                go(cur, max, out);
                cur.pop();
            } else {
                cur.pop();
                // the continuant grows with the appended entry
                break;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), max, &mut out);
    out
}

/// Contracts a linear chain of weights by (-1)-curves in every possible
/// order; returns the multiplicities read back from one successful
/// contraction to a single 0-curve, or `None`.
pub fn chain_fiber_multiplicities(weights: &[i64]) -> Option<Vec<i64>> {
    // a state is a list of (weight, original indices with their multiplicity
    // contributions expressed via the blow-up history)
    fn solve(w: Vec<i64>) -> Option<Vec<(usize, usize)>> {
        if w.len() == 1 {
            return (w[0] == 0).then(Vec::new);
        }
        for i in 0..w.len() {
            if w[i] != -1 {
                continue;
            }
            let mut next = w.clone();
            if i > 0 {
                next[i - 1] += 1;
            }
            if i + 1 < next.len() {
                next[i + 1] += 1;
            }
            next.remove(i);
            if let Some(mut hist) = solve(next) {
                hist.push((i, w.len()));
                return Some(hist);
            }
        }
        None
    }
    let hist = solve(weights.to_vec())?;
    // replay the blow-ups from the 0-curve with multiplicity 1
    let mut m: Vec<i64> = vec![1];
    for &(i, len) in &hist {
        let left = if i > 0 { m[i - 1] } else { 0 };
        let right = if i < len - 1 { m[i] } else { 0 };
        m.insert(i, left + right);
    }
    Some(m)
}
