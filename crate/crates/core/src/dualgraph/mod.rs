//! Weighted dual graphs of rational curves and their intersection theory.
//!
//! A vertex is a smooth rational curve carrying its self-intersection number;
//! an edge is one transversal intersection point. Every operation returns a
//! new value, graphs are never mutated behind a shared reference.

mod blowup;
mod cycle;
mod divisor;
mod fiber;
pub mod io;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

pub use blowup::{
    blow_down, blow_up, boundary_multiplicity, lc_correction, log_canonical_coefficient, pullback,
    total_transform, track_log_canonical, BlowupStep, Center, CenterContext, LogCanonicalTrack,
};
pub use cycle::{
    classify_exceptional, fundamental_cycle, fundamental_cycle_in_order, ExceptionalType,
};
pub use divisor::Divisor;
pub use fiber::{fiber_contraction, verify_fiber};

use crate::error::{Error, Result};
use crate::exactmath::matrix::RatMatrix;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Curve {
    pub weight: i64,
    pub boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DualGraph {
    vertices: BTreeMap<String, Curve>,
    edges: BTreeSet<(String, String)>,
}

fn edge_key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_owned(), b.to_owned())
    } else {
        (b.to_owned(), a.to_owned())
    }
}

impl DualGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// A linear chain `prefix1 - prefix2 - ...` with the given self-intersections.
    pub fn chain(prefix: &str, weights: &[i64], boundary: bool) -> Self {
        let mut g = DualGraph::new();
        let mut prev: Option<String> = None;
        for (i, &w) in weights.iter().enumerate() {
            let name = format!("{prefix}{}", i + 1);
            g.vertices.insert(name.clone(), Curve { weight: w, boundary });
            if let Some(p) = prev {
                g.edges.insert(edge_key(&p, &name));
            }
            prev = Some(name);
        }
        g
    }

    pub fn add_curve(&mut self, name: impl Into<String>, weight: i64, boundary: bool) -> Result<()> {
        let name = name.into();
        if self.vertices.contains_key(&name) {
            return Err(Error::DuplicateCurve(name));
        }
        self.vertices.insert(name, Curve { weight, boundary });
        Ok(())
    }

    pub fn add_edge(&mut self, a: &str, b: &str) -> Result<()> {
        if a == b {
            return Err(Error::InvalidEdge(a.into(), b.into(), "loops are not allowed"));
        }
        for n in [a, b] {
            if !self.vertices.contains_key(n) {
                return Err(Error::UnknownCurve(n.into()));
            }
        }
        if !self.edges.insert(edge_key(a, b)) {
            return Err(Error::InvalidEdge(a.into(), b.into(), "multiple edges are not allowed"));
        }
        Ok(())
    }

    pub fn remove_edge(&mut self, a: &str, b: &str) -> bool {
        self.edges.remove(&edge_key(a, b))
    }

    /// Removes a curve together with its edges.
    pub fn remove_curve(&mut self, name: &str) -> Option<Curve> {
        let c = self.vertices.remove(name)?;
        self.edges.retain(|(a, b)| a != name && b != name);
        Some(c)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.vertices.contains_key(name)
    }

    pub fn curve(&self, name: &str) -> Result<Curve> {
        self.vertices
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownCurve(name.into()))
    }

    pub fn weight(&self, name: &str) -> Result<i64> {
        self.curve(name).map(|c| c.weight)
    }

    pub fn set_weight(&mut self, name: &str, weight: i64) -> Result<()> {
        let c = self
            .vertices
            .get_mut(name)
            .ok_or_else(|| Error::UnknownCurve(name.into()))?;
        c.weight = weight;
        Ok(())
    }

    pub fn set_boundary(&mut self, name: &str, boundary: bool) -> Result<()> {
        let c = self
            .vertices
            .get_mut(name)
            .ok_or_else(|| Error::UnknownCurve(name.into()))?;
        c.boundary = boundary;
        Ok(())
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        self.edges.contains(&edge_key(a, b))
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Curve names in sorted order.
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.vertices.keys().map(String::as_str)
    }

    pub fn curves(&self) -> impl Iterator<Item = (&str, Curve)> {
        self.vertices.iter().map(|(n, c)| (n.as_str(), *c))
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> {
        self.edges.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, name: &str) -> Vec<&str> {
        self.edges
            .iter()
            .filter_map(|(a, b)| {
                if a == name {
                    Some(b.as_str())
                } else if b == name {
                    Some(a.as_str())
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degree(&self, name: &str) -> usize {
        self.neighbors(name).len()
    }

    /// Curves marked as part of the boundary divisor.
    pub fn boundary_names(&self) -> Vec<&str> {
        self.curves()
            .filter(|(_, c)| c.boundary)
            .map(|(n, _)| n)
            .collect()
    }

    /// Induced subgraph on `names`; unknown names are ignored.
    pub fn induced(&self, names: &BTreeSet<String>) -> DualGraph {
        DualGraph {
            vertices: self
                .vertices
                .iter()
                .filter(|(n, _)| names.contains(*n))
                .map(|(n, c)| (n.clone(), *c))
                .collect(),
            edges: self
                .edges
                .iter()
                .filter(|(a, b)| names.contains(a) && names.contains(b))
                .cloned()
                .collect(),
        }
    }

    /// Connected components, each as a sorted set of names.
    pub fn components(&self) -> Vec<BTreeSet<String>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.vertices.keys() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start.clone()]);
            seen.insert(start.clone());
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(&v) {
                    if seen.insert(w.to_owned()) {
                        queue.push_back(w.to_owned());
                    }
                }
                comp.insert(v);
            }
            out.push(comp);
        }
        out
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Intersection matrix in sorted name order.
    pub fn intersection_matrix(&self) -> RatMatrix {
        let names: Vec<&str> = self.names().collect();
        self.intersection_matrix_for(&names)
    }

    pub fn intersection_matrix_for(&self, names: &[&str]) -> RatMatrix {
        let rows = names
            .iter()
            .map(|&a| {
                names
                    .iter()
                    .map(|&b| Rational::from_integer(self.pair(a, b).into()))
                    .collect()
            })
            .collect();
        RatMatrix::from_rows(rows)
    }

    /// `C . C'` for two curves of the graph (0 for unknown names).
    pub fn pair(&self, a: &str, b: &str) -> i64 {
        if a == b {
            self.vertices.get(a).map_or(0, |c| c.weight)
        } else if self.has_edge(a, b) {
            1
        } else {
            0
        }
    }

    /// Adds `prefix` in front of every curve name.
    pub fn prefixed(&self, prefix: &str) -> DualGraph {
        self.renamed(|n| format!("{prefix}{n}"))
    }

    pub fn renamed(&self, f: impl Fn(&str) -> String) -> DualGraph {
        DualGraph {
            vertices: self.vertices.iter().map(|(n, c)| (f(n), *c)).collect(),
            edges: self.edges.iter().map(|(a, b)| edge_key(&f(a), &f(b))).collect(),
        }
    }

    /// Disjoint union; fails on a name clash.
    pub fn union(&self, other: &DualGraph) -> Result<DualGraph> {
        let mut g = self.clone();
        for (n, c) in &other.vertices {
            g.add_curve(n.clone(), c.weight, c.boundary)?;
        }
        g.edges.extend(other.edges.iter().cloned());
        Ok(g)
    }
}

/// Bilinear pairing of two divisors supported on `g`.
pub fn intersection_number(g: &DualGraph, d1: &Divisor, d2: &Divisor) -> Result<Rational> {
    for name in d1.support().chain(d2.support()) {
        if !g.contains(name) {
            return Err(Error::UnknownCurve(name.into()));
        }
    }
    let mut total = Rational::from_integer(0.into());
    for (a, ca) in d1.iter() {
        for (b, cb) in d2.iter() {
            let p = g.pair(a, b);
            if p != 0 {
                total += ca * cb * Rational::from_integer(p.into());
            }
        }
    }
    Ok(total)
}

/// Exact test via the leading principal minors of the negated intersection
/// matrix. The empty graph is negative definite.
pub fn is_negative_definite(g: &DualGraph) -> bool {
    g.intersection_matrix().negated().is_positive_definite()
}
