//! Point blow-ups and contractions of (-1)-curves on dual graphs, with the
//! bookkeeping of the log canonical divisor `D + K` under each step.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Divisor, DualGraph};
use crate::error::{Error, Result};
use crate::Rational;

/// Where a blow-up is centered relative to the curves of the graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Center {
    /// A point on no curve of the graph.
    Interior,
    /// A general point of one curve.
    OnCurve(String),
    /// The intersection point of two curves joined by an edge.
    OnEdge(String, String),
}

impl Center {
    /// Curves passing through the center.
    pub fn curves(&self) -> Vec<&str> {
        match self {
            Center::Interior => vec![],
            Center::OnCurve(c) => vec![c.as_str()],
            Center::OnEdge(a, b) => vec![a.as_str(), b.as_str()],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlowupStep {
    pub center: Center,
    pub new_name: String,
    pub into_boundary: bool,
}

impl BlowupStep {
    pub fn interior(new_name: impl Into<String>, into_boundary: bool) -> Self {
        BlowupStep {
            center: Center::Interior,
            new_name: new_name.into(),
            into_boundary,
        }
    }

    pub fn on_curve(curve: impl Into<String>, new_name: impl Into<String>, into_boundary: bool) -> Self {
        BlowupStep {
            center: Center::OnCurve(curve.into()),
            new_name: new_name.into(),
            into_boundary,
        }
    }

    pub fn on_edge(
        a: impl Into<String>,
        b: impl Into<String>,
        new_name: impl Into<String>,
        into_boundary: bool,
    ) -> Self {
        BlowupStep {
            center: Center::OnEdge(a.into(), b.into()),
            new_name: new_name.into(),
            into_boundary,
        }
    }

    fn validate(&self, g: &DualGraph) -> Result<()> {
        if g.contains(&self.new_name) {
            return Err(Error::InvalidCenter(format!(
                "new curve name `{}` already in use",
                self.new_name
            )));
        }
        match &self.center {
            Center::Interior => Ok(()),
            Center::OnCurve(c) => g.curve(c).map(|_| ()),
            Center::OnEdge(a, b) => {
                g.curve(a)?;
                g.curve(b)?;
                if g.has_edge(a, b) {
                    Ok(())
                } else {
                    Err(Error::InvalidCenter(format!("`{a}` and `{b}` do not meet")))
                }
            }
        }
    }
}

pub fn blow_up(g: &DualGraph, s: &BlowupStep) -> Result<DualGraph> {
    s.validate(g)?;
    let mut out = g.clone();
    out.add_curve(s.new_name.clone(), -1, s.into_boundary)?;
    if let Center::OnEdge(a, b) = &s.center {
        out.remove_edge(a, b);
    }
    for c in s.center.curves() {
        out.set_weight(c, g.weight(c)? - 1)?;
        out.add_edge(c, &s.new_name)?;
    }
    Ok(out)
}

/// Contracts a (-1)-curve meeting at most two others.
pub fn blow_down(g: &DualGraph, name: &str) -> Result<DualGraph> {
    let c = g.curve(name)?;
    let fail = |reason: String| Error::NotContractible {
        name: name.into(),
        reason,
    };
    if c.weight != -1 {
        return Err(fail(format!("self-intersection is {}, not -1", c.weight)));
    }
    let nbrs: Vec<String> = g.neighbors(name).into_iter().map(str::to_owned).collect();
    if nbrs.len() > 2 {
        return Err(fail(format!("meets {} other curves", nbrs.len())));
    }
    if nbrs.len() == 2 && g.has_edge(&nbrs[0], &nbrs[1]) {
        return Err(fail("neighbors already meet; the image would not be simple normal crossing".into()));
    }
    let mut out = g.clone();
    out.remove_curve(name);
    for n in &nbrs {
        out.set_weight(n, g.weight(n)? + 1)?;
    }
    if let [a, b] = nbrs.as_slice() {
        out.add_edge(a, b)?;
    }
    Ok(out)
}

/// Pullback of `d` through the blow-up `s`, the new curve receiving
/// `mult_at_center`. The caller supplies the multiplicity because the graph
/// cannot see tangencies of curves outside it.
pub fn total_transform(
    g_before: &DualGraph,
    s: &BlowupStep,
    d: &Divisor,
    mult_at_center: &Rational,
) -> Result<Divisor> {
    s.validate(g_before)?;
    if let Some(bad) = d.support().find(|n| !g_before.contains(n)) {
        return Err(Error::UnknownCurve(bad.into()));
    }
    let mut out = d.clone();
    out.set(s.new_name.clone(), mult_at_center.clone());
    Ok(out)
}

/// Pullback of a divisor supported on graph curves: the new curve gets the
/// sum of the coefficients of the curves through the center.
pub fn pullback(g_before: &DualGraph, s: &BlowupStep, d: &Divisor) -> Result<Divisor> {
    let mult = s
        .center
        .curves()
        .iter()
        .fold(Rational::zero(), |acc, c| acc + d.coeff(c));
    total_transform(g_before, s, d, &mult)
}

/// Number of boundary curves through the center of `s`.
pub fn boundary_multiplicity(g: &DualGraph, s: &BlowupStep) -> Result<u32> {
    s.validate(g)?;
    let mut m = 0;
    for c in s.center.curves() {
        if g.curve(c)?.boundary {
            m += 1;
        }
    }
    Ok(m)
}

/// Coefficient of the new curve `E` in `(D'' + K'') - pullback(D' + K')`.
///
/// `K` gains `E` from every point blow-up; the pulled-back boundary
/// overcounts `E` once per boundary curve through the center; `E` enters `D''`
/// when it is put in the boundary.
pub fn log_canonical_coefficient(boundary_multiplicity: u32, into_boundary: bool) -> i64 {
    1 - i64::from(boundary_multiplicity) + i64::from(into_boundary)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterContext {
    pub center_on_boundary: bool,
}

/// The log canonical correction of a single step, read from its shape:
/// an edge center on the boundary is a subdivisional blow-up, a curve center
/// on the boundary is a sprouting one, anything off the boundary is interior.
pub fn lc_correction(s: &BlowupStep, ctx: CenterContext) -> Result<i64> {
    let mult = match (&s.center, ctx.center_on_boundary) {
        (Center::Interior, true) => {
            return Err(Error::InconsistentContext(
                "an interior center lies on no boundary curve",
            ))
        }
        (_, false) => 0,
        (Center::OnCurve(_), true) => 1,
        (Center::OnEdge(..), true) => 2,
    };
    Ok(log_canonical_coefficient(mult, s.into_boundary))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogCanonicalTrack {
    pub graph: DualGraph,
    /// `(Delta + K) - rho^*(D + K)` on the final graph.
    pub correction: Divisor,
    /// Total transforms of the exceptional curves with positive coefficient.
    pub gamma: Divisor,
    /// Total transforms of the exceptional curves with negative coefficient.
    pub removed: Divisor,
    /// Per-step coefficient of the new curve.
    pub coefficients: Vec<i64>,
}

/// Replays `steps` on `g` and accumulates the correction divisor, pulling
/// earlier corrections back through later blow-ups.
pub fn track_log_canonical(g: &DualGraph, steps: &[BlowupStep]) -> Result<LogCanonicalTrack> {
    let mut graph = g.clone();
    let mut gamma = Divisor::zero();
    let mut removed = Divisor::zero();
    let mut coefficients = Vec::with_capacity(steps.len());
    for s in steps {
        let c = log_canonical_coefficient(boundary_multiplicity(&graph, s)?, s.into_boundary);
        gamma = pullback(&graph, s, &gamma)?;
        removed = pullback(&graph, s, &removed)?;
        let e = Rational::from_integer(c.abs().into());
        if c > 0 {
            gamma.add_to(s.new_name.clone(), &e);
        } else if c < 0 {
            removed.add_to(s.new_name.clone(), &e);
        }
        graph = blow_up(&graph, s)?;
        coefficients.push(c);
    }
    Ok(LogCanonicalTrack {
        graph,
        correction: gamma.clone() - removed.clone(),
        gamma,
        removed,
        coefficients,
    })
}
