use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::fiber::{complete_fiber, ChainEnd};
use super::{arm_for, infinity_data, validate_fork, CyclicQuotientType, ForkSpec};
use crate::dualgraph::io::{GraphJson, VertexJson};
use crate::dualgraph::{blow_down, fiber_contraction, intersection_number, Divisor, DualGraph};
use crate::error::{Error, Result};
use crate::exactmath::{hj_expand, Fraction, HJChain};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupModel {
    Cyclic { n: u64, d: u64 },
    NonCyclic { fork: ForkSpec },
}

impl GroupModel {
    pub fn cyclic(t: CyclicQuotientType) -> Self {
        GroupModel::Cyclic { n: t.n(), d: t.d() }
    }

    pub fn non_cyclic(fork: ForkSpec) -> Self {
        GroupModel::NonCyclic { fork }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CompletionKind {
    /// Cyclic with `d = 1`: the Hirzebruch surface `F_n`.
    Hirzebruch { n: u64 },
    Cyclic { n: u64, d: u64 },
    NonCyclic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberData {
    pub label: String,
    /// The (-1)-curve, or the 0-curve of a smooth fiber.
    pub f: String,
    /// `T` from the section `S0` outward, then `F`, then `R` from `F` outward.
    pub components: Vec<String>,
    pub multiplicity: u64,
    pub divisor: Divisor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardCompletion {
    pub kind: CompletionKind,
    pub graph: DualGraph,
    pub fibers: Vec<FiberData>,
}

pub const S0: &str = "S0";
pub const S1: &str = "S1";

impl StandardCompletion {
    pub fn sections(&self) -> [&'static str; 2] {
        [S0, S1]
    }

    pub fn is_section(name: &str) -> bool {
        name == S0 || name == S1
    }

    pub fn fiber_multiplicities(&self) -> BTreeMap<String, u64> {
        let mut out = BTreeMap::new();
        for f in &self.fibers {
            for (n, c) in f.divisor.iter() {
                out.insert(n.to_owned(), c.to_integer().to_u64().expect("positive multiplicity"));
            }
        }
        out
    }

    pub fn fiber_list(&self) -> Vec<String> {
        self.fibers.iter().map(|f| f.label.clone()).collect()
    }

    /// Intersection of a curve with a general fiber.
    pub fn ell_dot(&self, name: &str) -> i64 {
        i64::from(Self::is_section(name))
    }

    /// Checks the structural invariants: fibers verify, each section meets
    /// each fiber once with coefficient 1, and the boundary has the two
    /// components `D0 = S0 + T` and `Dinf = S1 + R`.
    pub fn check(&self) -> Result<()> {
        let g = &self.graph;
        for f in &self.fibers {
            if !crate::dualgraph::verify_fiber(g, &f.divisor) {
                return Err(Error::FiberCompletion(format!("fiber {} does not verify", f.label)));
            }
            for s in [S0, S1] {
                let meet = intersection_number(g, &f.divisor, &Divisor::curve(s))?;
                let touching = g.neighbors(s).into_iter().filter(|n| !f.divisor.coeff(n).is_zero()).count();
                if !meet.is_one() || touching != 1 {
                    return Err(Error::FiberCompletion(format!(
                        "{s} is not a section of fiber {}",
                        f.label
                    )));
                }
            }
        }
        let boundary: BTreeSet<String> = g.boundary_names().into_iter().map(str::to_owned).collect();
        let comps = g.induced(&boundary).components();
        let split = comps.len() == 2
            && comps.iter().any(|c| c.contains(S0) && !c.contains(S1))
            && comps.iter().any(|c| c.contains(S1));
        if !split {
            return Err(Error::FiberCompletion("boundary is not D0 + Dinf".into()));
        }
        Ok(())
    }

    pub fn to_json_value(&self) -> CompletionJson {
        let base = GraphJson::from(&self.graph);
        CompletionJson {
            edges: base.edges,
            fibers: self.fibers.iter().map(|f| f.components.clone()).collect(),
            multiplicities: self.fiber_multiplicities(),
            sections: vec![S0.into(), S1.into()],
            vertices: base.vertices,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("completion serializes")
    }
}

/// Dual graph JSON extended with fiber data; keys serialize in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionJson {
    pub edges: Vec<[String; 2]>,
    pub fibers: Vec<Vec<String>>,
    pub multiplicities: BTreeMap<String, u64>,
    pub sections: Vec<String>,
    pub vertices: Vec<VertexJson>,
}

/// Outcome of the subdivisional refinement search for `S0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionSearch {
    pub weight: i64,
    /// Which end of the arm at `Q0` meets `S0`.
    pub zero_end: ChainEnd,
    /// Which end of the arm at `Qinf` meets `S0`.
    pub infinity_end: ChainEnd,
    pub zero_arm: HJChain,
    pub infinity_arm: HJChain,
    /// Every `(weight, zero_end, infinity_end)` that succeeded.
    pub solutions: Vec<(i64, ChainEnd, ChainEnd)>,
}

/// Whether `target` (or its reverse) is reached from `chain` by contracting
/// interior (-1)-entries, at most `budget` times. Entries are `-weight`.
fn contracts_to(chain: &[i64], target: &[i64], budget: usize) -> bool {
    let rev: Vec<i64> = target.iter().rev().copied().collect();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut stack = vec![chain.to_vec()];
    while let Some(c) = stack.pop() {
        if c == target || c == rev {
            return true;
        }
        if c.len() <= target.len() || c.len() - target.len() > budget || !seen.insert(c.clone()) {
            continue;
        }
        // weights only rise under blow-downs: entries below 2 must be
        // contracted, and only interior 1s can be
        let tip_stuck = c[0] < 2 || c[c.len() - 1] < 2;
        if tip_stuck || c.iter().any(|&a| a < 1) {
            continue;
        }
        for i in 1..c.len() - 1 {
            if c[i] == 1 {
                let mut next = c.clone();
                next[i - 1] -= 1;
                next[i + 1] -= 1;
                next.remove(i);
                stack.push(next);
            }
        }
    }
    false
}

fn oriented(arm: &HJChain, s0_end: ChainEnd, toward_s0: bool) -> Vec<i64> {
    // entries listed so that the end meeting S0 comes last (toward_s0) or first
    let mut v: Vec<i64> = arm.entries().iter().map(|&a| a as i64).collect();
    let s0_last = s0_end == ChainEnd::Last;
    if s0_last != toward_s0 {
        v.reverse();
    }
    v
}

/// Runs the bounded search for the self-intersection of `S0`.
///
/// The boundary chain `T0 + S0 + Tinf` must refine the resolution chain by
/// subdivisional blow-ups only, with at most `n` of them; weights from `-1`
/// down to `-(n + 1)` and all arm orientations are tried. When several
/// orientations succeed with the same weight the one with both arms meeting
/// `S0` at their last entry is preferred.
pub fn section_search(t: CyclicQuotientType) -> Result<SectionSearch> {
    let (n, d) = (t.n(), t.d());
    let target: Vec<i64> = hj_expand(Fraction::new(n, d)?)?
        .entries()
        .iter()
        .map(|&a| a as i64)
        .collect();
    let (zero_arm, infinity_arm) = if d == 1 {
        (HJChain::empty(), HJChain::empty())
    } else {
        let i = infinity_data(t)?;
        (arm_for(i.zero), arm_for(i.infinity))
    };
    let ends = [ChainEnd::Last, ChainEnd::First];
    let mut solutions = Vec::new();
    for a in 1..=(n as i64 + 1) {
        for &e0 in &ends {
            for &e1 in &ends {
                // orientation is irrelevant for an arm of length <= 1
                if zero_arm.len() <= 1 && e0 == ChainEnd::First {
                    continue;
                }
                if infinity_arm.len() <= 1 && e1 == ChainEnd::First {
                    continue;
                }
                let mut chain = oriented(&zero_arm, e0, true);
                chain.push(a);
                chain.extend(oriented(&infinity_arm, e1, false));
                if contracts_to(&chain, &target, n as usize) {
                    solutions.push((-a, e0, e1));
                }
            }
        }
    }
    let weights: BTreeSet<i64> = solutions.iter().map(|s| s.0).collect();
    match weights.len() {
        0 => Err(Error::SearchExhausted { n, d, bound: n }),
        1 => {
            let (weight, zero_end, infinity_end) = solutions
                .iter()
                .copied()
                .find(|s| s.1 == ChainEnd::Last && s.2 == ChainEnd::Last)
                .unwrap_or(solutions[0]);
            Ok(SectionSearch {
                weight,
                zero_end,
                infinity_end,
                zero_arm,
                infinity_arm,
                solutions,
            })
        }
        _ => Err(Error::AmbiguousSectionWeight {
            n,
            d,
            candidates: weights.into_iter().collect(),
        }),
    }
}

/// Self-intersection of `S0` in the standard completion.
pub fn section_weight(t: CyclicQuotientType) -> Result<i64> {
    section_search(t).map(|s| s.weight)
}

fn fiber_names(label: &str, local: &str) -> String {
    match local {
        "F" => format!("F{label}"),
        _ => {
            let (head, idx) = local.split_at(1);
            format!("{head}{label}_{idx}")
        }
    }
}

/// Attaches the fiber completing `arm` (listed from `S0` outward) to the graph.
fn attach_fiber(g: &mut DualGraph, label: &str, arm: &HJChain) -> Result<FiberData> {
    let fc = complete_fiber(arm, ChainEnd::Last)?;
    let local = fc.fiber_graph.renamed(|n| fiber_names(label, n));
    *g = g.union(&local)?;
    let f = format!("F{label}");
    let t: Vec<String> = (1..=arm.len()).map(|i| format!("T{label}_{i}")).collect();
    let r: Vec<String> = (1..=fc.r.len()).map(|i| format!("R{label}_{i}")).collect();
    let divisor = Divisor::from_rationals(
        fc.multiplicities
            .iter()
            .map(|(n, c)| (fiber_names(label, n), c.clone())),
    );
    let s0_tip = t.first().unwrap_or(&f).clone();
    let s1_tip = r.last().unwrap_or(&f).clone();
    for tip in [&s0_tip, &s1_tip] {
        if !divisor.coeff(tip).is_one() {
            return Err(Error::FiberCompletion(format!("section tip {tip} has multiplicity != 1")));
        }
    }
    g.add_edge(S0, &s0_tip)?;
    g.add_edge(S1, &s1_tip)?;
    let mut components = t;
    components.push(f.clone());
    components.extend(r);
    Ok(FiberData {
        label: label.to_owned(),
        f,
        components,
        multiplicity: fc.m_f,
        divisor,
    })
}

/// Fixes the weight of `S1` so that contracting every degenerate fiber to a
/// 0-curve lands on a Hirzebruch surface, where the two disjoint sections
/// have opposite self-intersections.
fn settle_s1(g: &mut DualGraph, fibers: &[FiberData]) -> Result<()> {
    g.set_weight(S1, 0)?;
    let mut h = g.clone();
    for (index, f) in fibers.iter().enumerate() {
        let schedule = fiber_contraction(&h, &f.divisor)
            .ok_or_else(|| Error::FiberCompletion(format!("fiber {} does not contract", f.label)))?;
        for name in schedule {
            h = blow_down(&h, &name).map_err(|e| Error::ContractionFailed {
                index,
                name: name.clone(),
                reason: e.to_string(),
            })?;
        }
    }
    let s1 = -h.weight(S0)? - h.weight(S1)?;
    g.set_weight(S1, s1)
}

pub fn build_standard_completion(model: &GroupModel) -> Result<StandardCompletion> {
    let mut g = DualGraph::new();
    match model {
        GroupModel::Cyclic { n, d } => {
            let t = CyclicQuotientType::new(*n, *d)?;
            if t.d() == 1 {
                let w = t.n() as i64;
                g.add_curve(S0, -w, true)?;
                g.add_curve(S1, w, true)?;
                return Ok(StandardCompletion {
                    kind: CompletionKind::Hirzebruch { n: t.n() },
                    graph: g,
                    fibers: Vec::new(),
                });
            }
            let search = section_search(t)?;
            g.add_curve(S0, search.weight, true)?;
            g.add_curve(S1, 0, true)?;
            let zero = match search.zero_end {
                ChainEnd::First => search.zero_arm.clone(),
                ChainEnd::Last => search.zero_arm.reversed(),
            };
            let inf = match search.infinity_end {
                ChainEnd::First => search.infinity_arm.clone(),
                ChainEnd::Last => search.infinity_arm.reversed(),
            };
            let fibers = vec![attach_fiber(&mut g, "0", &zero)?, attach_fiber(&mut g, "inf", &inf)?];
            settle_s1(&mut g, &fibers)?;
            let sc = StandardCompletion {
                kind: CompletionKind::Cyclic { n: t.n(), d: t.d() },
                graph: g,
                fibers,
            };
            sc.check()?;
            Ok(sc)
        }
        GroupModel::NonCyclic { fork } => {
            let report = validate_fork(fork);
            if !report.is_valid() {
                return Err(Error::InadmissibleFork(format!("{report:?}")));
            }
            g.add_curve(S0, fork.central_weight, true)?;
            g.add_curve(S1, 0, true)?;
            let mut fibers = Vec::new();
            for (i, arm) in fork.arms.iter().enumerate() {
                fibers.push(attach_fiber(&mut g, &(i + 1).to_string(), arm)?);
            }
            settle_s1(&mut g, &fibers)?;
            let sc = StandardCompletion {
                kind: CompletionKind::NonCyclic,
                graph: g,
                fibers,
            };
            sc.check()?;
            Ok(sc)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn cq(n: u64, d: u64) -> CyclicQuotientType {
        CyclicQuotientType::new(n, d).unwrap()
    }

    #[test]
    fn section_weight_anchors() {
        assert_eq!(section_weight(cq(6, 5)).unwrap(), -2);
        for n in 2..=60 {
            assert_eq!(section_weight(cq(n, 1)).unwrap(), -(n as i64));
        }
        assert_eq!(section_weight(cq(5, 2)).unwrap(), -1);
        assert_eq!(section_weight(cq(7, 3)).unwrap(), -1);
        assert_eq!(section_weight(cq(4, 3)).unwrap(), -2);
        assert_eq!(section_weight(cq(8, 5)).unwrap(), -3);
        assert_eq!(section_weight(cq(8, 7)).unwrap(), -2);
    }

    #[test]
    fn contraction_search() {
        assert!(!contracts_to(&[3, 1, 2], &[2, 2], 1));
        // a (-1) tip can never be contracted subdivisionally
        assert!(!contracts_to(&[1, 3, 2], &[2, 2], 1));
        assert!(contracts_to(&[3, 1, 3], &[2, 2], 1));
        assert!(contracts_to(&[2, 2], &[2, 2], 0));
        assert!(!contracts_to(&[3, 1, 3], &[2, 2], 0));
    }

    #[test]
    fn hirzebruch_model() {
        let sc = build_standard_completion(&GroupModel::cyclic(cq(5, 1))).unwrap();
        assert_eq!(sc.graph.weight(S0).unwrap(), -5);
        assert_eq!(sc.graph.weight(S1).unwrap(), 5);
        assert!(sc.fibers.is_empty());
        sc.check().unwrap();
    }

    #[test]
    fn six_five() {
        let sc = build_standard_completion(&GroupModel::cyclic(cq(6, 5))).unwrap();
        assert_eq!(sc.graph.weight(S0).unwrap(), -2);
        assert_eq!(sc.fibers.len(), 2);
        for f in &sc.fibers {
            assert_eq!(f.multiplicity, 3);
            let w: Vec<i64> = f.components.iter().map(|c| sc.graph.weight(c).unwrap()).collect();
            assert_eq!(w, vec![-2, -2, -1, -3]);
        }
        assert_eq!(sc.graph.weight(S1).unwrap(), 0);
    }

    #[test]
    fn multiplicities_match_gcds() {
        for n in 3..=30u64 {
            for t in CyclicQuotientType::all_of_order(n).filter(|t| t.d() > 1) {
                let sc = build_standard_completion(&GroupModel::cyclic(t)).unwrap();
                let d1 = n.gcd(&(t.d() - 1));
                let i = infinity_data(t).unwrap();
                assert_eq!(sc.fibers[0].multiplicity, n / d1, "{t:?}");
                assert_eq!(sc.fibers[1].multiplicity, n / i.delta2, "{t:?}");
            }
        }
    }

    #[test]
    fn fork_models() {
        let sc = build_standard_completion(&GroupModel::non_cyclic(ForkSpec::icosahedral())).unwrap();
        let m: Vec<u64> = sc.fibers.iter().map(|f| f.multiplicity).collect();
        assert_eq!(m, vec![2, 3, 5]);
        let bad = ForkSpec::new(-2, [vec![2], vec![2, 2], vec![2, 2, 2, 2, 2]]).unwrap();
        assert!(matches!(
            build_standard_completion(&GroupModel::non_cyclic(bad)),
            Err(Error::InadmissibleFork(_))
        ));
    }

    #[test]
    fn completion_json_keys() {
        let sc = build_standard_completion(&GroupModel::cyclic(cq(6, 5))).unwrap();
        let v: serde_json::Value = serde_json::from_str(&sc.to_json()).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["edges", "fibers", "multiplicities", "sections", "vertices"]);
        assert_eq!(v["multiplicities"]["F0"], 3);
    }
}
