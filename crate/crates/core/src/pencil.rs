//! Resolution of the pencil spanned by `C ~ a S1 + l` and `a S1 + l0` on a
//! Hirzebruch surface `F_n`, and the contraction of the resolved surface back
//! onto `F_n` with `l0` as a fiber and the last exceptional curve `F` as a
//! section.

use std::fmt::Write as _;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::dualgraph::io::dot_id;
use crate::dualgraph::{blow_down, blow_up, pullback, BlowupStep, Divisor, DualGraph};
use crate::error::{Error, Result};
use crate::exactmath::{multiplicity_sequence, MultiplicitySequence};
use crate::Rational;

/// A class `s0 * S0 + ell * l` in the Picard lattice of `F_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HirzebruchClass {
    pub s0: i64,
    pub ell: i64,
}

/// `F_n` with minimal section `S0` (weight `-n`), section `S1 = S0 + n l`
/// (weight `n`) and fiber class `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HirzebruchModel {
    pub n: u64,
}

impl HirzebruchModel {
    pub fn new(n: u64) -> Self {
        HirzebruchModel { n }
    }

    pub fn s0(&self) -> HirzebruchClass {
        HirzebruchClass { s0: 1, ell: 0 }
    }

    pub fn s1(&self) -> HirzebruchClass {
        HirzebruchClass { s0: 1, ell: self.n as i64 }
    }

    pub fn ell(&self) -> HirzebruchClass {
        HirzebruchClass { s0: 0, ell: 1 }
    }

    pub fn canonical(&self) -> HirzebruchClass {
        HirzebruchClass { s0: -2, ell: -(self.n as i64) - 2 }
    }

    pub fn pair(&self, x: HirzebruchClass, y: HirzebruchClass) -> i64 {
        -(self.n as i64) * x.s0 * y.s0 + x.s0 * y.ell + x.ell * y.s0
    }

    pub fn arithmetic_genus(&self, c: HirzebruchClass) -> i64 {
        1 + (self.pair(c, c) + self.pair(self.canonical(), c)) / 2
    }

    /// The graph `S0 - l0 - S1` with weights `-n, 0, n`.
    pub fn graph(&self) -> DualGraph {
        let n = self.n as i64;
        let mut g = DualGraph::new();
        g.add_curve("S0", -n, false).expect("fresh");
        g.add_curve("S1", n, false).expect("fresh");
        g.add_curve("l0", 0, false).expect("fresh");
        g.add_edge("S0", "l0").expect("fresh");
        g.add_edge("l0", "S1").expect("fresh");
        g
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberClass {
    pub self_intersection: i64,
    pub dot_s0: i64,
    pub dot_s1: i64,
    pub arithmetic_genus: i64,
}

fn check_params(n: u64, a: u64) -> Result<()> {
    if n == 0 || a == 0 || n.checked_mul(a).and_then(|x| x.checked_mul(a)).is_none_or(|x| x > i64::MAX as u64 / 4) {
        return Err(Error::InvalidPencil { n, a });
    }
    Ok(())
}

/// Numerical data of `C ~ a S1 + l` on `F_n`.
pub fn pencil_member_class(n: u64, a: u64) -> Result<MemberClass> {
    check_params(n, a)?;
    let m = HirzebruchModel::new(n);
    let a = a as i64;
    let c = HirzebruchClass { s0: a, ell: a * n as i64 + 1 };
    Ok(MemberClass {
        self_intersection: m.pair(c, c),
        dot_s0: m.pair(c, m.s0()),
        dot_s1: m.pair(c, m.s1()),
        arithmetic_genus: m.arithmetic_genus(c),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilStep {
    pub step: BlowupStep,
    /// Multiplicity of the center on the moving member `C`.
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilResolution {
    pub n: u64,
    pub a: u64,
    pub graph: DualGraph,
    /// Proper transform of the special member `a S1 + l0`.
    pub special_member: Divisor,
    /// The last exceptional curve, a section of the resolved pencil.
    pub section: String,
    pub steps: Vec<PencilStep>,
    /// Special member after each step.
    pub members: Vec<Divisor>,
    /// Self-intersection of the moving member after each step.
    pub member_squares: Vec<i64>,
}

impl PencilResolution {
    pub fn e_names(&self) -> Vec<String> {
        (1..=self.n).map(|k| format!("E{k}")).collect()
    }

    pub fn a_names(&self) -> Vec<String> {
        (1..=self.a).map(|j| format!("A{j}")).collect()
    }

    pub fn b_names(&self) -> Vec<String> {
        (1..self.a).map(|j| format!("B{j}")).collect()
    }

    /// Special member after the first `n` steps.
    pub fn member_after_cusp(&self) -> &Divisor {
        &self.members[self.n as usize - 1]
    }

    /// The member written out from its closed form:
    /// `a(S1 + A1 + ... + Aa) + (En + ... + E1 + l0) + sum_j (a - j) Bj`.
    pub fn expected_member(&self) -> Divisor {
        let a = self.a as i64;
        let mut items: Vec<(String, i64)> = vec![("S1".into(), a), ("l0".into(), 1)];
        items.extend(self.a_names().into_iter().map(|x| (x, a)));
        items.extend(self.e_names().into_iter().map(|x| (x, 1)));
        items.extend((1..self.a).map(|j| (format!("B{j}"), a - j as i64)));
        Divisor::from_integers(items)
    }

    /// DOT layout: the main chain in one row, `S0` and the `B` chain below.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "graph {} {{", dot_id(&format!("pencil_{}_{}", self.n, self.a))).unwrap();
        writeln!(out, "  node [shape=circle];").unwrap();
        for (name, c) in self.graph.curves() {
            writeln!(out, "  {} [label={}];", dot_id(name), dot_id(&format!("{name} ({})", c.weight))).unwrap();
        }
        let mut row = vec!["l0".to_string()];
        row.extend(self.e_names());
        row.extend(self.a_names().into_iter().rev());
        row.push("S1".into());
        let ids: Vec<String> = row.iter().map(|s| dot_id(s)).collect();
        writeln!(out, "  {{ rank=same; {}; }}", ids.join("; ")).unwrap();
        for (x, y) in self.graph.edges() {
            writeln!(out, "  {} -- {};", dot_id(x), dot_id(y)).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Resolves the base points of the pencil: `n` blow-ups of multiplicity `a`
/// at `S1 ∩ C` and infinitely near points, `a` blow-ups separating `C` from
/// `En` (the first at `S1 ∩ En`), then `a` blow-ups along `C` starting on `Aa`.
pub fn resolve_pencil(n: u64, a: u64) -> Result<PencilResolution> {
    check_params(n, a)?;
    let mut g = HirzebruchModel::new(n).graph();
    let mut member = Divisor::from_integers([("S1", a as i64), ("l0", 1)]);
    let mut square = pencil_member_class(n, a)?.self_intersection;
    let mut steps = Vec::new();
    let mut members = Vec::new();
    let mut member_squares = Vec::new();

    let mut plan: Vec<(BlowupStep, u64)> = Vec::new();
    for k in 1..=n {
        let prev = if k == 1 { "l0".to_string() } else { format!("E{}", k - 1) };
        plan.push((BlowupStep::on_edge(prev, "S1", format!("E{k}"), false), a));
    }
    let en = format!("E{n}");
    for j in 1..=a {
        let prev = if j == 1 { "S1".to_string() } else { format!("A{}", j - 1) };
        plan.push((BlowupStep::on_edge(en.clone(), prev, format!("A{j}"), false), 1));
    }
    for j in 1..=a {
        let on = if j == 1 { format!("A{a}") } else { format!("B{}", j - 1) };
        let name = if j == a { "F".to_string() } else { format!("B{j}") };
        plan.push((BlowupStep::on_curve(on, name, false), 1));
    }

    for (step, m) in plan {
        let mut next = pullback(&g, &step, &member)?;
        next.add_to(step.new_name.clone(), &-Rational::from_integer(m.into()));
        member = next;
        g = blow_up(&g, &step)?;
        square -= (m * m) as i64;
        members.push(member.clone());
        member_squares.push(square);
        steps.push(PencilStep { step, multiplicity: m });
    }
    Ok(PencilResolution {
        n,
        a,
        graph: g,
        special_member: member,
        section: "F".into(),
        steps,
        members,
        member_squares,
    })
}

/// Local data of the special member at `S1 ∩ l0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspData {
    /// `(a n + 1, a)`, or `(1, 1)` when `a = 1` and the point is smooth.
    pub cusp_type: (u64, u64),
    pub smooth: bool,
    pub i_s1: u64,
    pub i_ell0: u64,
    pub i_s0: u64,
    pub mult_seq: MultiplicitySequence,
}

impl CuspData {
    pub fn delta(&self) -> u64 {
        self.mult_seq.delta()
    }
}

pub fn cusp_data(n: u64, a: u64) -> Result<CuspData> {
    check_params(n, a)?;
    let p = a * n + 1;
    let smooth = a == 1;
    Ok(CuspData {
        cusp_type: if smooth { (1, 1) } else { (p, a) },
        smooth,
        i_s1: p,
        i_ell0: a,
        i_s0: 1,
        mult_seq: multiplicity_sequence(p, a)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HirzebruchContraction {
    pub schedule: Vec<String>,
    pub final_model: HirzebruchModel,
    pub final_graph: DualGraph,
    /// Image of `l0`, a fiber.
    pub fiber_image: String,
    /// Image of `F`, a section disjoint from the minimal one.
    pub section_image: String,
}

/// Contracts `S1, A1..Aa, B1..B(a-1), En..E1` in that order, checking each
/// target is a contractible (-1)-curve on the current graph.
pub fn contract_to_hirzebruch(pr: &PencilResolution) -> Result<HirzebruchContraction> {
    let mut schedule = vec!["S1".to_string()];
    schedule.extend(pr.a_names());
    schedule.extend(pr.b_names());
    schedule.extend(pr.e_names().into_iter().rev());
    let mut g = pr.graph.clone();
    for (index, name) in schedule.iter().enumerate() {
        g = blow_down(&g, name).map_err(|e| Error::ContractionFailed {
            index,
            name: name.clone(),
            reason: e.to_string(),
        })?;
    }
    let n = pr.n as i64;
    let fail = |reason: String| Error::ContractionFailed {
        index: schedule.len(),
        name: "final".into(),
        reason,
    };
    if g.len() != 3 || g.weight("S0")? != -n || g.weight("l0")? != 0 || g.weight("F")? != n {
        return Err(fail(format!("final graph is not F_{n}: {:?}", g.curves().collect::<Vec<_>>())));
    }
    if g.has_edge("S0", "F") || !g.has_edge("S0", "l0") || !g.has_edge("l0", "F") {
        return Err(fail("sections and fiber are not in F_n position".into()));
    }
    Ok(HirzebruchContraction {
        schedule,
        final_model: HirzebruchModel::new(pr.n),
        final_graph: g,
        fiber_image: "l0".into(),
        section_image: "F".into(),
    })
}

/// Sum of `m(m-1)/2` over the centers of the resolution.
pub fn genus_drop(pr: &PencilResolution) -> u64 {
    pr.steps.iter().map(|s| s.multiplicity * (s.multiplicity.saturating_sub(1)) / 2).sum()
}

/// Integer coefficient of a curve in the special member.
pub fn member_coefficient(pr: &PencilResolution, name: &str) -> i64 {
    let c = pr.special_member.coeff(name);
    if c.is_zero() {
        0
    } else {
        c.to_integer().to_i64().unwrap_or(i64::MAX)
    }
}
