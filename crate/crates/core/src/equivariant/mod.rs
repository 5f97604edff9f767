//! Polynomial endomorphisms of the plane commuting with a diagonal cyclic
//! action `(x, y) -> (z x, z^d y)`, and the even-order automorphism
//! certificate for Keller maps.

mod poly;
mod resultant;

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use poly::{parse_poly, SparsePoly};
pub use resultant::{origin_fiber_report, OriginFiberReport};

use crate::error::{Error, Result};
use crate::exactmath::matrix::RatMatrix;
use crate::Rational;

/// `(x, y) -> (f(x, y), g(x, y))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyEndomorphism {
    pub f: SparsePoly,
    pub g: SparsePoly,
}

impl PolyEndomorphism {
    pub fn new(f: SparsePoly, g: SparsePoly) -> Self {
        PolyEndomorphism { f, g }
    }

    pub fn identity() -> Self {
        Self::new(SparsePoly::x(), SparsePoly::y())
    }

    pub fn parse(f: &str, g: &str) -> Result<Self> {
        Ok(Self::new(parse_poly(f)?, parse_poly(g)?))
    }

    pub fn fixes_origin(&self) -> bool {
        self.f.constant_term().is_zero() && self.g.constant_term().is_zero()
    }

    pub fn degree(&self) -> u32 {
        self.f.total_degree().unwrap_or(0).max(self.g.total_degree().unwrap_or(0))
    }
}

impl fmt::Display for PolyEndomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f, self.g)
    }
}

/// `self ∘ inner`.
pub fn compose(outer: &PolyEndomorphism, inner: &PolyEndomorphism) -> PolyEndomorphism {
    PolyEndomorphism::new(
        outer.f.substitute(&inner.f, &inner.g),
        outer.g.substitute(&inner.f, &inner.g),
    )
}

/// The action of `Z/n` by `(x, y) -> (z x, z^d y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupAction {
    n: u64,
    d: u64,
}

impl GroupAction {
    pub fn new(n: u64, d: u64) -> Result<Self> {
        if n < 2 || d == 0 || d >= n || n.gcd(&d) != 1 {
            return Err(Error::InvalidAction { n, d });
        }
        Ok(GroupAction { n, d })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// Weight of `x^i y^j` modulo `n`.
    pub fn weight(&self, i: u32, j: u32) -> u64 {
        ((i as u128 + self.d as u128 * j as u128) % self.n as u128) as u64
    }
}

/// `f_x g_y - f_y g_x`.
pub fn jacobian(e: &PolyEndomorphism) -> SparsePoly {
    &(&e.f.partial_x() * &e.g.partial_y()) - &(&e.f.partial_y() * &e.g.partial_x())
}

pub fn is_keller(e: &PolyEndomorphism) -> bool {
    let j = jacobian(e);
    j.is_constant() && !j.is_zero()
}

/// Every monomial `x^i y^j` of `p` has `i + d j ≡ w (mod n)`.
pub fn weight_compatible(p: &SparsePoly, act: GroupAction, w: i64) -> bool {
    let target = w.rem_euclid(act.n as i64) as u64;
    p.terms().all(|(&(i, j), _)| act.weight(i, j) == target)
}

/// `f` has weight 1 and `g` has weight `d`.
pub fn is_equivariant(e: &PolyEndomorphism, act: GroupAction) -> bool {
    weight_compatible(&e.f, act, 1) && weight_compatible(&e.g, act, act.d as i64)
}

/// Map `t -> (c + d t) / (a + b t)` on the exceptional line, from the linear
/// part `f = a x + b y + ...`, `g = c x + d y + ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusMap {
    pub matrix: [[Rational; 2]; 2],
    pub det: Rational,
}

impl MobiusMap {
    /// Image of `t`, `None` for the point at infinity.
    pub fn apply(&self, t: &Rational) -> Option<Rational> {
        let [[a, b], [c, d]] = &self.matrix;
        let den = a + b * t;
        (!den.is_zero()).then(|| (c + d * t) / den)
    }

    pub fn is_identity(&self) -> bool {
        let [[a, b], [c, d]] = &self.matrix;
        b.is_zero() && c.is_zero() && a == d
    }
}

impl fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.matrix;
        let t = |p: SparsePoly| p.to_string().replace('x', "t");
        let num = t(SparsePoly::from_terms([((0, 0), c.clone()), ((1, 0), d.clone())]));
        let den = t(SparsePoly::from_terms([((0, 0), a.clone()), ((1, 0), b.clone())]));
        write!(f, "t -> ({num})/({den})")
    }
}

pub fn induced_boundary_map(e: &PolyEndomorphism) -> Result<MobiusMap> {
    let (a, b) = (e.f.coeff(1, 0), e.f.coeff(0, 1));
    let (c, d) = (e.g.coeff(1, 0), e.g.coeff(0, 1));
    let det = &a * &d - &b * &c;
    if det.is_zero() {
        return Err(Error::DegenerateLinearPart);
    }
    Ok(MobiusMap {
        matrix: [[a, b], [c, d]],
        det,
    })
}

/// Whether `f = g = 0` only at the origin; see [`origin_fiber_report`].
pub fn origin_fiber_is_origin(e: &PolyEndomorphism) -> Result<bool> {
    origin_fiber_report(&e.f, &e.g).map(|r| r.is_origin)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailedCheck {
    Keller,
    Equivariance,
    OriginFiber,
    OddOrder,
}

impl fmt::Display for FailedCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailedCheck::Keller => "keller",
            FailedCheck::Equivariance => "equivariance",
            FailedCheck::OriginFiber => "origin_fiber",
            FailedCheck::OddOrder => "odd_order",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "snake_case")]
pub enum Verdict {
    AutomorphismByTheorem,
    NotApplicable(FailedCheck),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::AutomorphismByTheorem => f.write_str("automorphism_by_theorem"),
            Verdict::NotApplicable(c) => write!(f, "not_applicable({c})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub jacobian: String,
    /// Checks in the order they were run, with outcomes.
    pub checks: Vec<(FailedCheck, bool)>,
    pub origin_fiber: Option<OriginFiberReport>,
}

/// Applies the even-order theorem: a Keller map commuting with a diagonal
/// action of even order whose fiber over the origin is the origin is an
/// automorphism. Checks run in a fixed order and stop at the first failure.
/// An odd order is never certified.
pub fn certify(e: &PolyEndomorphism, act: GroupAction) -> Certificate {
    let jac = jacobian(e);
    let mut checks = Vec::new();
    let cert = |verdict, checks, origin_fiber| Certificate {
        verdict,
        jacobian: jac.to_string(),
        checks,
        origin_fiber,
    };
    let keller = is_keller(e);
    checks.push((FailedCheck::Keller, keller));
    if !keller {
        return cert(Verdict::NotApplicable(FailedCheck::Keller), checks, None);
    }
    let eq = is_equivariant(e, act);
    checks.push((FailedCheck::Equivariance, eq));
    if !eq {
        return cert(Verdict::NotApplicable(FailedCheck::Equivariance), checks, None);
    }
    // a Keller map has no zero component, so the report always exists
    let report = origin_fiber_report(&e.f, &e.g).ok();
    let origin = report.as_ref().is_some_and(|r| r.is_origin);
    checks.push((FailedCheck::OriginFiber, origin));
    if !origin {
        return cert(Verdict::NotApplicable(FailedCheck::OriginFiber), checks, report);
    }
    let even = act.n.is_multiple_of(2);
    checks.push((FailedCheck::OddOrder, even));
    if !even {
        return cert(Verdict::NotApplicable(FailedCheck::OddOrder), checks, report);
    }
    cert(Verdict::AutomorphismByTheorem, checks, report)
}

fn monomials_up_to(deg: u32) -> Vec<(u32, u32)> {
    (0..=deg).flat_map(|t| (0..=t).map(move |i| (i, t - i))).collect()
}

/// Solves `p(f, g) = target` for `p` of total degree at most `deg`.
fn solve_composition(
    powers: &BTreeMap<(u32, u32), SparsePoly>,
    unknowns: &[(u32, u32)],
    target: &SparsePoly,
) -> Option<SparsePoly> {
    let mut rows: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for k in unknowns {
        for (m, _) in powers[k].terms() {
            let next = rows.len();
            rows.entry(*m).or_insert(next);
        }
    }
    for (m, _) in target.terms() {
        let next = rows.len();
        rows.entry(*m).or_insert(next);
    }
    let mut a = RatMatrix::zeros(rows.len(), unknowns.len());
    for (col, k) in unknowns.iter().enumerate() {
        for (m, c) in powers[k].terms() {
            a.set(rows[m], col, c.clone());
        }
    }
    let mut b = vec![Rational::zero(); rows.len()];
    for (m, c) in target.terms() {
        b[rows[m]] = c.clone();
    }
    let sol = a.solve(&b)?;
    Some(SparsePoly::from_terms(unknowns.iter().copied().zip(sol)))
}

/// Searches for a polynomial inverse of total degree at most
/// `deg(f) * deg(g)` by solving the linear conditions `p(f, g) = x`,
/// `q(f, g) = y`, then checks both compositions.
pub fn find_inverse(e: &PolyEndomorphism) -> Option<PolyEndomorphism> {
    let df = e.f.total_degree()?;
    let dg = e.g.total_degree()?;
    let bound = (df * dg).max(1);
    let unknowns = monomials_up_to(bound);
    let mut fp = vec![SparsePoly::int(1)];
    let mut gp = vec![SparsePoly::int(1)];
    for _ in 0..bound {
        fp.push(fp.last().unwrap() * &e.f);
        gp.push(gp.last().unwrap() * &e.g);
    }
    let powers: BTreeMap<(u32, u32), SparsePoly> = unknowns
        .iter()
        .map(|&(i, j)| ((i, j), &fp[i as usize] * &gp[j as usize]))
        .collect();
    let p = solve_composition(&powers, &unknowns, &SparsePoly::x())?;
    let q = solve_composition(&powers, &unknowns, &SparsePoly::y())?;
    let inv = PolyEndomorphism::new(p, q);
    let id = PolyEndomorphism::identity();
    (compose(&inv, e) == id && compose(e, &inv) == id).then_some(inv)
}

/// Linear map `(x, y) -> (a x + b y, c x + d y)`.
pub fn linear(a: Rational, b: Rational, c: Rational, d: Rational) -> PolyEndomorphism {
    PolyEndomorphism::new(
        SparsePoly::from_terms([((1, 0), a), ((0, 1), b)]),
        SparsePoly::from_terms([((1, 0), c), ((0, 1), d)]),
    )
}

impl std::ops::Mul for PolyEndomorphism {
    type Output = PolyEndomorphism;

    /// `self ∘ rhs`.
    fn mul(self, rhs: PolyEndomorphism) -> PolyEndomorphism {
        compose(&self, &rhs)
    }
}
