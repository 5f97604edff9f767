//! Resultants of bivariate polynomials by evaluation and interpolation, and
//! the decision of whether a map's fiber over the origin is the origin alone.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::poly::SparsePoly;
use crate::error::{Error, Result};
use crate::exactmath::matrix::RatMatrix;
use crate::Rational;

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct UniPoly(pub Vec<Rational>);

impl UniPoly {
    pub fn new(mut v: Vec<Rational>) -> Self {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        UniPoly(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.0[dd].clone();
        let mut rem = self.0.clone();
        let mut quo = vec![Rational::zero(); self.0.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = &rem[rem.len() - 1] / &lead;
            for (i, dc) in d.0.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quo[k] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (UniPoly::new(quo), UniPoly::new(rem))
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a
    }

    /// Multiplicity of `t = 0` as a root; the polynomial must be nonzero.
    pub fn zero_order(&self) -> usize {
        self.0.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn to_sparse_in_x(&self) -> SparsePoly {
        SparsePoly::from_terms(self.0.iter().enumerate().map(|(i, c)| ((i as u32, 0), c.clone())))
    }
}

/// Interpolates the values at `t = 0, 1, ..., k` by divided differences.
fn interpolate(values: &[Rational]) -> UniPoly {
    let n = values.len();
    let mut dd = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / Rational::from_integer(BigInt::from(level));
        }
    }
    // Newton form with nodes 0..n-1 expanded into monomials
    let mut out = vec![Rational::zero(); n];
    let mut basis = vec![Rational::one()];
    for (i, c) in dd.iter().enumerate() {
        for (k, b) in basis.iter().enumerate() {
            out[k] += c * b;
        }
        // basis *= (t - i)
        let mut next = vec![Rational::zero(); basis.len() + 1];
        let node = Rational::from_integer(BigInt::from(i));
        for (k, b) in basis.iter().enumerate() {
            next[k + 1] += b;
            next[k] -= &node * b;
        }
        basis = next;
    }
    UniPoly::new(out)
}

/// Sylvester determinant of two univariate polynomials taken with formal
/// degrees `p` and `q` (leading coefficients may vanish).
fn sylvester(f: &[Rational], p: usize, g: &[Rational], q: usize) -> Rational {
    let size = p + q;
    if size == 0 {
        return Rational::one();
    }
    let mut m = RatMatrix::zeros(size, size);
    let get = |v: &[Rational], k: usize| v.get(k).cloned().unwrap_or_else(Rational::zero);
    for r in 0..q {
        for k in 0..=p {
            m.set(r, r + k, get(f, p - k));
        }
    }
    for r in 0..p {
        for k in 0..=q {
            m.set(q + r, r + k, get(g, q - k));
        }
    }
    m.determinant()
}

/// `Res_y(f, g)` as a polynomial in `x`.
pub(crate) fn resultant_y(f: &SparsePoly, g: &SparsePoly) -> UniPoly {
    let (fc, gc) = (f.coeffs_in_y(), g.coeffs_in_y());
    let (p, q) = (fc.len() - 1, gc.len() - 1);
    // degree of the resultant in x is at most the Bezout bound
    let bound = f.total_degree().unwrap_or(0) as usize * g.total_degree().unwrap_or(0) as usize;
    let values: Vec<Rational> = (0..=bound)
        .map(|t| {
            let t = Rational::from_integer(BigInt::from(t));
            let fv: Vec<Rational> = fc.iter().map(|c| c.eval(&t, &Rational::zero())).collect();
            let gv: Vec<Rational> = gc.iter().map(|c| c.eval(&t, &Rational::zero())).collect();
            sylvester(&fv, p, &gv, q)
        })
        .collect();
    interpolate(&values)
}

pub(crate) fn resultant_x(f: &SparsePoly, g: &SparsePoly) -> UniPoly {
    resultant_y(&f.swapped(), &g.swapped())
}

/// `f(t, y)` as a univariate polynomial in `y`.
fn specialize_x(f: &SparsePoly, t: &Rational) -> UniPoly {
    UniPoly::new(f.coeffs_in_y().iter().map(|c| c.eval(t, &Rational::zero())).collect())
}

fn divisors(n: &BigInt, cap: u64) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > cap {
        return None;
    }
    let mut out = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            out.push(BigInt::from(k));
            if k * k != n {
                out.push(BigInt::from(n / k));
            }
        }
        k += 1;
    }
    Some(out)
}

const DIVISOR_CAP: u64 = 1 << 40;

/// Nonzero rational roots of `p` together with the degree left over once
/// those roots and `t = 0` are divided out; `None` if the coefficients are
/// too large to enumerate candidates.
fn rational_roots(p: &UniPoly) -> Option<(Vec<Rational>, usize)> {
    let z = p.zero_order();
    let mut rest = UniPoly::new(p.0[z..].to_vec());
    let lcm = rest.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = rest.0.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let (a0, an) = (ints.first()?, ints.last()?);
    let ps = divisors(a0, DIVISOR_CAP)?;
    let qs = divisors(an, DIVISOR_CAP)?;
    let mut roots = Vec::new();
    for pn in &ps {
        for qd in &qs {
            for sign in [1, -1] {
                let cand = Rational::new(pn * sign, qd.clone());
                if !roots.contains(&cand) && rest.eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    for r in &roots {
        let lin = UniPoly::new(vec![-r.clone(), Rational::one()]);
        loop {
            let (q, rem) = rest.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            rest = q;
        }
    }
    Some((roots, rest.degree().unwrap_or(0)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OriginFiberReport {
    pub is_origin: bool,
    /// `Res_y(f, g)` as a polynomial in `x`.
    pub res_y: String,
    /// `Res_x(f, g)` as a polynomial in `y`.
    pub res_x: String,
    pub diagnostic: String,
}

/// Common zeros of `f, g` on the line `x = t` for a rational `t`.
fn common_zero_on_vertical(f: &SparsePoly, g: &SparsePoly, t: &Rational) -> bool {
    let (a, b) = (specialize_x(f, t), specialize_x(g, t));
    match (a.is_zero(), b.is_zero()) {
        (true, true) => true,
        (true, false) => b.degree().unwrap_or(0) > 0,
        (false, true) => a.degree().unwrap_or(0) > 0,
        (false, false) => a.gcd(&b).degree().unwrap_or(0) > 0,
    }
}

/// Decides whether the common zero set of `f` and `g` over the complex
/// numbers is exactly the origin.
///
/// Every common zero `(x0, y0)` has `Res_y(x0) = 0` and `Res_x(y0) = 0`. If
/// both resultants are monomials of positive degree the zero set lies in
/// `{(0, 0)}`. Otherwise each nonzero rational root `x0` of `Res_y` is tested
/// by a gcd in `Q[y]`, and likewise for `Res_x`; a resultant with irrational
/// roots leaves the question open and the answer is a conservative `false`.
pub fn origin_fiber_report(f: &SparsePoly, g: &SparsePoly) -> Result<OriginFiberReport> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ry = resultant_y(f, g);
    let rx = resultant_x(f, g);
    let report = |is_origin: bool, diagnostic: &str| OriginFiberReport {
        is_origin,
        res_y: ry.to_sparse_in_x().to_string(),
        res_x: rx.to_sparse_in_x().swapped().to_string(),
        diagnostic: diagnostic.into(),
    };
    if !f.constant_term().is_zero() || !g.constant_term().is_zero() {
        return Ok(report(false, "the origin is not a common zero"));
    }
    if ry.is_zero() || rx.is_zero() {
        return Ok(report(false, "a resultant vanishes: f and g share a curve"));
    }
    for (res, (a, b), axis) in [(&ry, (f.clone(), g.clone()), "x"), (&rx, (f.swapped(), g.swapped()), "y")] {
        let deg = res.degree().unwrap_or(0);
        if res.zero_order() == deg {
            continue;
        }
        let Some((roots, left)) = rational_roots(res) else {
            return Ok(report(false, "undecided: resultant coefficients too large for root search"));
        };
        for r in &roots {
            if common_zero_on_vertical(&a, &b, r) {
                return Ok(report(false, &format!("common zero with {axis} = {r}")));
            }
        }
        if left > 0 {
            return Ok(report(false, &format!("undecided: resultant in {axis} has irrational roots")));
        }
    }
    Ok(report(true, "fiber over the origin is the origin"))
}
