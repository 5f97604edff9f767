//! Integer and continued-fraction arithmetic.
//!
//! Hirzebruch-Jung expansions `n/d = a1 - 1/(a2 - 1/(... - 1/ar))`, their
//! continuants, modular inverses and Euclidean multiplicity sequences of
//! one-branch plane cusps.

pub mod matrix;

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A reduced fraction `n/d` with `0 < d < n`, or the degenerate `1/1`
/// standing for an absent chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fraction {
    n: u64,
    d: u64,
}

impl Fraction {
    pub fn new(n: u64, d: u64) -> Result<Self> {
        if d == 0 || d >= n || n.gcd(&d) != 1 {
            return Err(Error::InvalidFraction { n, d });
        }
        Ok(Fraction { n, d })
    }

    /// The `1/1` encoding of the empty chain.
    pub const fn degenerate() -> Self {
        Fraction { n: 1, d: 1 }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_degenerate(&self) -> bool {
        self.n == 1 && self.d == 1
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.n, self.d)
    }
}

/// Entries `a1, ..., ar` of a Hirzebruch-Jung continued fraction, all `>= 2`.
///
/// The chain of curves it describes carries self-intersections `-a1, ..., -ar`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct HJChain(Vec<u64>);

impl HJChain {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = entries.iter().find(|&&a| a < 2) {
            return Err(Error::InvalidChainEntry(bad));
        }
        Ok(HJChain(entries))
    }

    pub fn empty() -> Self {
        HJChain(Vec::new())
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Self {
        HJChain(self.0.iter().rev().copied().collect())
    }

    /// Self-intersections of the curves in the chain.
    pub fn weights(&self) -> Vec<i64> {
        self.0.iter().map(|&a| -(a as i64)).collect()
    }
}

impl TryFrom<Vec<u64>> for HJChain {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        HJChain::new(v)
    }
}

impl From<HJChain> for Vec<u64> {
    fn from(c: HJChain) -> Self {
        c.0
    }
}

impl fmt::Display for HJChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Multiplicities of the successive infinitely near points of a one-branch
/// singularity, non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiplicitySequence(Vec<u64>);

impl MultiplicitySequence {
    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    /// `sum m (m - 1) / 2`, the delta invariant carried by the sequence.
    pub fn delta(&self) -> u64 {
        self.0.iter().map(|&m| m * (m - 1) / 2).sum()
    }

    pub fn count(&self, m: u64) -> usize {
        self.0.iter().filter(|&&x| x == m).count()
    }
}

pub fn hj_expand(f: Fraction) -> Result<HJChain> {
    if f.is_degenerate() {
        return Err(Error::InvalidFraction { n: f.n, d: f.d });
    }
    let (mut n, mut d) = (f.n, f.d);
    let mut out = Vec::new();
    while d != 0 {
        let a = n.div_ceil(d);
        out.push(a);
        (n, d) = (d, a * d - n);
    }
    Ok(HJChain(out))
}

/// Inverse of [`hj_expand`]. The empty chain evaluates to the degenerate `1/1`.
pub fn hj_evaluate(c: &HJChain) -> Result<Fraction> {
    let Some((&last, rest)) = c.0.split_last() else {
        return Ok(Fraction::degenerate());
    };
    // value = num/den, folded from the tail
    let (mut num, mut den) = (last, 1u64);
    for &a in rest.iter().rev() {
        let next = a
            .checked_mul(num)
            .and_then(|v| v.checked_sub(den))
            .ok_or(Error::Overflow("continued fraction"))?;
        (num, den) = (next, num);
    }
    Ok(Fraction { n: num, d: den })
}

/// Determinant of the negated intersection matrix of the chain, i.e. the
/// continuant numerator. The empty chain has determinant 1.
pub fn chain_determinant(c: &HJChain) -> BigUint {
    // K(a1..ak) = a_k K(a1..a_{k-1}) - K(a1..a_{k-2})
    let (mut prev, mut cur) = (BigUint::one(), BigUint::one());
    for (i, &a) in c.0.iter().enumerate() {
        let next = if i == 0 {
            BigUint::from(a)
        } else {
            BigUint::from(a) * &cur - &prev
        };
        prev = cur;
        cur = next;
    }
    cur
}

pub fn mod_inverse(a: i64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::NotInvertible { a, n });
    }
    let m = n as i128;
    let r = (a as i128).rem_euclid(m);
    let eg = r.extended_gcd(&m);
    if eg.gcd != 1 {
        return Err(Error::NotInvertible { a, n });
    }
    Ok(eg.x.rem_euclid(m) as u64)
}

/// Euclidean multiplicity sequence of the cusp with characteristic pair
/// `(p, q)`: each divisor of the Euclidean algorithm repeated as often as its
/// quotient.
pub fn multiplicity_sequence(p: u64, q: u64) -> Result<MultiplicitySequence> {
    if q == 0 || p <= q || p.gcd(&q) != 1 {
        return Err(Error::InvalidCuspPair { p, q });
    }
    let (mut a, mut b) = (p, q);
    let mut out = Vec::new();
    while b != 0 {
        let (quot, rem) = a.div_rem(&b);
        out.extend(std::iter::repeat_n(b, quot as usize));
        (a, b) = (b, rem);
    }
    Ok(MultiplicitySequence(out))
}

pub fn delta_invariant(p: u64, q: u64) -> u64 {
    p.saturating_sub(1) * q.saturating_sub(1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(n: u64, d: u64) -> Fraction {
        Fraction::new(n, d).unwrap()
    }

    fn chain(v: &[u64]) -> HJChain {
        HJChain::new(v.to_vec()).unwrap()
    }

    #[test]
    fn expand_examples() {
        assert_eq!(hj_expand(frac(6, 5)).unwrap(), chain(&[2, 2, 2, 2, 2]));
        assert_eq!(hj_expand(frac(7, 3)).unwrap(), chain(&[3, 2, 2]));
        for n in 2..30 {
            assert_eq!(hj_expand(frac(n, 1)).unwrap(), chain(&[n]));
        }
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(hj_evaluate(&chain(&[2, 2, 2, 2, 2])).unwrap(), frac(6, 5));
        assert_eq!(hj_evaluate(&chain(&[3, 2])).unwrap(), frac(5, 2));
        assert_eq!(hj_evaluate(&chain(&[9])).unwrap(), frac(9, 1));
        assert_eq!(hj_evaluate(&HJChain::empty()).unwrap(), Fraction::degenerate());
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(chain_determinant(&chain(&[2, 2])), BigUint::from(3u32));
        assert_eq!(chain_determinant(&chain(&[2])), BigUint::from(2u32));
        assert_eq!(chain_determinant(&chain(&[3, 2, 2])), BigUint::from(7u32));
        assert_eq!(chain_determinant(&HJChain::empty()), BigUint::one());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Fraction::new(6, 4).is_err());
        assert!(Fraction::new(5, 5).is_err());
        assert!(Fraction::new(5, 0).is_err());
        assert!(hj_expand(Fraction::degenerate()).is_err());
        assert!(HJChain::new(vec![2, 1]).is_err());
        assert!(mod_inverse(4, 6).is_err());
        assert!(multiplicity_sequence(6, 4).is_err());
        assert!(multiplicity_sequence(3, 5).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(5, 6).unwrap(), 5);
        assert_eq!(mod_inverse(3, 7).unwrap(), 5);
        assert_eq!(mod_inverse(1, 11).unwrap(), 1);
        assert_eq!(mod_inverse(-1, 7).unwrap(), 6);
    }

    #[test]
    fn cusp_sequences() {
        let s = multiplicity_sequence(7, 3).unwrap();
        assert_eq!(s.entries(), &[3, 3, 1, 1, 1]);
        assert_eq!(s.delta(), 6);
        assert_eq!(multiplicity_sequence(5, 1).unwrap().entries(), &[1; 5]);
        assert_eq!(delta_invariant(7, 3), 6);
        assert_eq!(delta_invariant(7, 2), 3);
        assert_eq!(delta_invariant(9, 1), 0);
    }
}
