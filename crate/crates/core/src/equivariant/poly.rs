use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Polynomial in `x, y` with exact rational coefficients, keyed by `(i, j)`
/// for `x^i y^j`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SparsePoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        SparsePoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut p = SparsePoly::zero();
        p.add_term(i, j, &c);
        p
    }

    pub fn from_terms(items: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        let mut p = SparsePoly::zero();
        for ((i, j), c) in items {
            p.add_term(i, j, &c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: &Rational) {
        let e = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0, 0)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn scaled(&self, k: &Rational) -> SparsePoly {
        if k.is_zero() {
            return SparsePoly::zero();
        }
        SparsePoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> SparsePoly {
        let mut base = self.clone();
        let mut acc = SparsePoly::int(1);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_x(&self) -> SparsePoly {
        SparsePoly::from_terms(
            self.terms
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|(&(i, j), c)| ((i - 1, j), c * Rational::from_integer(i.into()))),
        )
    }

    pub fn partial_y(&self) -> SparsePoly {
        SparsePoly::from_terms(
            self.terms
                .iter()
                .filter(|((_, j), _)| *j > 0)
                .map(|(&(i, j), c)| ((i, j - 1), c * Rational::from_integer(j.into()))),
        )
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (&(i, j), c)| {
            acc + c * num_traits::pow(x.clone(), i as usize) * num_traits::pow(y.clone(), j as usize)
        })
    }

    /// `p(f, g)`.
    pub fn substitute(&self, f: &SparsePoly, g: &SparsePoly) -> SparsePoly {
        let mut fp: Vec<SparsePoly> = vec![SparsePoly::int(1)];
        let mut gp: Vec<SparsePoly> = vec![SparsePoly::int(1)];
        let mut out = SparsePoly::zero();
        for (&(i, j), c) in &self.terms {
            while fp.len() <= i as usize {
                let next = fp.last().unwrap() * f;
                fp.push(next);
            }
            while gp.len() <= j as usize {
                let next = gp.last().unwrap() * g;
                gp.push(next);
            }
            out = &out + &(&fp[i as usize] * &gp[j as usize]).scaled(c);
        }
        out
    }

    /// Coefficients of `y^0, y^1, ...` as polynomials in `x` (dense, ascending).
    pub(crate) fn coeffs_in_y(&self) -> Vec<SparsePoly> {
        let dy = self.degree_y().unwrap_or(0) as usize;
        let mut out = vec![SparsePoly::zero(); dy + 1];
        for (&(i, j), c) in &self.terms {
            out[j as usize].add_term(i, 0, c);
        }
        out
    }

    /// Exchanges `x` and `y`.
    pub fn swapped(&self) -> SparsePoly {
        SparsePoly::from_terms(self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())))
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;

    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c);
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;

    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self + &(-rhs)
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;

    fn neg(self) -> SparsePoly {
        SparsePoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;

    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, &(c1 * c2));
            }
        }
        out
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, i: u32, j: u32) -> fmt::Result {
    let mut parts = Vec::new();
    for (v, e) in [("x", i), ("y", j)] {
        match e {
            0 => {}
            1 => parts.push(v.to_string()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    f.write_str(&parts.join("*"))
}

/// Terms by descending total degree, then descending power of `x`; the
/// output parses back to the same polynomial.
impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 + k.1, k.0)));
        for (k, &&(i, j)) in keys.iter().enumerate() {
            let c = &self.terms[&(i, j)];
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if i == 0 && j == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, i, j)?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

const MAX_EXPONENT: u32 = 10_000;

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn expr(&mut self) -> Result<SparsePoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SparsePoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        self.pos = at;
                        return self.err("can only divide by a nonzero constant");
                    }
                    acc = acc.scaled(&d.constant_term().recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<SparsePoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<SparsePoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let e = self.integer()?;
            let e: u32 = match u32::try_from(e) {
                Ok(e) if e <= MAX_EXPONENT => e,
                _ => {
                    self.pos = at;
                    return self.err(format!("exponent above {MAX_EXPONENT}"));
                }
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<SparsePoly> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(SparsePoly::x())
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(SparsePoly::y())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(SparsePoly::constant(Rational::from_integer(self.integer()?))),
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `x + 3*y^3 - 1/2*x*y^2` style input. Errors carry a byte offset.
pub fn parse_poly(s: &str) -> Result<SparsePoly> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

impl FromStr for SparsePoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn parse_and_print() {
        let p = parse_poly("x + 3*y^3 - 1/2*x*y^2").unwrap();
        assert_eq!(p.coeff(1, 0), r(1, 1));
        assert_eq!(p.coeff(0, 3), r(3, 1));
        assert_eq!(p.coeff(1, 2), r(-1, 2));
        assert_eq!(p.to_string(), "-1/2*x*y^2 + 3*y^3 + x");
        assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
        assert_eq!(parse_poly("(x+y)^2 - x^2 - y^2").unwrap(), parse_poly("2*x*y").unwrap());
        assert_eq!(parse_poly("-x").unwrap().to_string(), "-x");
        assert_eq!(parse_poly("x - x").unwrap().to_string(), "0");
    }

    #[test]
    fn parse_errors_have_positions() {
        assert_eq!(
            parse_poly("x + * y"),
            Err(Error::Parse { pos: 4, msg: "unexpected `*`".into() })
        );
        assert!(matches!(parse_poly("x / y"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_poly("(x"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly("x z"), Err(Error::Parse { pos: 2, .. })));
        assert!(parse_poly("x^99999999999").is_err());
    }

    #[test]
    fn calculus() {
        let p = parse_poly("x^2*y + 3*y^3").unwrap();
        assert_eq!(p.partial_x(), parse_poly("2*x*y").unwrap());
        assert_eq!(p.partial_y(), parse_poly("x^2 + 9*y^2").unwrap());
        let q = p.substitute(&parse_poly("x+y").unwrap(), &SparsePoly::y());
        assert_eq!(q, parse_poly("(x+y)^2*y + 3*y^3").unwrap());
        assert_eq!(p.eval(&r(1, 2), &r(2, 1)), r(1, 2) + r(24, 1));
        assert_eq!(p.total_degree(), Some(3));
        assert_eq!(SparsePoly::zero().total_degree(), None);
    }
}
