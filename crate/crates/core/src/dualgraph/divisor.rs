use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::Rational;

/// A formal rational combination of named curves. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct Divisor {
    coeffs: BTreeMap<String, Rational>,
}

impl Divisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn curve(name: impl Into<String>) -> Self {
        let mut d = Self::zero();
        d.set(name, Rational::from_integer(1.into()));
        d
    }

    pub fn from_integers<S: Into<String>>(items: impl IntoIterator<Item = (S, i64)>) -> Self {
        let mut d = Self::zero();
        for (n, c) in items {
            d.add_to(n, &Rational::from_integer(c.into()));
        }
        d
    }

    pub fn from_rationals<S: Into<String>>(items: impl IntoIterator<Item = (S, Rational)>) -> Self {
        let mut d = Self::zero();
        for (n, c) in items {
            d.add_to(n, &c);
        }
        d
    }

    pub fn coeff(&self, name: &str) -> Rational {
        self.coeffs.get(name).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, name: impl Into<String>, c: Rational) {
        let name = name.into();
        if c.is_zero() {
            self.coeffs.remove(&name);
        } else {
            self.coeffs.insert(name, c);
        }
    }

    pub fn add_to(&mut self, name: impl Into<String>, c: &Rational) {
        let name = name.into();
        let v = self.coeff(&name) + c;
        self.set(name, v);
    }

    pub fn remove(&mut self, name: &str) -> Rational {
        self.coeffs.remove(name).unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &str> {
        self.coeffs.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Rational)> {
        self.coeffs.iter().map(|(n, c)| (n.as_str(), c))
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// Integer coefficients, if every coefficient is integral and fits.
    pub fn integer_coeffs(&self) -> Option<BTreeMap<String, i64>> {
        self.coeffs
            .iter()
            .map(|(n, c)| {
                if !c.is_integer() {
                    return None;
                }
                i64::try_from(c.to_integer()).ok().map(|v| (n.clone(), v))
            })
            .collect()
    }

    /// gcd of the numerators; only meaningful for integral divisors.
    pub fn content(&self) -> num_bigint::BigInt {
        self.coeffs
            .values()
            .fold(num_bigint::BigInt::zero(), |g, c| g.gcd(c.numer()))
    }

    pub fn scaled(&self, k: &Rational) -> Divisor {
        let mut d = Divisor::zero();
        for (n, c) in &self.coeffs {
            d.set(n.clone(), c * k);
        }
        d
    }

    /// Coefficientwise `self >= other`.
    pub fn dominates(&self, other: &Divisor) -> bool {
        (self.clone() - other.clone()).is_effective()
    }
}

impl Add for Divisor {
    type Output = Divisor;

    fn add(mut self, rhs: Divisor) -> Divisor {
        for (n, c) in rhs.coeffs {
            self.add_to(n, &c);
        }
        self
    }
}

impl Add<&Divisor> for &Divisor {
    type Output = Divisor;

    fn add(self, rhs: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (n, c) in &rhs.coeffs {
            out.add_to(n.clone(), c);
        }
        out
    }
}

impl Sub for Divisor {
    type Output = Divisor;

    fn sub(self, rhs: Divisor) -> Divisor {
        self + (-rhs)
    }
}

impl Neg for Divisor {
    type Output = Divisor;

    fn neg(self) -> Divisor {
        Divisor {
            coeffs: self.coeffs.into_iter().map(|(n, c)| (n, -c)).collect(),
        }
    }
}

impl Mul<&Rational> for &Divisor {
    type Output = Divisor;

    fn mul(self, k: &Rational) -> Divisor {
        self.scaled(k)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (n, c) in &self.coeffs {
            let (sign, abs) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if abs == Rational::from_integer(1.into()) {
                write!(f, "{n}")?;
            } else {
                write!(f, "{abs}*{n}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_drops_zeros() {
        let a = Divisor::from_integers([("A", 2), ("B", 1)]);
        let b = Divisor::from_integers([("A", 2)]);
        let d = a - b;
        assert_eq!(d, Divisor::curve("B"));
        assert_eq!(d.support().collect::<Vec<_>>(), vec!["B"]);
    }

    #[test]
    fn display() {
        let d = Divisor::from_integers([("A", 2), ("B", -1), ("C", 1)]);
        assert_eq!(d.to_string(), "2*A - B + C");
        assert_eq!(Divisor::zero().to_string(), "0");
    }
}
