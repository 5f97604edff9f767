use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::completion::{CompletionKind, StandardCompletion};
use crate::dualgraph::{intersection_number, Divisor};
use crate::error::Result;
use crate::Rational;

/// A numerical class `fiber * l + divisor`, where `l` is a general fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassExpr {
    pub fiber: Rational,
    pub divisor: Divisor,
}

impl ClassExpr {
    pub fn new(fiber: Rational, divisor: Divisor) -> Self {
        ClassExpr { fiber, divisor }
    }

    /// Replaces `l` by the given fiber divisor.
    pub fn expanded(&self, fiber_divisor: &Divisor) -> ClassExpr {
        ClassExpr {
            fiber: Rational::zero(),
            divisor: &self.divisor + &fiber_divisor.scaled(&self.fiber),
        }
    }
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = (!self.divisor.is_zero()).then(|| self.divisor.to_string());
        let l = if self.fiber.is_zero() {
            None
        } else if self.fiber.is_one() {
            Some("l".to_string())
        } else if self.fiber == -Rational::one() {
            Some("-l".to_string())
        } else {
            Some(format!("{}*l", self.fiber))
        };
        match (l, d) {
            (None, None) => write!(f, "0"),
            (Some(l), None) => write!(f, "{l}"),
            (None, Some(d)) => write!(f, "{d}"),
            (Some(l), Some(d)) if d.starts_with('-') => write!(f, "{l} - {}", &d[1..]),
            (Some(l), Some(d)) => write!(f, "{l} + {d}"),
        }
    }
}

/// `(D + K) . C` for a curve, by adjunction: `D.C - C^2 - 2`.
fn lhs_curve(sc: &StandardCompletion, c: &str) -> Result<Rational> {
    let g = &sc.graph;
    let d: Divisor = Divisor::from_integers(g.boundary_names().into_iter().map(|n| (n, 1)));
    let dc = intersection_number(g, &d, &Divisor::curve(c))?;
    let c2 = g.weight(c)?;
    Ok(dc - Rational::from_integer((c2 + 2).into()))
}

fn pair_curve(sc: &StandardCompletion, e: &ClassExpr, c: &str) -> Result<Rational> {
    let on_fiber = &e.fiber * Rational::from_integer(sc.ell_dot(c).into());
    Ok(on_fiber + intersection_number(&sc.graph, &e.divisor, &Divisor::curve(c))?)
}

fn pair_ell(e: &ClassExpr) -> Rational {
    e.divisor
        .iter()
        .filter(|(n, _)| StandardCompletion::is_section(n))
        .map(|(_, c)| c.clone())
        .sum()
}

/// Compares `D + K` with `rhs` on every curve and on `l`, collecting mismatches.
fn compare(sc: &StandardCompletion, rhs: &ClassExpr, tag: &str, failures: &mut Vec<String>) -> Result<()> {
    for c in sc.graph.names() {
        let (l, r) = (lhs_curve(sc, c)?, pair_curve(sc, rhs, c)?);
        if l != r {
            failures.push(format!("{tag}: (D+K).{c} = {l}, rhs gives {r}"));
        }
    }
    // D.l = 2 from the two sections and K.l = -2
    let r = pair_ell(rhs);
    if !r.is_zero() {
        failures.push(format!("{tag}: (D+K).l = 0, rhs gives {r}"));
    }
    Ok(())
}

/// `sum_i (l_i - F_i) - 2 l`, with each `l_i` the divisor of the i-th degenerate fiber.
pub fn general_formula(sc: &StandardCompletion) -> ClassExpr {
    let mut d = Divisor::zero();
    for f in &sc.fibers {
        d = &d + &f.divisor;
        d.add_to(f.f.clone(), &-Rational::one());
    }
    ClassExpr::new(Rational::from_integer((-2).into()), d)
}

/// The case form: `l - (F1 + F2 + F3)`, `-F0 - Finf`, or `-2 l`.
pub fn case_formula(sc: &StandardCompletion) -> ClassExpr {
    let fs = Divisor::from_integers(sc.fibers.iter().map(|f| (f.f.clone(), -1)));
    let fiber = match sc.kind {
        CompletionKind::Hirzebruch { .. } => -2,
        CompletionKind::Cyclic { .. } => 0,
        CompletionKind::NonCyclic => 1,
    };
    ClassExpr::new(Rational::from_integer(fiber.into()), fs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogCanonicalReport {
    pub formula: String,
    pub verified: bool,
    pub failures: Vec<String>,
}

/// Verifies `D + K` numerically against the general and the case formula,
/// with `l` kept symbolic and with `l` expanded through each degenerate fiber.
pub fn log_canonical_class(sc: &StandardCompletion) -> Result<LogCanonicalReport> {
    let case = case_formula(sc);
    let mut failures = Vec::new();
    compare(sc, &general_formula(sc), "general", &mut failures)?;
    compare(sc, &case, "case", &mut failures)?;
    for f in &sc.fibers {
        compare(sc, &case.expanded(&f.divisor), &format!("case, l = fiber {}", f.label), &mut failures)?;
    }
    Ok(LogCanonicalReport {
        formula: case.to_string(),
        verified: failures.is_empty(),
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessDefect {
    pub scalar: Rational,
    pub l: Divisor,
    pub effective: bool,
    /// Whether `D + K == scalar * l + L` held numerically.
    pub verified: bool,
    pub failures: Vec<String>,
}

/// Splits `D + K` as `scalar * l + L` with `L = sum_i (1/m_i)(l_i - m_i F_i)`.
pub fn freeness_defect(sc: &StandardCompletion) -> Result<FreenessDefect> {
    let mut l = Divisor::zero();
    let mut inv_sum = Rational::zero();
    for f in &sc.fibers {
        let inv = Rational::new(1.into(), f.multiplicity.into());
        let mut part = f.divisor.scaled(&inv);
        part.add_to(f.f.clone(), &-Rational::one());
        l = &l + &part;
        inv_sum += inv;
    }
    let scalar = match sc.kind {
        CompletionKind::Hirzebruch { .. } => Rational::from_integer((-2).into()),
        CompletionKind::Cyclic { .. } => -inv_sum,
        CompletionKind::NonCyclic => Rational::one() - inv_sum,
    };
    let mut failures = Vec::new();
    compare(sc, &ClassExpr::new(scalar.clone(), l.clone()), "defect", &mut failures)?;
    Ok(FreenessDefect {
        scalar,
        effective: l.is_effective(),
        l,
        verified: failures.is_empty(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::{build_standard_completion, CyclicQuotientType, ForkSpec, GroupModel};

    fn cyclic(n: u64, d: u64) -> StandardCompletion {
        build_standard_completion(&GroupModel::cyclic(CyclicQuotientType::new(n, d).unwrap())).unwrap()
    }

    fn fork(f: ForkSpec) -> StandardCompletion {
        build_standard_completion(&GroupModel::non_cyclic(f)).unwrap()
    }

    #[test]
    fn hirzebruch_case() {
        let sc = cyclic(7, 1);
        let r = log_canonical_class(&sc).unwrap();
        assert!(r.verified, "{:?}", r.failures);
        assert_eq!(r.formula, "-2*l");
        assert_eq!(lhs_curve(&sc, "S0").unwrap(), Rational::from_integer((-2).into()));
        let fd = freeness_defect(&sc).unwrap();
        assert_eq!(fd.scalar, Rational::from_integer((-2).into()));
        assert!(fd.l.is_zero() && fd.effective && fd.verified);
    }

    #[test]
    fn cyclic_and_fork_cases() {
        let r = log_canonical_class(&cyclic(6, 5)).unwrap();
        assert!(r.verified, "{:?}", r.failures);
        assert_eq!(r.formula, "-F0 - Finf");
        let fd = freeness_defect(&cyclic(6, 5)).unwrap();
        assert_eq!(fd.scalar, Rational::new((-2).into(), 3.into()));
        assert!(fd.effective && fd.verified);

        let e8 = fork(ForkSpec::icosahedral());
        let r = log_canonical_class(&e8).unwrap();
        assert!(r.verified, "{:?}", r.failures);
        assert_eq!(r.formula, "l - F1 - F2 - F3");
        let fd = freeness_defect(&e8).unwrap();
        assert_eq!(fd.scalar, Rational::new((-1).into(), 30.into()));
        assert!(fd.effective && fd.verified);
    }

    #[test]
    fn wrong_formula_is_caught() {
        let sc = cyclic(6, 5);
        let mut failures = Vec::new();
        compare(&sc, &ClassExpr::new(Rational::from_integer((-2).into()), Divisor::zero()), "x", &mut failures)
            .unwrap();
        assert!(!failures.is_empty());
    }
}
