use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::dualgraph::{verify_fiber, Divisor, DualGraph};
use crate::error::{Error, Result};
use crate::exactmath::{chain_determinant, hj_evaluate, hj_expand, Fraction, HJChain};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainEnd {
    First,
    Last,
}

impl ChainEnd {
    pub fn opposite(self) -> Self {
        match self {
            ChainEnd::First => ChainEnd::Last,
            ChainEnd::Last => ChainEnd::First,
        }
    }
}

/// The degenerate fiber `T + F + R`.
///
/// Curves are named `T1..Tr` in the order of the given chain, `F`, and
/// `R1..Rs` from `F` outward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberCompletion {
    /// Listed from `F` outward.
    pub r: HJChain,
    pub multiplicities: Divisor,
    pub fiber_graph: DualGraph,
    pub m_f: u64,
}

impl FiberCompletion {
    pub fn t_names(&self) -> Vec<String> {
        let r = self.fiber_graph.names().filter(|n| n.starts_with('T')).count();
        (1..=r).map(|i| format!("T{i}")).collect()
    }

    pub fn r_names(&self) -> Vec<String> {
        (1..=self.r.len()).map(|i| format!("R{i}")).collect()
    }
}

/// Primitive positive integral generator of a one-dimensional kernel.
pub(crate) fn primitive_positive(v: &[Rational]) -> Option<Vec<i64>> {
    let lcm = v
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return None;
    }
    let sign = num_bigint::BigInt::from(if ints.iter().any(|c| c.is_negative()) { -1 } else { 1 });
    let out: Option<Vec<i64>> = ints.iter().map(|c| (c / &g * &sign).to_i64()).collect();
    let out = out?;
    out.iter().all(|&c| c > 0).then_some(out)
}

/// Completes an admissible chain `T`, meeting the (-1)-curve `F` at
/// `attach_end`, to the unique linear degenerate fiber in which `F` is the
/// only (-1)-curve.
///
/// If `T` read from `F` outward expands `n/q`, then `R` read from `F` outward
/// expands `n/(n-q)`; the multiplicities are then solved from the fiber
/// conditions and the result is checked with [`verify_fiber`].
pub fn complete_fiber(t: &HJChain, attach_end: ChainEnd) -> Result<FiberCompletion> {
    let mut g = DualGraph::chain("T", &t.weights(), true);
    if t.is_empty() {
        g.add_curve("F", 0, false)?;
        return Ok(FiberCompletion {
            r: HJChain::empty(),
            multiplicities: Divisor::curve("F"),
            fiber_graph: g,
            m_f: 1,
        });
    }
    let from_f = match attach_end {
        ChainEnd::First => t.clone(),
        ChainEnd::Last => t.reversed(),
    };
    let val = hj_evaluate(&from_f)?;
    let r = hj_expand(Fraction::new(val.n(), val.n() - val.d())?)?;

    let t_end = match attach_end {
        ChainEnd::First => "T1".to_string(),
        ChainEnd::Last => format!("T{}", t.len()),
    };
    g.add_curve("F", -1, false)?;
    g.add_edge(&t_end, "F")?;
    let rg = DualGraph::chain("R", &r.weights(), true);
    g = g.union(&rg)?;
    g.add_edge("F", "R1")?;

    let names: Vec<&str> = g.names().collect();
    let kernel = g.intersection_matrix_for(&names).kernel();
    if kernel.len() != 1 {
        return Err(Error::FiberCompletion(format!(
            "fiber matrix has a {}-dimensional kernel",
            kernel.len()
        )));
    }
    let coeffs = primitive_positive(&kernel[0])
        .ok_or_else(|| Error::FiberCompletion("kernel vector is not positive".into()))?;
    let multiplicities = Divisor::from_integers(names.iter().copied().zip(coeffs));
    if !verify_fiber(&g, &multiplicities) {
        return Err(Error::FiberCompletion(format!("T + F + R with R = [{r}] is not a fiber")));
    }
    let m_f = multiplicities
        .coeff("F")
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::FiberCompletion("multiplicity overflow".into()))?;
    if chain_determinant(t) != m_f.into() {
        return Err(Error::FiberCompletion(format!(
            "multiplicity of F is {m_f}, expected det(T)"
        )));
    }
    Ok(FiberCompletion {
        r,
        multiplicities,
        fiber_graph: g,
        m_f,
    })
}
