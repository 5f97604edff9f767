//! Models of `A^2/G`: the minimal resolution graph, Platonic forks, and the
//! standard `P^1`-fibered completion `V` with its degenerate fibers.

mod canonical;
mod completion;
mod fiber;

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

pub use canonical::{freeness_defect, log_canonical_class, ClassExpr, FreenessDefect, LogCanonicalReport};
pub use completion::{
    build_standard_completion, section_search, section_weight, CompletionJson, CompletionKind,
    FiberData, GroupModel, SectionSearch, StandardCompletion,
};
pub use fiber::{complete_fiber, ChainEnd, FiberCompletion};

use crate::dualgraph::{classify_exceptional, is_negative_definite, DualGraph, ExceptionalType};
use crate::error::{Error, Result};
use crate::exactmath::{chain_determinant, hj_expand, mod_inverse, Fraction, HJChain};

/// The cyclic group of order `n` acting by `(x, y) -> (z x, z^d y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicQuotientType {
    n: u64,
    d: u64,
}

impl CyclicQuotientType {
    pub fn new(n: u64, d: u64) -> Result<Self> {
        if n < 2 || d == 0 || d >= n || n.gcd(&d) != 1 {
            return Err(Error::InvalidCyclicType { n, d });
        }
        Ok(CyclicQuotientType { n, d })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// Every valid type with the given order.
    pub fn all_of_order(n: u64) -> impl Iterator<Item = CyclicQuotientType> {
        (1..n).filter_map(move |d| CyclicQuotientType::new(n, d).ok())
    }
}

/// Linear chain `E1 - ... - Er` with weights `-a_i` from the expansion of `n/d`.
pub fn resolution_chain(t: CyclicQuotientType) -> DualGraph {
    let chain = hj_expand(Fraction::new(t.n, t.d).expect("valid type")).expect("d < n");
    DualGraph::chain("E", &chain.weights(), true)
}

/// Central curve plus three arms, each listed from the curve meeting the center outward.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForkSpec {
    pub central_weight: i64,
    pub arms: [HJChain; 3],
}

impl ForkSpec {
    pub fn new(central_weight: i64, arms: [Vec<u64>; 3]) -> Result<Self> {
        let [a, b, c] = arms;
        Ok(ForkSpec {
            central_weight,
            arms: [HJChain::new(a)?, HJChain::new(b)?, HJChain::new(c)?],
        })
    }

    /// `D_{n+2}`: triplet `{2, 2, n}`, `n >= 2`.
    pub fn dihedral(n: u64) -> Self {
        assert!(n >= 2, "dihedral fork needs n >= 2");
        Self::new(-2, [vec![2], vec![2], vec![2; (n - 1) as usize]]).expect("valid")
    }

    /// `E6`: triplet `{2, 3, 3}`.
    pub fn tetrahedral() -> Self {
        Self::new(-2, [vec![2], vec![2, 2], vec![2, 2]]).expect("valid")
    }

    /// `E7`: triplet `{2, 3, 4}`.
    pub fn octahedral() -> Self {
        Self::new(-2, [vec![2], vec![2, 2], vec![2, 2, 2]]).expect("valid")
    }

    /// `E8`: triplet `{2, 3, 5}`.
    pub fn icosahedral() -> Self {
        Self::new(-2, [vec![2], vec![2, 2], vec![2, 2, 2, 2]]).expect("valid")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fork serializes")
    }

    /// Name of the `j`-th curve (1-based, from the center) on arm `i` (1-based).
    pub fn arm_curve(i: usize, j: usize) -> String {
        format!("T{i}_{j}")
    }

    /// The fork as a dual graph: `S0` with arms `T{i}_{j}`.
    pub fn realize(&self) -> DualGraph {
        let mut g = DualGraph::new();
        g.add_curve("S0", self.central_weight, true).expect("fresh");
        for (i, arm) in self.arms.iter().enumerate() {
            let mut prev = "S0".to_string();
            for (j, w) in arm.weights().into_iter().enumerate() {
                let name = Self::arm_curve(i + 1, j + 1);
                g.add_curve(name.clone(), w, true).expect("fresh");
                g.add_edge(&prev, &name).expect("fresh edge");
                prev = name;
            }
        }
        g
    }

    pub fn determinants(&self) -> [u64; 3] {
        self.arms
            .each_ref()
            .map(|a| chain_determinant(a).to_u64().unwrap_or(u64::MAX))
    }
}

/// The example forks shipped under `forks/`: `D4..D8` (triplets `{2,2,2}`
/// to `{2,2,6}`), `E6`, `E7`, `E8`.
pub fn bundled_forks() -> Vec<(&'static str, ForkSpec)> {
    [
        ("d4", include_str!("../../forks/d4.json")),
        ("d5", include_str!("../../forks/d5.json")),
        ("d6", include_str!("../../forks/d6.json")),
        ("d7", include_str!("../../forks/d7.json")),
        ("d8", include_str!("../../forks/d8.json")),
        ("e6", include_str!("../../forks/e6.json")),
        ("e7", include_str!("../../forks/e7.json")),
        ("e8", include_str!("../../forks/e8.json")),
    ]
    .into_iter()
    .map(|(name, src)| (name, ForkSpec::from_json(src).expect("bundled fork parses")))
    .collect()
}

/// Matches the listed triplets `{2,2,n}`, `{2,3,3}`, `{2,3,4}`, `{2,3,5}`.
pub fn is_platonic_by_list(d1: u64, d2: u64, d3: u64) -> bool {
    let mut t = [d1, d2, d3];
    t.sort_unstable();
    matches!(t, [2, 2, n] if n >= 2) || matches!(t, [2, 3, 3] | [2, 3, 4] | [2, 3, 5])
}

/// `1/d1 + 1/d2 + 1/d3 > 1` with every `d_i >= 2`.
pub fn is_platonic_by_reciprocals(d1: u64, d2: u64, d3: u64) -> bool {
    if d1 < 2 || d2 < 2 || d3 < 2 {
        return false;
    }
    // d2 d3 + d1 d3 + d1 d2 > d1 d2 d3, in u128 to stay exact
    let (a, b, c) = (d1 as u128, d2 as u128, d3 as u128);
    b * c + a * c + a * b > a * b * c
}

pub fn is_platonic(d1: u64, d2: u64, d3: u64) -> bool {
    let listed = is_platonic_by_list(d1, d2, d3);
    debug_assert_eq!(listed, is_platonic_by_reciprocals(d1, d2, d3));
    listed
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForkReport {
    pub negative_definite: bool,
    pub admissible: bool,
    /// Arm determinants in the order of the fork's arms.
    pub determinants: [u64; 3],
    pub platonic: bool,
}

impl ForkReport {
    pub fn is_valid(&self) -> bool {
        self.negative_definite && self.admissible && self.platonic
    }
}

pub fn validate_fork(f: &ForkSpec) -> ForkReport {
    let g = f.realize();
    let determinants = f.determinants();
    ForkReport {
        negative_definite: is_negative_definite(&g),
        admissible: matches!(classify_exceptional(&g), ExceptionalType::AdmissibleFork { .. }),
        determinants,
        platonic: is_platonic(determinants[0], determinants[1], determinants[2]),
    }
}

/// Local data at the two fixed points `Q0`, `Qinf` of the induced action on
/// the exceptional line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfinityData {
    pub delta1: u64,
    /// Exponent with `z^(d e) = z^(n - d + 1)`.
    pub e: u64,
    pub delta2: u64,
    pub zero: Fraction,
    pub infinity: Fraction,
}

fn reduced(n: u64, k: u64, delta: u64) -> Fraction {
    if delta == n {
        Fraction::degenerate()
    } else {
        Fraction::new(n / delta, k / delta).expect("reduced pair is coprime with k < n")
    }
}

pub fn infinity_data(t: CyclicQuotientType) -> Result<InfinityData> {
    let (n, d) = (t.n, t.d);
    if d == 1 {
        return Err(Error::HirzebruchCase);
    }
    let delta1 = n.gcd(&(d - 1));
    let inv = mod_inverse(d as i64, n)?;
    let e = ((inv as u128 * (n - d + 1) as u128) % n as u128) as u64;
    let delta2 = n.gcd(&e);
    Ok(InfinityData {
        delta1,
        e,
        delta2,
        zero: reduced(n, d - 1, delta1),
        infinity: reduced(n, e, delta2),
    })
}

/// `((n/delta1, (d-1)/delta1), (n/delta2, e/delta2))`.
pub fn infinity_types(t: CyclicQuotientType) -> Result<(Fraction, Fraction)> {
    infinity_data(t).map(|i| (i.zero, i.infinity))
}

/// The chain resolving a point of the given type; empty for the degenerate `1/1`.
pub(crate) fn arm_for(f: Fraction) -> HJChain {
    if f.is_degenerate() {
        HJChain::empty()
    } else {
        hj_expand(f).expect("non-degenerate")
    }
}
