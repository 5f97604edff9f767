use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{is_negative_definite, Divisor, DualGraph};
use crate::error::{Error, Result};
use crate::exactmath::{chain_determinant, HJChain};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExceptionalType {
    AdmissibleRod,
    /// Arm determinants in ascending order.
    AdmissibleFork { deltas: [u64; 3] },
    Neither,
}

/// Walks a linear arm starting at `first`, away from `from`. Returns `None`
/// if the arm branches or loops back.
pub(crate) fn walk_arm<'a>(g: &'a DualGraph, from: &'a str, first: &'a str) -> Option<Vec<&'a str>> {
    let mut arm = vec![first];
    let (mut prev, mut cur) = (from, first);
    loop {
        let next: Vec<&str> = g.neighbors(cur).into_iter().filter(|&n| n != prev).collect();
        match next.as_slice() {
            [] => return Some(arm),
            [n] => {
                if arm.contains(n) || *n == from {
                    return None;
                }
                arm.push(n);
                (prev, cur) = (cur, n);
            }
            _ => return None,
        }
    }
}

fn arm_chain(g: &DualGraph, arm: &[&str]) -> Option<HJChain> {
    let entries = arm
        .iter()
        .map(|n| g.weight(n).ok().map(|w| (-w) as u64))
        .collect::<Option<Vec<_>>>()?;
    HJChain::new(entries).ok()
}

pub fn classify_exceptional(g: &DualGraph) -> ExceptionalType {
    if g.is_empty()
        || !g.is_connected()
        || g.curves().any(|(_, c)| c.weight > -2)
        || g.edge_count() + 1 != g.len()
        || !is_negative_definite(g)
    {
        return ExceptionalType::Neither;
    }
    let degrees: Vec<(&str, usize)> = g.names().map(|n| (n, g.degree(n))).collect();
    if degrees.iter().all(|&(_, d)| d <= 2) {
        return ExceptionalType::AdmissibleRod;
    }
    let centers: Vec<&str> = degrees.iter().filter(|&&(_, d)| d >= 3).map(|&(n, _)| n).collect();
    if centers.len() != 1 || g.degree(centers[0]) != 3 {
        return ExceptionalType::Neither;
    }
    let center = centers[0];
    let mut deltas = Vec::with_capacity(3);
    for first in g.neighbors(center) {
        let Some(arm) = walk_arm(g, center, first) else {
            return ExceptionalType::Neither;
        };
        let Some(chain) = arm_chain(g, &arm) else {
            return ExceptionalType::Neither;
        };
        deltas.push(chain_determinant(&chain).to_u64().unwrap_or(u64::MAX));
    }
    deltas.sort_unstable();
    ExceptionalType::AdmissibleFork {
        deltas: [deltas[0], deltas[1], deltas[2]],
    }
}

/// Artin's fundamental cycle, breaking ties by lowest curve name.
pub fn fundamental_cycle(g: &DualGraph) -> Result<Divisor> {
    let order: Vec<&str> = g.names().collect();
    fundamental_cycle_in_order(g, &order)
}

/// Artin's iteration where, among curves with `Z.E > 0`, the one appearing
/// first in `order` is added. The result does not depend on `order`.
pub fn fundamental_cycle_in_order(g: &DualGraph, order: &[&str]) -> Result<Divisor> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if !is_negative_definite(g) {
        return Err(Error::NotNegativeDefinite);
    }
    for n in order {
        g.curve(n)?;
    }
    let names: Vec<&str> = g.names().collect();
    if order.len() != names.len() {
        return Err(Error::Input("vertex order must list every curve once".into()));
    }
    let idx = |n: &str| names.binary_search(&n).expect("checked above");
    let order_idx: Vec<usize> = order.iter().map(|n| idx(n)).collect();
    let k = names.len();
    let m: Vec<Vec<i64>> = names
        .iter()
        .map(|a| names.iter().map(|b| g.pair(a, b)).collect())
        .collect();

    let mut z = vec![1i64; k];
    // z_dot[i] = Z . E_i
    let mut z_dot: Vec<i64> = (0..k).map(|i| m[i].iter().sum()).collect();
    while let Some(&i) = order_idx.iter().find(|&&i| z_dot[i] > 0) {
        z[i] += 1;
        for (j, zd) in z_dot.iter_mut().enumerate() {
            *zd += m[i][j];
        }
    }
    Ok(Divisor::from_integers(names.iter().copied().zip(z)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dualgraph::tests::e8;

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_exceptional(&DualGraph::chain("E", &[-2; 5], true)),
            ExceptionalType::AdmissibleRod
        );
        assert_eq!(
            classify_exceptional(&e8()),
            ExceptionalType::AdmissibleFork { deltas: [2, 3, 5] }
        );
        assert_eq!(
            classify_exceptional(&DualGraph::chain("E", &[-1], true)),
            ExceptionalType::Neither
        );
        // star with four arms
        let mut g = DualGraph::chain("E", &[-2], true);
        for i in 0..4 {
            g.add_curve(format!("a{i}"), -2, true).unwrap();
            g.add_edge("E1", &format!("a{i}")).unwrap();
        }
        assert_eq!(classify_exceptional(&g), ExceptionalType::Neither);
    }

    #[test]
    fn fundamental_cycle_examples() {
        let z = fundamental_cycle(&DualGraph::chain("E", &[-5], true)).unwrap();
        assert_eq!(z, Divisor::curve("E1"));
        let z = fundamental_cycle(&DualGraph::chain("E", &[-2, -2], true)).unwrap();
        assert_eq!(z, Divisor::from_integers([("E1", 1), ("E2", 1)]));
        // E8: the highest root, 2 3 4 6 5 4 3 2 style coefficients
        let z = fundamental_cycle(&e8()).unwrap();
        let want = Divisor::from_integers([
            ("C", 6),
            ("a1", 3),
            ("b1", 4),
            ("b2", 2),
            ("c1", 5),
            ("c2", 4),
            ("c3", 3),
            ("c4", 2),
        ]);
        assert_eq!(z, want);
    }

    #[test]
    fn fundamental_cycle_rejects_indefinite() {
        let g = DualGraph::chain("E", &[-1, -1], true);
        assert_eq!(fundamental_cycle(&g), Err(Error::NotNegativeDefinite));
    }
}
