use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::{blow_down, intersection_number, Divisor, DualGraph};

/// Contracts the support of an integral fiber divisor down to one curve,
/// returning the names contracted in order, or `None` if the support gets
/// stuck or the multiplicities are inconsistent with the contraction.
pub fn fiber_contraction(g: &DualGraph, d: &Divisor) -> Option<Vec<String>> {
    let mut mult: BTreeMap<String, i64> = d.integer_coeffs()?;
    let support: BTreeSet<String> = mult.keys().cloned().collect();
    let mut sub = g.induced(&support);
    let mut schedule = Vec::new();
    while sub.len() > 1 {
        let target = sub
            .curves()
            .find(|(n, c)| c.weight == -1 && sub.degree(n) <= 2)
            .map(|(n, _)| n.to_owned())?;
        // a (-1)-curve in a fiber has multiplicity equal to the sum over its neighbors
        let around: i64 = sub.neighbors(&target).iter().map(|n| mult[*n]).sum();
        if around != mult[&target] {
            return None;
        }
        sub = blow_down(&sub, &target).ok()?;
        mult.remove(&target);
        schedule.push(target);
    }
    let (last, curve) = sub.curves().next()?;
    (curve.weight == 0 && mult[last] == 1).then_some(schedule)
}

/// Checks that `d` is the divisor of a degenerate (or smooth) fiber of a
/// ruling: effective, integral, connected support, numerically trivial on its
/// components, primitive, and contractible to a single 0-curve.
pub fn verify_fiber(g: &DualGraph, d: &Divisor) -> bool {
    if d.is_zero() || !d.is_effective() || !d.is_integral() {
        return false;
    }
    if d.support().any(|n| !g.contains(n)) {
        return false;
    }
    let support: BTreeSet<String> = d.support().map(str::to_owned).collect();
    if !g.induced(&support).is_connected() {
        return false;
    }
    for c in &support {
        match intersection_number(g, d, &Divisor::curve(c.clone())) {
            Ok(v) if v.is_zero() => {}
            _ => return false,
        }
    }
    if !intersection_number(g, d, d).is_ok_and(|v| v.is_zero()) {
        return false;
    }
    if !d.content().is_one() {
        return false;
    }
    fiber_contraction(g, d).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fiber_examples() {
        let g = DualGraph::chain("E", &[-2, -1, -2], false);
        let d = Divisor::from_integers([("E1", 1), ("E2", 2), ("E3", 1)]);
        assert!(verify_fiber(&g, &d));
        assert_eq!(fiber_contraction(&g, &d).unwrap(), vec!["E2", "E1"]);

        let smooth = DualGraph::chain("F", &[0], false);
        assert!(verify_fiber(&smooth, &Divisor::curve("F1")));

        let rod = DualGraph::chain("E", &[-2, -2], false);
        assert!(!verify_fiber(&rod, &Divisor::from_integers([("E1", 1), ("E2", 1)])));
    }

    #[test]
    fn rejects_non_primitive_and_partial() {
        let g = DualGraph::chain("E", &[-2, -1, -2], false);
        assert!(!verify_fiber(&g, &Divisor::from_integers([("E1", 2), ("E2", 4), ("E3", 2)])));
        assert!(!verify_fiber(&g, &Divisor::from_integers([("E1", 1), ("E2", 2)])));
        assert!(!verify_fiber(&g, &Divisor::zero()));
    }

    #[test]
    fn fiber_with_sections_attached() {
        // sections outside the support do not interfere
        let mut g = DualGraph::chain("E", &[-2, -1, -2], false);
        g.add_curve("S0", -3, true).unwrap();
        g.add_edge("S0", "E1").unwrap();
        let d = Divisor::from_integers([("E1", 1), ("E2", 2), ("E3", 1)]);
        assert!(verify_fiber(&g, &d));
    }
}
