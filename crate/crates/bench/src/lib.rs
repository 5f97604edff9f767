//! Inputs shared by the benchmarks.

use surfcalc::{CyclicQuotientType, DualGraph, PolyEndomorphism};

/// Every cyclic type `(n, d)` with `2 <= n <= max`.
pub fn cyclic_types(max: u64) -> Vec<CyclicQuotientType> {
    (2..=max).flat_map(CyclicQuotientType::all_of_order).collect()
}

/// A star with arms of the given lengths, all curves of weight -2.
pub fn star(arms: &[usize]) -> DualGraph {
    let mut g = DualGraph::new();
    g.add_curve("C", -2, true).unwrap();
    for (i, &len) in arms.iter().enumerate() {
        let mut prev = "C".to_string();
        for j in 1..=len {
            let name = format!("A{i}_{j}");
            g.add_curve(name.clone(), -2, true).unwrap();
            g.add_edge(&prev, &name).unwrap();
            prev = name;
        }
    }
    g
}

/// `L1 ∘ (x + y^3, y) ∘ L2` for two fixed invertible linear maps.
pub fn cubic_automorphism() -> PolyEndomorphism {
    let l1 = PolyEndomorphism::parse("x + 2*y", "x + y").unwrap();
    let s = PolyEndomorphism::parse("x + y^3", "y").unwrap();
    let l2 = PolyEndomorphism::parse("2*x - y", "x").unwrap();
    l1 * s * l2
}
