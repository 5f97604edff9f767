use surfcalc::dualgraph::{intersection_number, verify_fiber};
use surfcalc::exactmath::multiplicity_sequence;
use surfcalc::pencil::{
    contract_to_hirzebruch, cusp_data, genus_drop, pencil_member_class, resolve_pencil,
};
use surfcalc::{Divisor, Rational};

fn main_chain(n: u64, a: u64) -> Vec<String> {
    let mut v = vec!["l0".to_string()];
    v.extend((1..=n).map(|k| format!("E{k}")));
    v.extend((1..=a).rev().map(|j| format!("A{j}")));
    v.push("S1".into());
    v
}

#[test]
fn weight_pattern_and_member() {
    for n in 1..=5u64 {
        for a in 1..=4u64 {
            let pr = resolve_pencil(n, a).unwrap();
            assert_eq!(pr.steps.len() as u64, n + 2 * a);
            let chain = main_chain(n, a);
            let w: Vec<i64> = chain.iter().map(|c| pr.graph.weight(c).unwrap()).collect();
            let mut expect = vec![-1];
            expect.extend(std::iter::repeat_n(-2, n as usize - 1));
            expect.push(-(a as i64) - 1);
            expect.extend(std::iter::repeat_n(-2, a as usize));
            expect.push(-1);
            assert_eq!(w, expect, "(n, a) = ({n}, {a})");
            for pair in chain.windows(2) {
                assert!(pr.graph.has_edge(&pair[0], &pair[1]));
            }
            // B chain hanging off Aa, ending in the section F
            let mut b: Vec<String> = (1..a).map(|j| format!("B{j}")).collect();
            b.push("F".into());
            let mut prev = format!("A{a}");
            for (i, c) in b.iter().enumerate() {
                let expected = if i + 1 == b.len() { -1 } else { -2 };
                assert_eq!(pr.graph.weight(c).unwrap(), expected);
                assert!(pr.graph.has_edge(&prev, c));
                prev = c.clone();
            }
            assert_eq!(pr.graph.weight("S0").unwrap(), -(n as i64));
            assert_eq!(pr.graph.len() as u64, 3 + n + 2 * a);

            assert_eq!(pr.special_member, pr.expected_member());
            assert!(verify_fiber(&pr.graph, &pr.special_member));
            assert_eq!(*pr.member_squares.last().unwrap(), 0);
            let f = Divisor::curve("F");
            let s0 = Divisor::curve("S0");
            // both F and S0 are sections of the new fibration
            let one = Rational::from_integer(1.into());
            assert_eq!(intersection_number(&pr.graph, &pr.special_member, &f).unwrap(), one);
            assert_eq!(intersection_number(&pr.graph, &pr.special_member, &s0).unwrap(), one);
            assert_eq!(pr.special_member.coeff("F"), Rational::from_integer(0.into()));

            let hc = contract_to_hirzebruch(&pr).unwrap();
            assert_eq!(hc.final_graph.weight("S0").unwrap(), -(n as i64));
            assert_eq!(hc.final_graph.weight(&hc.section_image).unwrap(), n as i64);
            assert_eq!(hc.final_graph.weight(&hc.fiber_image).unwrap(), 0);
        }
    }
}

#[test]
fn genus_accounting() {
    for n in 1..=5u64 {
        for a in 1..=4u64 {
            let pa = pencil_member_class(n, a).unwrap().arithmetic_genus;
            assert_eq!(pa as u64, a * n * (a - 1) / 2);
            let pr = resolve_pencil(n, a).unwrap();
            assert_eq!(genus_drop(&pr), pa as u64);
            let cd = cusp_data(n, a).unwrap();
            assert_eq!(cd.delta(), pa as u64);
            let seq = multiplicity_sequence(a * n + 1, a).unwrap();
            if a >= 2 {
                assert_eq!(seq.count(a), n as usize);
                assert!(!cd.smooth);
            } else {
                // a smooth branch: every entry of the sequence is 1
                assert!(cd.smooth);
                assert!(seq.entries().iter().all(|&m| m == 1));
            }
            let centers_of_mult_a = pr.steps.iter().filter(|s| s.multiplicity == a).count() as u64;
            assert_eq!(centers_of_mult_a, if a >= 2 { n } else { n + 2 * a });
        }
    }
}

#[test]
fn bad_parameters_are_rejected() {
    assert!(resolve_pencil(0, 1).is_err());
    assert!(resolve_pencil(1, 0).is_err());
    assert!(resolve_pencil(u64::MAX, 2).is_err());
}
