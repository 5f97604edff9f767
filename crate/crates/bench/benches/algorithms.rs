use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use surfcalc::dualgraph::fundamental_cycle;
use surfcalc::equivariant::{certify, find_inverse};
use surfcalc::exactmath::{hj_expand, multiplicity_sequence};
use surfcalc::pencil::{contract_to_hirzebruch, resolve_pencil};
use surfcalc::quotient::{build_standard_completion, log_canonical_class, section_weight, GroupModel};
use surfcalc::{CyclicQuotientType, Fraction, GroupAction};
use surfcalc_bench::{cubic_automorphism, cyclic_types, star};

fn exactmath(c: &mut Criterion) {
    let types = cyclic_types(60);
    c.bench_function("hj_expand n<=60", |b| {
        b.iter(|| {
            for t in &types {
                black_box(hj_expand(Fraction::new(t.n(), t.d()).unwrap()).unwrap());
            }
        })
    });
    c.bench_function("multiplicity_sequence 1001/17", |b| {
        b.iter(|| multiplicity_sequence(black_box(1001), black_box(17)).unwrap())
    });
}

fn dualgraph(c: &mut Criterion) {
    let mut group = c.benchmark_group("fundamental_cycle");
    for (name, arms) in [("E8", vec![1, 2, 4]), ("D12", vec![1, 1, 9]), ("E7", vec![1, 2, 3])] {
        let g = star(&arms);
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| fundamental_cycle(g).unwrap())
        });
    }
    group.finish();
}

fn quotient(c: &mut Criterion) {
    let mut group = c.benchmark_group("completion");
    for (n, d) in [(6, 5), (29, 12), (60, 49)] {
        let t = CyclicQuotientType::new(n, d).unwrap();
        group.bench_with_input(BenchmarkId::new("section_weight", format!("{n},{d}")), &t, |b, t| {
            b.iter(|| section_weight(*t).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("build_and_verify", format!("{n},{d}")), &t, |b, t| {
            b.iter(|| {
                let sc = build_standard_completion(&GroupModel::cyclic(*t)).unwrap();
                log_canonical_class(&sc).unwrap()
            })
        });
    }
    group.finish();
}

fn pencil(c: &mut Criterion) {
    c.bench_function("resolve_pencil 5,4 and contract", |b| {
        b.iter(|| {
            let pr = resolve_pencil(black_box(5), black_box(4)).unwrap();
            contract_to_hirzebruch(&pr).unwrap()
        })
    });
}

fn equivariant(c: &mut Criterion) {
    let e = cubic_automorphism();
    let act = GroupAction::new(2, 1).unwrap();
    c.bench_function("certify cubic", |b| b.iter(|| certify(black_box(&e), act)));
    c.bench_function("find_inverse cubic", |b| b.iter(|| find_inverse(black_box(&e)).unwrap()));
}

criterion_group!(benches, exactmath, dualgraph, quotient, pencil, equivariant);
criterion_main!(benches);
