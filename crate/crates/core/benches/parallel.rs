//! Sequential against rayon execution for the three heavy loops: span
//! hom-set enumeration, transfer-system enumeration and Mackey axiom checks.
//! Without the `parallel` feature both arms run sequentially.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use eqalg_core::corpus;
use eqalg_core::gsets::GSet;
use eqalg_core::indexing::{enumerate_masks, Algorithm, PairSpace};
use eqalg_core::mackey::{burnside_mackey, check_axioms_with};
use eqalg_core::par::Exec;
use eqalg_core::span::{hom_set_with, TripleConstraint};

const POLICIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn hom_sets(c: &mut Criterion) {
    let g = corpus::symmetric(3);
    let classes: Vec<usize> = (0..g.num_classes()).collect();
    let x = GSet::from_classes(g.clone(), &classes);
    let all = TripleConstraint::all();
    let mut group = c.benchmark_group("hom_set_S3");
    for (name, exec) in POLICIES {
        group.bench_function(name, |b| b.iter(|| hom_set_with(&x, &x, &all, exec).unwrap().len()));
    }
    group.finish();
}

fn transfer_systems(c: &mut Criterion) {
    let mut group = c.benchmark_group("transfer_systems");
    group.sample_size(10);
    for name in ["C4xC2", "D8"] {
        let space = PairSpace::new(corpus::by_name(name).unwrap());
        for (policy, exec) in POLICIES {
            group.bench_with_input(BenchmarkId::new(policy, name), &space, |b, space| {
                b.iter(|| enumerate_masks(space, Algorithm::Closure, exec).unwrap().len())
            });
        }
    }
    group.finish();
}

fn mackey_axioms(c: &mut Criterion) {
    let m = burnside_mackey(&corpus::dihedral(4));
    let mut group = c.benchmark_group("mackey_axioms_D8");
    group.sample_size(10);
    for (name, exec) in POLICIES {
        group.bench_function(name, |b| b.iter(|| check_axioms_with(&m, exec).checks));
    }
    group.finish();
}

criterion_group!(benches, hom_sets, transfer_systems, mackey_axioms);
criterion_main!(benches);
