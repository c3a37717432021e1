use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use moore::fp_group::FiniteGroup;
use moore::homotopy::Pi2Data;
use moore::peiffer::{peiffer_generators, theorem_a_check, ArgumentSource};
use moore::simplicial::PointwiseModel;
use moore::{Bounds, Exec};

const MODES: [(&str, Exec); 2] = [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)];

fn group(name: &str) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::by_name(name).unwrap())
}

fn generators(c: &mut Criterion) {
    let model = PointwiseModel::new(group("s3"), 2, 3, Bounds::default()).unwrap();
    let mut g = c.benchmark_group("peiffer_generators_triangles_s3_n3");
    g.sample_size(10);
    for (label, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| peiffer_generators(&model, 3, &ArgumentSource::Exhaustive, exec).unwrap())
        });
    }
    g.finish();
}

fn theorem_a(c: &mut Criterion) {
    let model = PointwiseModel::new(group("s3"), 0, 3, Bounds::default()).unwrap();
    let bounds = Bounds::default();
    let mut g = c.benchmark_group("theorem_a_cech_s3_n3");
    g.sample_size(10);
    for (label, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| theorem_a_check(&model, 3, &bounds, exec).unwrap())
        });
    }
    g.finish();
}

fn pi2_relations(c: &mut Criterion) {
    let data = Pi2Data::new(group("k4")).unwrap();
    let mut g = c.benchmark_group("pi2_relations_k4_bound2");
    g.sample_size(10);
    for (label, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(label), |b| b.iter(|| data.relations(2, exec).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, generators, theorem_a, pi2_relations);
criterion_main!(benches);
