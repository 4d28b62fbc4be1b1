use criterion::{criterion_group, criterion_main, Criterion};
use slowdiff::eigen::{minimize_quotient, EigenDomain, MinimizeOptions};
use slowdiff::evolve::evolve;
use slowdiff::infconv::{inf_convolve, inf_convolve_fast, InfConvSpec};
use slowdiff::params::{Equation, MediumParams};
use slowdiff_bench::{barenblatt_problem, corpus_field};
use std::hint::black_box;

fn bench_evolution(c: &mut Criterion) {
    let problem = barenblatt_problem(257, 0.6);
    c.bench_function("evolve_barenblatt_257", |b| {
        b.iter(|| evolve(black_box(&problem)).unwrap())
    });
}

fn bench_infconv(c: &mut Criterion) {
    let field = corpus_field(65, 40);
    let spec = InfConvSpec::new(0.05, field.grid.cylinder()).unwrap();
    c.bench_function("infconv_brute_65x41", |b| {
        b.iter(|| inf_convolve(black_box(&field), black_box(&spec)).unwrap())
    });
    c.bench_function("infconv_envelope_65x41", |b| {
        b.iter(|| inf_convolve_fast(black_box(&field), black_box(&spec)).unwrap())
    });
}

fn bench_eigen(c: &mut Criterion) {
    let params = MediumParams::p_laplace(4.0, 1).unwrap();
    let domain = EigenDomain::Interval { length: 1.0, nodes: 257 };
    c.bench_function("eigen_p4_257", |b| {
        b.iter(|| {
            minimize_quotient(
                black_box(&domain),
                black_box(&params),
                Equation::PLaplace,
                &MinimizeOptions::default(),
            )
            .unwrap()
        })
    });
}

criterion_group!(benches, bench_evolution, bench_infconv, bench_eigen);
criterion_main!(benches);
