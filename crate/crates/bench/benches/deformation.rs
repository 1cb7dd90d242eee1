use criterion::{black_box, criterion_group, criterion_main, Criterion};
use defcalc::algebra::pmn;
use defcalc::bounds::{cusp_feasibility, semisplit_pipeline, PipelineOptions};
use defcalc::deformation::def_space;
use defcalc::quantum::{extension_solve, extension_subspace, pmn_line_psi};
use defcalc::structure::classify_pmn;
use defcalc::Field;
use defcalc_bench::{all_ones, pmn_space};
use num_rational::BigRational;

fn spaces(c: &mut Criterion) {
    let q = Field::Rational;
    let mut g = c.benchmark_group("def_space");
    for (m, n, d) in [(1, 1, 2), (2, 2, 4), (3, 3, 4)] {
        let r = pmn(m, n, q).unwrap();
        g.bench_function(format!("pmn{m}{n}_d{d}"), |b| b.iter(|| def_space(black_box(&r), d).dimension()));
    }
    g.finish();
}

fn structure(c: &mut Criterion) {
    let space = pmn_space(2, 2, 4);
    let t = all_ones(&space);
    c.bench_function("classify_pmn/p22_d4", |b| b.iter(|| classify_pmn(black_box(&t)).unwrap()));
}

fn quantum(c: &mut Criterion) {
    let q = Field::Rational;
    let space = pmn_space(1, 1, 2);
    let line = pmn_line_psi(1, 1, 1, q).unwrap();
    let t = all_ones(&space);
    c.bench_function("extension_solve/p11_d2", |b| b.iter(|| extension_solve(black_box(&t), &line).unwrap()));
    c.bench_function("extension_subspace/p11_d2", |b| {
        b.iter(|| extension_subspace(black_box(&space), &line).unwrap().dimension())
    });
    let mut g = c.benchmark_group("pipeline");
    g.sample_size(10);
    g.bench_function("p21_d4", |b| b.iter(|| semisplit_pipeline(2, 1, 4, PipelineOptions::default()).unwrap()));
    g.finish();
}

fn bounds(c: &mut Criterion) {
    let lambda: BigRational = "3/2".parse().unwrap();
    c.bench_function("cusp/unbounded_scan", |b| b.iter(|| cusp_feasibility(black_box(&lambda)).unwrap()));
}

criterion_group!(benches, spaces, structure, quantum, bounds);
criterion_main!(benches);
