use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use farfield::expansion::{build_coeff_table, coeff_closed, coeff_recurrence, eval_series};
use farfield::ndim::{green_nd_multipole, DimParams};
use farfield::oracle::{eval_j_direct, QuadratureSpec};
use farfield::packets::{c1_c2_zeta, negative_upsilon_region};
use farfield::specfun::{chi_sequence, psi_sequence, spherical_harmonics_all};
use farfield::PhiModel;
use farfield_bench::{dense_rep, gaussian_model, gaussian_pair, tilted_direction};
use num_complex::Complex64;

fn special_functions(c: &mut Criterion) {
    let mut group = c.benchmark_group("specfun");
    let n = tilted_direction();
    for l_max in [16usize, 64] {
        group.bench_with_input(BenchmarkId::new("harmonics", l_max), &l_max, |b, &l| {
            b.iter(|| spherical_harmonics_all(black_box(l), &n))
        });
    }
    group.bench_function("chi_sequence_40", |b| {
        b.iter(|| chi_sequence(40, black_box(Complex64::new(0.0, -12.5))))
    });
    group.bench_function("psi_sequence_40", |b| b.iter(|| psi_sequence(40, black_box(12.5))));
    group.finish();
}

fn coefficients(c: &mut Criterion) {
    let mut group = c.benchmark_group("coefficients");
    let rep = dense_rep(4.0);
    let n = tilted_direction();
    group.bench_function("closed_s10", |b| b.iter(|| coeff_closed(black_box(&rep), 10)));
    group.bench_function("recurrence_s10", |b| b.iter(|| coeff_recurrence(black_box(&rep), 10)));
    group.bench_function("table_s8_n4", |b| b.iter(|| build_coeff_table(black_box(&rep), &n, 8, 4)));
    let table = build_coeff_table(&rep, &n, 8, 4).unwrap();
    group.bench_function("eval_series_s8", |b| b.iter(|| eval_series(&table, black_box(40.0), 8)));
    group.bench_function("exp_zeta_rep", |b| {
        let model = PhiModel::from_json(
            r#"{"type":"exp_zeta","lambda":1.5,"tensor":[[1,0.2,0],[0.2,0.5,0.1],[0,0.1,0.3]]}"#,
        )
        .unwrap();
        b.iter(|| model.rep(black_box(1.0)))
    });
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    let pair = gaussian_pair();
    let spec = QuadratureSpec::default();
    for r in [20.0f64, 80.0] {
        group.bench_with_input(BenchmarkId::new("eval_j_direct", r), &r, |b, &r| {
            b.iter(|| eval_j_direct(&pair, 1.0, &[0.0, 0.0, black_box(r)], &spec))
        });
    }
    group.bench_function("gaussian_rep", |b| b.iter(|| gaussian_model().rep(black_box(1.0))));
    group.finish();
}

fn ndim_and_packets(c: &mut Criterion) {
    let mut group = c.benchmark_group("ndim_packets");
    for n in [2u32, 3, 6] {
        let dim = DimParams::new(n).unwrap();
        group.bench_with_input(BenchmarkId::new("green_multipole_l40", n), &dim, |b, &dim| {
            b.iter(|| green_nd_multipole(dim, 1.0, black_box(5.0), 1.0, 0.3, 40))
        });
    }
    let b_mat = [[1.0, 0.2, 0.0], [0.2, 0.5, 0.1], [0.0, 0.1, 0.3]];
    let n = tilted_direction();
    group.bench_function("c1_c2_zeta", |b| b.iter(|| c1_c2_zeta(black_box(0.9), &b_mat, &n)));
    group.bench_function("negative_region", |b| b.iter(|| negative_upsilon_region(black_box(7.5))));
    group.finish();
}

criterion_group!(benches, special_functions, coefficients, oracle, ndim_and_packets);
criterion_main!(benches);
