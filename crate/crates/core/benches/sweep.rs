use criterion::{black_box, criterion_group, criterion_main, Criterion};

use dirac_thermo::grid;
use dirac_thermo::model::{ModelParams, Regime};
use dirac_thermo::thermo::thermo_from_series;

fn points() -> Vec<(f64, f64)> {
    let taus = grid::spaced(0.05, 5.0, 50, false);
    [1.0, 5.0, 10.0, 15.0]
        .iter()
        .flat_map(|&xi| taus.iter().map(move |&t| (xi, t)))
        .collect()
}

fn eval(&(xi, tau): &(f64, f64)) -> f64 {
    let p = ModelParams::builder().regime(Regime::Relativistic).xi(xi).build().unwrap();
    thermo_from_series(&p, tau, 1e-12).unwrap().heat_capacity
}

fn bench_grid(c: &mut Criterion) {
    let pts = points();
    let mut group = c.benchmark_group("direct-sweep-200");
    group.bench_function("sequential", |b| b.iter(|| grid::map_points_sequential(black_box(&pts), eval)));
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| b.iter(|| grid::map_points_parallel(black_box(&pts), eval)));
    group.finish();
}

criterion_group!(benches, bench_grid);
criterion_main!(benches);
