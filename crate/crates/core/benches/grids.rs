use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fano24_core::exactnum::{
    midpoint_integrate, midpoint_integrate_seq, AffineU, Poly2, Rational, Region,
};
use fano24_core::surface::{
    oracle_sweep, oracle_sweep_seq, zariski_surface, DPLattice, SurfaceClass,
};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn bench_midpoint_grid(c: &mut Criterion) {
    let p = Poly2::affine(r(8, 1), r(-4, 1), r(-2, 1)).pow(2);
    let reg = Region::new(
        r(1, 1),
        r(2, 1),
        AffineU::new(r(2, 1), r(-1, 1)),
        AffineU::new(r(4, 1), r(-2, 1)),
    )
    .unwrap();
    let mut group = c.benchmark_group("midpoint-grid-256");
    group.bench_function("sequential", |b| {
        b.iter(|| midpoint_integrate_seq(black_box(&p), black_box(&reg), 256))
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter(|| midpoint_integrate(black_box(&p), black_box(&reg), 256))
    });
    #[cfg(not(feature = "parallel"))]
    let _ = midpoint_integrate(&p, &reg, 4);
    group.finish();
}

fn bench_oracle_sweep(c: &mut Criterion) {
    let lat = DPLattice::smooth();
    let z_class = SurfaceClass::from_ints(&[1, -1, 0, 0]);
    let d = lat
        .anticanonical_class()
        .sub(&z_class.scale_poly(&Poly2::v()));
    let bbox = Region::rect(r(0, 1), r(1, 1), r(0, 1), r(2, 1)).unwrap();
    let z = zariski_surface(&d, &lat, &bbox).unwrap();
    let mut group = c.benchmark_group("oracle-sweep-40");
    group.sample_size(20);
    group.bench_function("sequential", |b| {
        b.iter(|| oracle_sweep_seq(black_box(&d), &lat, &z, 40).unwrap())
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter(|| oracle_sweep(black_box(&d), &lat, &z, 40).unwrap())
    });
    #[cfg(not(feature = "parallel"))]
    let _ = oracle_sweep(&d, &lat, &z, 2).unwrap();
    group.finish();
}

criterion_group!(benches, bench_midpoint_grid, bench_oracle_sweep);
criterion_main!(benches);
