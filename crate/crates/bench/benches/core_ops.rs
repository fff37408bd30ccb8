use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use latticeopt_bench::{bench_lvo_instance, ring_hrep};
use latticeopt_core::geom::{h_to_v, v_to_h, Polyhedron};
use latticeopt_core::lattice::{OrderCone, SetFamily, UpperSet};
use latticeopt_core::linalg::RVec;
use latticeopt_core::lp::{solve_lp, LpProblem};
use latticeopt_core::lvo::solve_primal_benson;
use latticeopt_core::num::Rational;

fn conversions(c: &mut Criterion) {
    let h = ring_hrep(10);
    c.bench_function("h_to_v ring10", |b| b.iter(|| h_to_v(black_box(&h))));
    let v = h_to_v(&h);
    c.bench_function("v_to_h ring10", |b| b.iter(|| v_to_h(black_box(&v))));
}

fn lp(c: &mut Criterion) {
    let h = ring_hrep(12);
    let obj = RVec::from_ints(&[1, 1, 1]);
    c.bench_function("lp ring12", |b| {
        b.iter(|| solve_lp(black_box(&LpProblem::minimize(obj.clone(), h.clone()))))
    });
}

fn lattice(c: &mut Criterion) {
    let cone = Arc::new(OrderCone::orthant(3));
    let point = |xs: &[i64]| UpperSet::point(cone.clone(), &RVec::from_ints(xs)).unwrap();
    let members = vec![
        point(&[1, 0, 0]),
        point(&[0, 1, 0]),
        point(&[0, 0, 1]),
        point(&[1, 1, -1]),
    ];
    let fam = SetFamily::new(cone.clone(), members.clone()).unwrap();
    c.bench_function("lattice infimum 4pt", |b| {
        b.iter(|| black_box(&fam).infimum())
    });
    let a = fam.infimum();
    let bset = point(&[1, 1, 1]);
    c.bench_function("lattice residual", |b| {
        b.iter(|| black_box(&a).residual(black_box(&bset)).unwrap())
    });
}

fn lvo(c: &mut Criterion) {
    let p = bench_lvo_instance();
    let dir = p.default_c();
    c.bench_function("benson q3 exact", |b| {
        b.iter(|| solve_primal_benson(black_box(&p), &Rational::zero(), &dir).unwrap())
    });
}

fn polyhedron_roundtrip(c: &mut Criterion) {
    let h = ring_hrep(8);
    c.bench_function("canonical polyhedron ring8", |b| {
        b.iter(|| Polyhedron::from_hrep(black_box(&h)))
    });
}

criterion_group!(benches, conversions, lp, lattice, lvo, polyhedron_roundtrip);
criterion_main!(benches);
