//! Shared fixtures for the benchmark targets.

use std::sync::Arc;

use latticeopt_core::geom::{HRep, Ineq};
use latticeopt_core::lattice::OrderCone;
use latticeopt_core::linalg::{RMat, RVec};
use latticeopt_core::lvo::LvoProblem;
use latticeopt_core::num::Rational;

/// Cyclic-style halfspace description in R^3 with `n` facets.
pub fn ring_hrep(n: usize) -> HRep {
    let mut rows = Vec::with_capacity(n + 1);
    for k in 0..n {
        // normals wander around the upward cone deterministically
        let a = ((k * 7 + 3) % 11) as i64 - 5;
        let b = ((k * 5 + 2) % 9) as i64 - 4;
        rows.push(Ineq::new(
            RVec::from_ints(&[a, b, 6]),
            Rational::from_int(-((k % 4) as i64)),
        ));
    }
    rows.push(Ineq::new(
        RVec::from_ints(&[0, 0, 1]),
        Rational::from_int(-10),
    ));
    HRep::new(3, rows).unwrap()
}

/// A bounded three-objective instance exercising the outer approximation.
pub fn bench_lvo_instance() -> LvoProblem {
    let p = RMat::from_int_rows(&[&[1, 0, 0, 1], &[0, 1, 0, -1], &[0, 0, 1, 1]]);
    let a = RMat::from_int_rows(&[
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
        &[0, 0, 1, 0],
        &[0, 0, 0, 1],
        &[-1, -1, -1, -1],
        &[1, 2, 0, -1],
    ]);
    let b = RVec::from_ints(&[0, 0, 0, 0, -4, -2]);
    LvoProblem::new(p, a, b, Arc::new(OrderCone::orthant(3))).unwrap()
}
