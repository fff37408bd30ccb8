//! Shared generators and brute-force oracles for the test suites.

#![allow(dead_code)]

use std::sync::Arc;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use latticeopt_core::geom::{Cone, Polyhedron, VRep};
use latticeopt_core::lattice::{OrderCone, UpperSet};
use latticeopt_core::linalg::{solve_square, RMat, RVec};
use latticeopt_core::num::Rational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(rng: &mut ChaCha8Rng) -> Rational {
    let p = rng.gen_range(-6i64..=6);
    let q = rng.gen_range(1i64..=3);
    Rational::new(p, q)
}

pub fn rat_in(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    let p = rng.gen_range(lo..=hi);
    let q = rng.gen_range(1i64..=3);
    Rational::new(p, q)
}

pub fn rvec(rng: &mut ChaCha8Rng, dim: usize) -> RVec {
    RVec((0..dim).map(|_| rat(rng)).collect())
}

/// A random ordering cone in R^q: the orthant, a perturbed pointed cone,
/// or (sometimes) a halfspace. Never all of R^q.
pub fn random_order_cone(rng: &mut ChaCha8Rng, q: usize) -> Arc<OrderCone> {
    loop {
        let variant = rng.gen_range(0u8..4);
        let cone = match variant {
            0 => Cone::orthant(q),
            1 => {
                // orthant generators with one extra mild direction
                let mut gens: Vec<RVec> = (0..q)
                    .map(|i| {
                        let mut v = RVec::zeros(q);
                        v[i] = Rational::one();
                        v
                    })
                    .collect();
                let mut extra = RVec::zeros(q);
                let i = rng.gen_range(0..q);
                let j = rng.gen_range(0..q);
                extra[i] = Rational::from_int(2);
                extra[j] = &extra[j] + &Rational::from_int(-1);
                if !extra.is_zero() {
                    gens.push(extra);
                }
                Cone::from_generators(q, gens).unwrap()
            }
            2 => {
                // pointed subcone of the orthant
                let mut gens: Vec<RVec> = Vec::new();
                for i in 0..q {
                    let mut v = RVec::zeros(q);
                    v[i] = Rational::from_int(rng.gen_range(1i64..=3));
                    for k in 0..q {
                        if k != i {
                            v[k] = Rational::new(rng.gen_range(0i64..=1), 1);
                        }
                    }
                    gens.push(v);
                }
                Cone::from_generators(q, gens).unwrap()
            }
            _ => {
                // halfspace: total order case
                let mut n = RVec::zeros(q);
                for item in n.0.iter_mut() {
                    *item = Rational::from_int(rng.gen_range(0i64..=2));
                }
                if n.is_zero() {
                    n[0] = Rational::one();
                }
                Cone::from_inequalities(q, vec![n]).unwrap()
            }
        };
        if !cone.is_whole_space() {
            return Arc::new(OrderCone::new(cone).unwrap());
        }
    }
}

/// A random pointed full-dimensional ordering cone (for LVO instances).
pub fn random_pointed_cone(rng: &mut ChaCha8Rng, q: usize) -> Arc<OrderCone> {
    loop {
        let variant = rng.gen_range(0u8..3);
        let cone = match variant {
            0 => Cone::orthant(q),
            _ => {
                let mut gens: Vec<RVec> = Vec::new();
                for i in 0..q {
                    let mut v = RVec::zeros(q);
                    v[i] = Rational::from_int(3);
                    for k in 0..q {
                        if k != i {
                            v[k] = Rational::from_int(rng.gen_range(-1i64..=1));
                        }
                    }
                    gens.push(v);
                }
                match Cone::from_generators(q, gens) {
                    Ok(c) => c,
                    Err(_) => continue,
                }
            }
        };
        if cone.is_pointed() && cone.is_full_dim() && !cone.is_whole_space() {
            return Arc::new(OrderCone::new(cone).unwrap());
        }
    }
}

/// Random proper upper set: the hull of a few points over the cone.
pub fn random_upper_set(rng: &mut ChaCha8Rng, cone: &Arc<OrderCone>) -> UpperSet {
    let q = cone.dim();
    let npts = rng.gen_range(1usize..=3);
    let points: Vec<RVec> = (0..npts).map(|_| rvec(rng, q)).collect();
    let dirs = cone.cone().generators().to_vec();
    let v = VRep::new(q, points, dirs).unwrap();
    UpperSet::from_polyhedron(cone.clone(), Polyhedron::from_vrep(&v)).unwrap()
}

/// Random polytope in R^n given as `conv(points)`, kept away from
/// degeneracy by construction.
pub fn random_polytope(rng: &mut ChaCha8Rng, n: usize) -> Polyhedron {
    let npts = rng.gen_range(2usize..=n + 2);
    let points: Vec<RVec> = (0..npts).map(|_| rvec(rng, n)).collect();
    Polyhedron::from_vrep(&VRep::new(n, points, vec![]).unwrap())
}

/// Random proper closed convex set-valued function with polyhedral
/// graph: rows carry a `C^+` combination in the z-block, so every slice
/// is an upper set and no slice is all of R^q.
pub fn random_proper_function(
    r: &mut ChaCha8Rng,
    n: usize,
    q: usize,
    cone: &Arc<OrderCone>,
) -> latticeopt_core::scalar::PolySetFunction {
    use latticeopt_core::geom::{HRep, Ineq};
    use latticeopt_core::scalar::PolySetFunction;
    loop {
        let nrows = r.gen_range(1usize..=4);
        let mut rows = Vec::new();
        let mut has_z = false;
        for _ in 0..nrows {
            let gx = rvec(r, n);
            let gens = cone.dual_generators();
            let mut gz = RVec::zeros(q);
            for g in gens {
                if r.gen_bool(0.6) {
                    gz = &gz + &g.scale(&Rational::from_int(r.gen_range(0i64..=2)));
                }
            }
            if !gz.is_zero() {
                has_z = true;
            }
            rows.push(Ineq::new(gx.concat(&gz), rat(r)));
        }
        if !has_z {
            continue;
        }
        let h = HRep::new(n + q, rows).unwrap();
        let Ok(f) = PolySetFunction::from_graph_hrep(n, q, cone.clone(), &h) else {
            continue;
        };
        if f.graph().is_empty() {
            continue;
        }
        return f;
    }
}

/// Brute-force vertex enumeration for `{ x | A x >= b }`: solve every
/// n-subset of rows and keep the feasible solutions. Independent of the
/// double-description path.
pub fn brute_force_vertices(a_mat: &RMat, b: &RVec) -> Vec<RVec> {
    let m = a_mat.nrows();
    let n = a_mat.ncols();
    let mut vertices: Vec<RVec> = Vec::new();
    let mut subset: Vec<usize> = (0..n).collect();
    if m < n {
        return vertices;
    }
    loop {
        let rows: Vec<RVec> = subset.iter().map(|&i| a_mat.row(i).clone()).collect();
        let rhs = RVec(subset.iter().map(|&i| b[i].clone()).collect());
        if let Some(x) = solve_square(&RMat::from_rows(rows).unwrap(), &rhs) {
            let feasible = (0..m).all(|i| !(&a_mat.row(i).dot(&x) - &b[i]).is_negative());
            if feasible && !vertices.contains(&x) {
                vertices.push(x);
            }
        }
        // next n-combination of 0..m
        let mut i = n;
        loop {
            if i == 0 {
                vertices.sort();
                return vertices;
            }
            i -= 1;
            if subset[i] != i + m - n {
                subset[i] += 1;
                for k in i + 1..n {
                    subset[k] = subset[k - 1] + 1;
                }
                break;
            }
        }
    }
}
