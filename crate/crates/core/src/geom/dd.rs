//! Double description method for polyhedral cones.
//!
//! Maintains a lineality basis plus a list of extreme rays (modulo
//! lineality) while halfspaces `a.x >= 0` are inserted one at a time.
//! Rows are inserted in lexicographic order, which makes every
//! conversion deterministic.

use crate::linalg::RVec;
use crate::num::Rational;

/// Set of active (tight) row indices for a ray, as a bitset.
#[derive(Clone, PartialEq, Eq, Debug)]
struct ActiveSet {
    words: Vec<u64>,
}

impl ActiveSet {
    fn new(n_rows: usize) -> Self {
        ActiveSet {
            words: vec![0; n_rows.div_ceil(64)],
        }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn intersect(&self, other: &ActiveSet) -> ActiveSet {
        ActiveSet {
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn is_superset(&self, other: &ActiveSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == *b)
    }
}

#[derive(Clone, Debug)]
struct Ray {
    v: RVec,
    active: ActiveSet,
}

/// Generators of the cone `{ x | a.x >= 0 for all rows }`:
/// a lineality basis and the extreme rays modulo lineality.
pub struct ConeGenerators {
    pub lineality: Vec<RVec>,
    pub rays: Vec<RVec>,
}

/// Run the double description method on `rows` in the given order.
/// `dim` is the ambient dimension.
pub fn cone_generators(dim: usize, rows: &[RVec]) -> ConeGenerators {
    let n_rows = rows.len();
    let mut lineality: Vec<RVec> = (0..dim)
        .map(|i| {
            let mut v = RVec::zeros(dim);
            v[i] = Rational::one();
            v
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in rows.iter().enumerate() {
        debug_assert_eq!(a.dim(), dim);
        // Try to eliminate the constraint against the lineality space.
        let hit = lineality.iter().position(|v| !a.dot(v).is_zero());
        if let Some(idx) = hit {
            let mut v0 = lineality.swap_remove(idx);
            let av0 = a.dot(&v0);
            if av0.is_negative() {
                v0 = -&v0;
            }
            let av0 = a.dot(&v0);
            for w in lineality.iter_mut() {
                let f = &a.dot(w) / &av0;
                if !f.is_zero() {
                    *w = &*w - &v0.scale(&f);
                }
                debug_assert!(a.dot(w).is_zero());
            }
            for r in rays.iter_mut() {
                let f = &a.dot(&r.v) / &av0;
                if !f.is_zero() {
                    r.v = &r.v - &v0.scale(&f);
                    r.v = r.v.normalize_leading();
                }
                debug_assert!(a.dot(&r.v).is_zero());
                r.active.insert(k);
            }
            // v0 itself becomes a ray strictly inside the new halfspace;
            // it is tight for every previously processed row.
            let mut active = ActiveSet::new(n_rows);
            for (j, row) in rows.iter().enumerate().take(k) {
                debug_assert!(row.dot(&v0).is_zero());
                active.insert(j);
            }
            rays.push(Ray {
                v: v0.normalize_leading(),
                active,
            });
            continue;
        }

        // Classic DD step: split rays by the sign of a.r.
        let signs: Vec<i32> = rays.iter().map(|r| a.dot(&r.v).signum()).collect();
        if signs.iter().all(|&s| s >= 0) {
            for (r, &s) in rays.iter_mut().zip(signs.iter()) {
                if s == 0 {
                    r.active.insert(k);
                }
            }
            continue;
        }

        let mut next: Vec<Ray> = Vec::new();
        for (r, &s) in rays.iter().zip(signs.iter()) {
            if s > 0 {
                next.push(r.clone());
            } else if s == 0 {
                let mut r = r.clone();
                r.active.insert(k);
                next.push(r);
            }
        }
        for (i, ri) in rays.iter().enumerate() {
            if signs[i] <= 0 {
                continue;
            }
            for (j, rj) in rays.iter().enumerate() {
                if signs[j] >= 0 {
                    continue;
                }
                let common = ri.active.intersect(&rj.active);
                // combinatorial adjacency test
                let adjacent = !rays.iter().enumerate().any(|(l, rl)| {
                    l != i && l != j && rl.active.is_superset(&common)
                });
                if !adjacent {
                    continue;
                }
                let ai = a.dot(&ri.v);
                let aj = a.dot(&rj.v);
                // positive combination tight for row k
                let v = &rj.v.scale(&ai) - &ri.v.scale(&aj);
                let v = v.normalize_leading();
                debug_assert!(a.dot(&v).is_zero());
                let mut active = common;
                active.insert(k);
                next.push(Ray { v, active });
            }
        }
        rays = next;
    }

    ConeGenerators {
        lineality,
        rays: rays.into_iter().map(|r| r.v).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> RVec {
        RVec::from_ints(xs)
    }

    #[test]
    fn orthant_cone() {
        let gens = cone_generators(2, &[v(&[1, 0]), v(&[0, 1])]);
        assert!(gens.lineality.is_empty());
        let mut rays = gens.rays;
        rays.sort();
        assert_eq!(rays, vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn halfspace_keeps_lineality() {
        let gens = cone_generators(2, &[v(&[1, 0])]);
        assert_eq!(gens.lineality.len(), 1);
        assert_eq!(gens.rays.len(), 1);
        assert!(gens.lineality[0][0].is_zero());
    }

    #[test]
    fn trivial_cone_from_opposing_rows() {
        // x >= 0, -x >= 0, y >= 0, -y >= 0  ->  {0}
        let gens = cone_generators(
            2,
            &[v(&[1, 0]), v(&[-1, 0]), v(&[0, 1]), v(&[0, -1])],
        );
        assert!(gens.lineality.is_empty());
        assert!(gens.rays.is_empty());
    }

    #[test]
    fn ice_cream_slice() {
        // x + y >= 0, x - y >= 0 in R^2: cone spanned by (1,1) and (1,-1)
        let gens = cone_generators(2, &[v(&[1, 1]), v(&[1, -1])]);
        assert!(gens.lineality.is_empty());
        let mut rays = gens.rays;
        rays.sort();
        assert_eq!(rays.len(), 2);
        for r in &rays {
            assert!(!(&r[0] + &r[1]).is_negative());
            assert!(!(&r[0] - &r[1]).is_negative());
        }
    }
}
