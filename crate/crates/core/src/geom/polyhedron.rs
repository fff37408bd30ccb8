//! Canonical polyhedron carrying both representations.

use serde::{Deserialize, Serialize};

use super::{h_to_v, v_to_h, HRep, Ineq, VRep};
use crate::error::Error;
use crate::linalg::RVec;

/// A convex polyhedral set in R^q. The empty set is a distinguished
/// tagged state; nonempty sets carry minimal canonical H- and V-forms,
/// so syntactic equality of canonical forms is semantic equality.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Polyhedron {
    pub dim: usize,
    repr: Repr,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
enum Repr {
    Empty,
    NonEmpty { hrep: HRep, vrep: VRep },
}

impl Polyhedron {
    pub fn empty(dim: usize) -> Self {
        Polyhedron {
            dim,
            repr: Repr::Empty,
        }
    }

    pub fn whole_space(dim: usize) -> Self {
        Self::from_hrep(&HRep::all_of(dim))
    }

    pub fn from_hrep(h: &HRep) -> Self {
        let vrep = h_to_v(h);
        if vrep.is_empty() {
            return Polyhedron::empty(h.dim);
        }
        let hrep = v_to_h(&vrep).expect("nonempty").canonicalized();
        // re-derive the generators from the minimal face structure
        let vrep = h_to_v(&hrep);
        let mut dim = h.dim;
        if dim == 0 {
            dim = hrep.dim;
        }
        Polyhedron {
            dim,
            repr: Repr::NonEmpty { hrep, vrep },
        }
    }

    pub fn from_vrep(v: &VRep) -> Self {
        match v_to_h(v) {
            None => Polyhedron::empty(v.dim),
            Some(h) => {
                let hrep = h.canonicalized();
                let vrep = h_to_v(&hrep);
                debug_assert!(!vrep.is_empty());
                Polyhedron {
                    dim: v.dim,
                    repr: Repr::NonEmpty { hrep, vrep },
                }
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.repr, Repr::Empty)
    }

    pub fn is_whole_space(&self) -> bool {
        match &self.repr {
            Repr::Empty => false,
            Repr::NonEmpty { hrep, .. } => hrep.ineqs.is_empty(),
        }
    }

    /// Minimal canonical halfspace form; `None` for the empty set.
    pub fn hrep(&self) -> Option<&HRep> {
        match &self.repr {
            Repr::Empty => None,
            Repr::NonEmpty { hrep, .. } => Some(hrep),
        }
    }

    /// Minimal canonical generator form; `None` for the empty set.
    pub fn vrep(&self) -> Option<&VRep> {
        match &self.repr {
            Repr::Empty => None,
            Repr::NonEmpty { vrep, .. } => Some(vrep),
        }
    }

    pub fn contains(&self, z: &RVec) -> Result<bool, Error> {
        z.check_dim(self.dim)?;
        Ok(match &self.repr {
            Repr::Empty => false,
            Repr::NonEmpty { hrep, .. } => hrep.contains(z),
        })
    }

    pub fn contains_dir(&self, d: &RVec) -> Result<bool, Error> {
        d.check_dim(self.dim)?;
        Ok(match &self.repr {
            Repr::Empty => false,
            Repr::NonEmpty { hrep, .. } => hrep.contains_dir(d),
        })
    }

    /// Exact set inclusion `self ⊆ other`, decided on generators.
    pub fn subset_of(&self, other: &Polyhedron) -> Result<bool, Error> {
        if self.dim != other.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                got: other.dim,
            });
        }
        match (&self.repr, &other.repr) {
            (Repr::Empty, _) => Ok(true),
            (_, Repr::Empty) => Ok(false),
            (Repr::NonEmpty { vrep, .. }, Repr::NonEmpty { hrep, .. }) => {
                Ok(vrep.points.iter().all(|p| hrep.contains(p))
                    && vrep.directions.iter().all(|d| hrep.contains_dir(d)))
            }
        }
    }

    pub fn same_set(&self, other: &Polyhedron) -> Result<bool, Error> {
        // canonical forms make syntactic equality complete; keep the
        // semantic fallback as a cross-check
        let syntactic = self == other;
        debug_assert_eq!(
            syntactic,
            self.subset_of(other)? && other.subset_of(self)?,
            "canonical form mismatch"
        );
        Ok(syntactic)
    }

    /// Minkowski sum.
    pub fn sum(&self, other: &Polyhedron) -> Result<Polyhedron, Error> {
        if self.dim != other.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                got: other.dim,
            });
        }
        match (self.vrep(), other.vrep()) {
            (Some(a), Some(b)) => {
                let mut points = Vec::new();
                for p in &a.points {
                    for r in &b.points {
                        points.push(p + r);
                    }
                }
                let mut dirs = a.directions.clone();
                dirs.extend(b.directions.iter().cloned());
                Ok(Polyhedron::from_vrep(&VRep::new(self.dim, points, dirs)?))
            }
            _ => Ok(Polyhedron::empty(self.dim)),
        }
    }

    pub fn intersect(&self, other: &Polyhedron) -> Result<Polyhedron, Error> {
        match (self.hrep(), other.hrep()) {
            (Some(a), Some(b)) => Ok(Polyhedron::from_hrep(&a.concat(b)?)),
            _ => Ok(Polyhedron::empty(self.dim)),
        }
    }

    /// Translate by `z`.
    pub fn translate(&self, z: &RVec) -> Result<Polyhedron, Error> {
        z.check_dim(self.dim)?;
        match self.vrep() {
            None => Ok(self.clone()),
            Some(v) => {
                let points = v.points.iter().map(|p| p + z).collect();
                Ok(Polyhedron::from_vrep(&VRep::new(
                    self.dim,
                    points,
                    v.directions.clone(),
                )?))
            }
        }
    }

    /// Scale by `t > 0`.
    pub fn scale(&self, t: &crate::num::Rational) -> Polyhedron {
        assert!(t.is_positive(), "scale expects t > 0");
        match self.vrep() {
            None => self.clone(),
            Some(v) => {
                let points = v.points.iter().map(|p| p.scale(t)).collect();
                Polyhedron::from_vrep(
                    &VRep::new(self.dim, points, v.directions.clone()).unwrap(),
                )
            }
        }
    }

    pub fn vertices(&self) -> &[RVec] {
        match &self.repr {
            Repr::Empty => &[],
            Repr::NonEmpty { vrep, .. } => &vrep.points,
        }
    }

    pub fn recession_dirs(&self) -> &[RVec] {
        match &self.repr {
            Repr::Empty => &[],
            Repr::NonEmpty { vrep, .. } => &vrep.directions,
        }
    }

    pub fn facets(&self) -> &[Ineq] {
        match &self.repr {
            Repr::Empty => &[],
            Repr::NonEmpty { hrep, .. } => &hrep.ineqs,
        }
    }

    /// True when the polyhedron has no lineality, i.e. its generator
    /// points really are vertices (0-faces).
    pub fn is_pointed(&self) -> bool {
        match self.vrep() {
            None => true,
            Some(v) => !v
                .directions
                .iter()
                .any(|d| v.directions.contains(&-d)),
        }
    }
}

/// Minimal equivalent halfspace description. Output inequalities are
/// facet-defining (or equality-carrying pairs for lower-dimensional
/// sets); emptiness is reported separately, never as contradictory rows.
pub fn remove_redundancy(h: &HRep) -> Option<HRep> {
    let p = Polyhedron::from_hrep(h);
    let out = p.hrep().cloned();
    #[cfg(debug_assertions)]
    if let Some(out) = &out {
        // semantic equality with the input, certified by LP
        for iq in &out.ineqs {
            let res = crate::lp::solve_lp(&crate::lp::LpProblem::minimize(
                iq.normal.clone(),
                h.clone(),
            ));
            if let crate::lp::LpOutcome::Optimal { objective, .. } = res {
                debug_assert!(objective >= iq.offset);
            }
        }
        for iq in &h.ineqs {
            let res = crate::lp::solve_lp(&crate::lp::LpProblem::minimize(
                iq.normal.clone(),
                out.clone(),
            ));
            if let crate::lp::LpOutcome::Optimal { objective, .. } = res {
                debug_assert!(objective >= iq.offset);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::Rational;

    fn vv(xs: &[i64]) -> RVec {
        RVec::from_ints(xs)
    }

    fn hrep(dim: usize, rows: &[(&[i64], i64)]) -> HRep {
        HRep::new(
            dim,
            rows.iter()
                .map(|(a, b)| Ineq::new(vv(a), Rational::from_int(*b)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn dominated_halfspace_removed() {
        let h = hrep(1, &[(&[1], 0), (&[1], -1)]);
        let out = remove_redundancy(&h).unwrap();
        assert_eq!(out.ineqs, vec![Ineq::new(vv(&[1]), Rational::zero())]);
    }

    #[test]
    fn implied_inequality_removed() {
        let h = hrep(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[1, 1], 0)]);
        let out = remove_redundancy(&h).unwrap();
        assert_eq!(
            out.ineqs,
            vec![
                Ineq::new(vv(&[0, 1]), Rational::zero()),
                Ineq::new(vv(&[1, 0]), Rational::zero()),
            ]
        );
    }

    #[test]
    fn equality_pair_kept() {
        let h = hrep(2, &[(&[1, 0], 0), (&[-1, 0], 0), (&[0, 1], 0)]);
        let out = remove_redundancy(&h).unwrap();
        assert_eq!(out.ineqs.len(), 3);
        assert!(out.ineqs.contains(&Ineq::new(vv(&[-1, 0]), Rational::zero())));
        assert!(out.ineqs.contains(&Ineq::new(vv(&[1, 0]), Rational::zero())));
    }

    #[test]
    fn empty_is_tagged_not_contradictory() {
        let h = hrep(1, &[(&[1], 1), (&[-1], 0)]);
        assert!(remove_redundancy(&h).is_none());
        assert!(Polyhedron::from_hrep(&h).is_empty());
    }

    #[test]
    fn membership_examples() {
        let orthant = Polyhedron::from_hrep(&hrep(2, &[(&[1, 0], 0), (&[0, 1], 0)]));
        assert!(orthant.contains(&vv(&[1, 1])).unwrap());
        assert!(!orthant.contains(&vv(&[-1, 0])).unwrap());
        let hs = Polyhedron::from_hrep(&hrep(2, &[(&[1, 1], 1)]));
        let half = RVec(vec![Rational::new(1, 2), Rational::new(1, 2)]);
        assert!(hs.contains(&half).unwrap());
    }

    #[test]
    fn sum_translate_scale() {
        let orthant = Polyhedron::from_hrep(&hrep(2, &[(&[1, 0], 0), (&[0, 1], 0)]));
        let shifted = orthant.translate(&vv(&[1, 2])).unwrap();
        assert_eq!(shifted.vertices(), &[vv(&[1, 2])]);
        let sum = orthant.sum(&shifted).unwrap();
        assert_eq!(sum, shifted);
        let doubled = shifted.scale(&Rational::from_int(2));
        assert_eq!(doubled.vertices(), &[vv(&[2, 4])]);
    }
}
