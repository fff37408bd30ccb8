//! Polyhedral convex cones with cached dual description.

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{HRep, Ineq, Polyhedron, VRep};
use crate::error::Error;
use crate::linalg::RVec;
use crate::num::Rational;

/// A polyhedral convex cone containing the origin. Carries minimal
/// generators and the matching halfspace form; pointedness and
/// full-dimensionality are computed, not assumed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cone {
    dim: usize,
    poly: Polyhedron,
}

impl Cone {
    pub fn from_generators(dim: usize, gens: Vec<RVec>) -> Result<Self, Error> {
        let gens: Vec<RVec> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let v = VRep::new(dim, vec![RVec::zeros(dim)], gens)?;
        Ok(Cone {
            dim,
            poly: Polyhedron::from_vrep(&v),
        })
    }

    /// Cone `{ z | normal . z >= 0 }` for each normal.
    pub fn from_inequalities(dim: usize, normals: Vec<RVec>) -> Result<Self, Error> {
        let ineqs = normals
            .into_iter()
            .map(|n| Ineq::new(n, Rational::zero()))
            .collect();
        let h = HRep::new(dim, ineqs)?;
        let poly = Polyhedron::from_hrep(&h);
        debug_assert!(!poly.is_empty());
        Ok(Cone { dim, poly })
    }

    pub fn whole_space(dim: usize) -> Self {
        Cone {
            dim,
            poly: Polyhedron::whole_space(dim),
        }
    }

    pub fn orthant(dim: usize) -> Self {
        let normals = (0..dim)
            .map(|i| {
                let mut v = RVec::zeros(dim);
                v[i] = Rational::one();
                v
            })
            .collect();
        Cone::from_inequalities(dim, normals).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_polyhedron(&self) -> &Polyhedron {
        &self.poly
    }

    /// Minimal generators (extreme rays; lineality shows up as +-pairs).
    pub fn generators(&self) -> &[RVec] {
        self.poly.recession_dirs()
    }

    /// Facet normals: `C = { z | n . z >= 0 }`.
    pub fn facet_normals(&self) -> Vec<RVec> {
        self.poly
            .facets()
            .iter()
            .map(|iq| {
                debug_assert!(iq.offset.is_zero());
                iq.normal.clone()
            })
            .collect()
    }

    pub fn contains(&self, z: &RVec) -> Result<bool, Error> {
        self.poly.contains(z)
    }

    pub fn is_trivial(&self) -> bool {
        self.generators().is_empty()
    }

    pub fn is_whole_space(&self) -> bool {
        self.poly.is_whole_space()
    }

    pub fn is_pointed(&self) -> bool {
        self.poly.is_pointed()
    }

    /// Nonempty interior, i.e. the cone is full-dimensional. True exactly
    /// when the minimal halfspace form carries no equality pair.
    pub fn is_full_dim(&self) -> bool {
        let facets = self.poly.facets();
        !facets.iter().any(|iq| {
            let flipped = Ineq::new(-&iq.normal, -&iq.offset).normalized();
            facets.contains(&flipped)
        })
    }

    /// A rational interior point (strictly inside every facet), found by
    /// slack maximization. `None` when the interior is empty.
    pub fn interior_point(&self) -> Option<RVec> {
        if !self.is_full_dim() {
            return None;
        }
        if self.is_whole_space() {
            let mut v = RVec::zeros(self.dim);
            if self.dim > 0 {
                v[0] = Rational::one();
            }
            return Some(v);
        }
        // maximize s subject to n_i . z - s >= 0, s <= 1
        let normals = self.facet_normals();
        let mut rows = Vec::new();
        for n in &normals {
            let mut r = n.0.clone();
            r.push(Rational::from_int(-1));
            rows.push(Ineq::new(RVec(r), Rational::zero()));
        }
        let mut cap = RVec::zeros(self.dim + 1);
        cap[self.dim] = Rational::from_int(-1);
        rows.push(Ineq::new(cap, Rational::from_int(-1)));
        let h = HRep::new(self.dim + 1, rows).unwrap();
        let mut obj = RVec::zeros(self.dim + 1);
        obj[self.dim] = Rational::one();
        let out = crate::lp::solve_lp(&crate::lp::LpProblem::maximize(obj, h));
        match out {
            crate::lp::LpOutcome::Optimal {
                objective, point, ..
            } => {
                if objective.is_positive() {
                    Some(RVec(point.0[..self.dim].to_vec()))
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Dual cone `C^+ = { w | w . g >= 0 for every generator g }`.
    pub fn dual(&self) -> Cone {
        if self.is_trivial() {
            return Cone::whole_space(self.dim);
        }
        Cone::from_inequalities(self.dim, self.generators().to_vec()).unwrap()
    }
}

#[derive(Serialize, Deserialize)]
struct ConeJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    gens: Option<Vec<RVec>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ineqs: Option<Vec<RVec>>,
}

impl Serialize for Cone {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ConeJson {
            gens: Some(self.generators().to_vec()),
            ineqs: None,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cone {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = ConeJson::deserialize(deserializer)?;
        match (raw.gens, raw.ineqs) {
            (Some(gens), None) => {
                let dim = gens
                    .first()
                    .map(|g| g.dim())
                    .ok_or_else(|| D::Error::custom("cone needs generators or inequalities"))?;
                Cone::from_generators(dim, gens).map_err(|e| D::Error::custom(e.to_string()))
            }
            (None, Some(normals)) => {
                let dim = normals
                    .first()
                    .map(|g| g.dim())
                    .ok_or_else(|| D::Error::custom("cone needs generators or inequalities"))?;
                Cone::from_inequalities(dim, normals)
                    .map_err(|e| D::Error::custom(e.to_string()))
            }
            _ => Err(D::Error::custom(
                "cone JSON must carry exactly one of \"gens\" or \"ineqs\"",
            )),
        }
    }
}
