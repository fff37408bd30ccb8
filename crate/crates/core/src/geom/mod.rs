//! Polyhedral geometry in H- and V-representation with exact conversion.

mod cone;
mod dd;
mod polyhedron;

pub use cone::Cone;
pub use polyhedron::{remove_redundancy, Polyhedron};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::RVec;
use crate::num::Rational;

/// One halfspace `normal . z >= offset`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Ineq {
    #[serde(rename = "a")]
    pub normal: RVec,
    #[serde(rename = "b")]
    pub offset: Rational,
}

impl Ineq {
    pub fn new(normal: RVec, offset: Rational) -> Self {
        Ineq { normal, offset }
    }

    pub fn eval(&self, z: &RVec) -> Rational {
        &self.normal.dot(z) - &self.offset
    }

    pub fn holds(&self, z: &RVec) -> bool {
        !self.eval(z).is_negative()
    }

    /// Scale so the first nonzero coefficient of the normal has absolute
    /// value one. Positive factor, so the halfspace is unchanged.
    pub fn normalized(&self) -> Ineq {
        match self.normal.0.iter().find(|x| !x.is_zero()) {
            None => self.clone(),
            Some(lead) => {
                let f = lead.abs().recip();
                Ineq {
                    normal: self.normal.scale(&f),
                    offset: &self.offset * &f,
                }
            }
        }
    }
}

/// Halfspace description `{ z | normal_i . z >= offset_i }`.
/// An empty list means all of R^q.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HRep {
    #[serde(skip)]
    pub dim: usize,
    pub ineqs: Vec<Ineq>,
}

impl HRep {
    pub fn all_of(dim: usize) -> Self {
        HRep { dim, ineqs: vec![] }
    }

    pub fn new(dim: usize, ineqs: Vec<Ineq>) -> Result<Self, Error> {
        for iq in &ineqs {
            iq.normal.check_dim(dim)?;
        }
        Ok(HRep { dim, ineqs })
    }

    /// Normalize rows, drop trivial `0 >= b` rows with `b <= 0`,
    /// deduplicate and sort. Rows `0 >= b` with `b > 0` are kept; they
    /// mark an empty set and are resolved by conversion.
    pub fn canonicalized(&self) -> HRep {
        let mut rows: Vec<Ineq> = self
            .ineqs
            .iter()
            .map(Ineq::normalized)
            .filter(|iq| !(iq.normal.is_zero() && !iq.offset.is_positive()))
            .collect();
        rows.sort();
        rows.dedup();
        HRep {
            dim: self.dim,
            ineqs: rows,
        }
    }

    pub fn contains(&self, z: &RVec) -> bool {
        self.ineqs.iter().all(|iq| iq.holds(z))
    }

    /// Membership of a recession direction.
    pub fn contains_dir(&self, d: &RVec) -> bool {
        self.ineqs.iter().all(|iq| !iq.normal.dot(d).is_negative())
    }

    pub fn concat(&self, other: &HRep) -> Result<HRep, Error> {
        if self.dim != other.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut ineqs = self.ineqs.clone();
        ineqs.extend(other.ineqs.iter().cloned());
        Ok(HRep {
            dim: self.dim,
            ineqs,
        })
    }
}

/// Generator description `conv(points) + cone(directions)`.
/// Empty `points` means the empty set.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct VRep {
    #[serde(skip)]
    pub dim: usize,
    pub points: Vec<RVec>,
    #[serde(rename = "dirs")]
    pub directions: Vec<RVec>,
}

impl VRep {
    pub fn empty(dim: usize) -> Self {
        VRep {
            dim,
            points: vec![],
            directions: vec![],
        }
    }

    pub fn new(dim: usize, points: Vec<RVec>, directions: Vec<RVec>) -> Result<Self, Error> {
        for p in &points {
            p.check_dim(dim)?;
        }
        for d in &directions {
            d.check_dim(dim)?;
            if d.is_zero() {
                return Err(Error::InvalidProblem("zero direction in VRep".into()));
            }
        }
        Ok(VRep {
            dim,
            points,
            directions,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn canonicalized(&self) -> VRep {
        let mut points = self.points.clone();
        points.sort();
        points.dedup();
        let mut directions: Vec<RVec> = self
            .directions
            .iter()
            .map(RVec::normalize_leading)
            .collect();
        directions.sort();
        directions.dedup();
        VRep {
            dim: self.dim,
            points,
            directions,
        }
    }
}

/// Convert a halfspace description to a minimal generator description.
/// Works through the homogenization cone `{(z,t) | t >= 0, a.z >= bt}`.
pub fn h_to_v(h: &HRep) -> VRep {
    let q = h.dim;
    let mut rows: Vec<RVec> = Vec::with_capacity(h.ineqs.len() + 1);
    let mut t_row = RVec::zeros(q + 1);
    t_row[q] = Rational::one();
    rows.push(t_row);
    let mut ineq_rows: Vec<RVec> = h
        .ineqs
        .iter()
        .map(|iq| {
            let mut r = iq.normal.0.clone();
            r.push(-&iq.offset);
            RVec(r).normalize_leading()
        })
        .collect();
    ineq_rows.sort();
    ineq_rows.dedup();
    rows.extend(ineq_rows);

    let gens = dd::cone_generators(q + 1, &rows);

    let mut points = Vec::new();
    let mut directions = Vec::new();
    for r in &gens.rays {
        let t = &r[q];
        if t.is_positive() {
            let inv = t.recip();
            points.push(RVec(r.0[..q].iter().map(|x| x * &inv).collect()));
        } else {
            debug_assert!(t.is_zero());
            directions.push(RVec(r.0[..q].to_vec()));
        }
    }
    if points.is_empty() {
        return VRep::empty(q);
    }
    for v in &gens.lineality {
        debug_assert!(v[q].is_zero());
        let d = RVec(v.0[..q].to_vec());
        directions.push(-&d);
        directions.push(d);
    }
    VRep::new(q, points, directions).unwrap().canonicalized()
}

/// Convert a generator description to a minimal halfspace description.
/// Returns `None` for the empty set. Lower-dimensional sets come back
/// with equality-carrying inequality pairs.
pub fn v_to_h(v: &VRep) -> Option<HRep> {
    if v.is_empty() {
        return None;
    }
    let q = v.dim;
    let mut rows: Vec<RVec> = Vec::new();
    for p in &v.points {
        let mut r = p.0.clone();
        r.push(Rational::one());
        rows.push(RVec(r).normalize_leading());
    }
    for d in &v.directions {
        let mut r = d.0.clone();
        r.push(Rational::zero());
        rows.push(RVec(r).normalize_leading());
    }
    rows.sort();
    rows.dedup();

    let gens = dd::cone_generators(q + 1, &rows);

    let mut ineqs = Vec::new();
    let mut push_ineq = |g: &RVec| {
        let a = RVec(g.0[..q].to_vec());
        if a.is_zero() {
            return;
        }
        ineqs.push(Ineq::new(a, -&g[q]).normalized());
    };
    for r in &gens.rays {
        push_ineq(r);
    }
    for l in &gens.lineality {
        push_ineq(l);
        push_ineq(&-l);
    }
    ineqs.sort();
    ineqs.dedup();
    Some(HRep { dim: q, ineqs })
}

/// Exact membership in a generator description, decided by an LP over
/// the combination weights (independent of conversion): the point must
/// be a convex combination of the points plus a conic combination of
/// the directions.
pub fn vrep_contains(v: &VRep, point: &RVec) -> Result<bool, Error> {
    point.check_dim(v.dim)?;
    if v.is_empty() {
        return Ok(false);
    }
    let np = v.points.len();
    let nd = v.directions.len();
    let nvars = np + nd;
    let mut rows = Vec::new();
    // coordinate equalities sum_j l_j p_j + sum_k m_k d_k = point
    for coord in 0..v.dim {
        let mut row = Vec::with_capacity(nvars);
        for p in &v.points {
            row.push(p[coord].clone());
        }
        for d in &v.directions {
            row.push(d[coord].clone());
        }
        let row = RVec(row);
        rows.push(Ineq::new(row.clone(), point[coord].clone()));
        rows.push(Ineq::new(-&row, -&point[coord]));
    }
    // convexity: sum l_j = 1
    let mut conv = vec![Rational::one(); np];
    conv.extend(std::iter::repeat_n(Rational::zero(), nd));
    let conv = RVec(conv);
    rows.push(Ineq::new(conv.clone(), Rational::one()));
    rows.push(Ineq::new(-&conv, Rational::from_int(-1)));
    // nonnegativity
    for i in 0..nvars {
        let mut row = RVec::zeros(nvars);
        row[i] = Rational::one();
        rows.push(Ineq::new(row, Rational::zero()));
    }
    let h = HRep::new(nvars, rows)?;
    let out = crate::lp::solve_lp(&crate::lp::LpProblem::minimize(RVec::zeros(nvars), h));
    Ok(!out.is_infeasible())
}
