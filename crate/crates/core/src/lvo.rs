//! Linear vector optimization with set-valued and geometric duality.
//!
//! Solves `min_C P x  s.t.  A x >= b` over a polyhedral ordering cone
//! with nonempty interior by outer approximation of the upper image
//! `UP = P[S] + C`: start from weighted-sum supports, repeatedly pick an
//! outer vertex, probe it against `UP` along an interior direction `c`,
//! and cut with the separating supporting halfspace obtained from the LP
//! dual. Every cut is a dual-feasible pair `(u, w)`, so the run yields a
//! finitely generated dual solution alongside the primal one.

use std::sync::Arc;

use crate::error::Error;
use crate::geom::{HRep, Ineq, Polyhedron, VRep};
use crate::lattice::{OrderCone, UpperSet};
use crate::linalg::{RMat, RVec};
use crate::lp::{solve_lp, LpOutcome, LpProblem};
use crate::num::Rational;

/// Problem data for `min_C P x  s.t.  A x >= b`.
#[derive(Clone, Debug)]
pub struct LvoProblem {
    pub p_mat: RMat,
    pub a_mat: RMat,
    pub b: RVec,
    pub cone: Arc<OrderCone>,
}

impl LvoProblem {
    pub fn new(p_mat: RMat, a_mat: RMat, b: RVec, cone: Arc<OrderCone>) -> Result<Self, Error> {
        let q = p_mat.nrows();
        let n = p_mat.ncols();
        if a_mat.ncols() != n {
            return Err(Error::Dimension {
                expected: n,
                got: a_mat.ncols(),
            });
        }
        b.check_dim(a_mat.nrows())?;
        if cone.dim() != q {
            return Err(Error::Dimension {
                expected: q,
                got: cone.dim(),
            });
        }
        if !cone.cone().is_full_dim() {
            return Err(Error::InvalidCone(
                "ordering cone needs nonempty interior".into(),
            ));
        }
        Ok(LvoProblem {
            p_mat,
            a_mat,
            b,
            cone,
        })
    }

    pub fn nvars(&self) -> usize {
        self.p_mat.ncols()
    }

    pub fn nobj(&self) -> usize {
        self.p_mat.nrows()
    }

    pub fn feasible_hrep(&self) -> HRep {
        let rows = self
            .a_mat
            .rows()
            .iter()
            .zip(self.b.0.iter())
            .map(|(a, bi)| Ineq::new(a.clone(), bi.clone()))
            .collect();
        HRep::new(self.nvars(), rows).expect("dims")
    }

    pub fn is_feasible_point(&self, x: &RVec) -> bool {
        self.feasible_hrep().contains(x)
    }

    /// A rational interior direction of `C`, used when the caller does
    /// not fix one. The last coordinate is kept nonzero so the same
    /// direction can normalize the geometric dual.
    pub fn default_c(&self) -> RVec {
        let q = self.nobj();
        let mut c = self
            .cone
            .cone()
            .interior_point()
            .expect("cone validated full-dimensional");
        if c[q - 1].is_zero() {
            // nudge along e_q while staying strictly inside every facet
            let mut delta: Option<Rational> = None;
            for w in self.cone.cone().facet_normals() {
                let wq = &w[q - 1];
                if wq.is_negative() {
                    let margin = w.dot(&c);
                    let step = &margin / &(-wq * Rational::from_int(2));
                    delta = Some(match delta {
                        None => step,
                        Some(d) => {
                            if step < d {
                                step
                            } else {
                                d
                            }
                        }
                    });
                }
            }
            c[q - 1] = delta.unwrap_or_else(Rational::one);
        }
        c
    }

    fn check_interior(&self, c: &RVec) -> Result<(), Error> {
        c.check_dim(self.nobj())?;
        for w in self.cone.cone().facet_normals() {
            if !w.dot(c).is_positive() {
                return Err(Error::InvalidProblem(
                    "c must lie in the interior of C".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Finitely generated primal solution together with its image.
#[derive(Clone, Debug)]
pub struct LvoSolution {
    /// Minimizers found; their images generate the infimum up to
    /// `D(eps) = C - eps c`.
    pub points: Vec<RVec>,
    /// `inf f[points]`: the generated inner approximation of the upper
    /// image; equals the upper image exactly when `eps = 0`.
    pub image: UpperSet,
    pub eps: Rational,
    pub c: RVec,
    /// Number of cutting iterations the outer approximation needed.
    pub iterations: usize,
}

/// Finitely generated dual solution: dual-feasible pairs whose
/// halfspaces intersect to the outer approximation.
#[derive(Clone, Debug)]
pub struct DualSolution {
    /// Pairs `(u, w)` with `A^T u = P^T w`, `u >= 0`, `w in C^+`,
    /// `c^T w = 1`, one per facet of the outer set.
    pub pairs: Vec<(RVec, RVec)>,
    /// Intersection of the pair halfspaces.
    pub outer: UpperSet,
    /// Every pair recorded during the run, in discovery order; useful
    /// for auditing weak duality iterate by iterate.
    pub history: Vec<(RVec, RVec)>,
}

/// Halfspace-valued dual objective: `{ z | u^T b <= w^T z }` when the
/// pair satisfies the dual feasibility direction conditions, and all of
/// R^q otherwise.
pub fn dual_objective(p: &LvoProblem, u: &RVec, w: &RVec) -> Result<UpperSet, Error> {
    u.check_dim(p.a_mat.nrows())?;
    w.check_dim(p.nobj())?;
    let feasible = !w.is_zero()
        && p.cone.in_dual(w)
        && u.0.iter().all(|ui| !ui.is_negative())
        && p.a_mat.tr_mul_vec(u) == p.p_mat.tr_mul_vec(w);
    if !feasible {
        return Ok(UpperSet::bottom(p.cone.clone()));
    }
    UpperSet::halfspace(p.cone.clone(), w, u.dot(&p.b))
}

/// Scale a dual pair so that `c^T w = 1`.
fn normalize_pair(u: &RVec, w: &RVec, c: &RVec) -> (RVec, RVec) {
    let cw = c.dot(w);
    debug_assert!(cw.is_positive());
    let f = cw.recip();
    (u.scale(&f), w.scale(&f))
}

/// One separation probe: the least `t` with `v + t c` in the upper
/// image, an attaining `x`, and the dual pair behind the bound.
struct Probe {
    t: Rational,
    x: RVec,
    u: RVec,
    w: RVec,
}

fn separation_probe(p: &LvoProblem, v: &RVec, c: &RVec) -> Probe {
    let n = p.nvars();
    let m = p.a_mat.nrows();
    let normals = p.cone.cone().facet_normals();
    let mut rows = Vec::with_capacity(m + normals.len());
    for (a, bi) in p.a_mat.rows().iter().zip(p.b.0.iter()) {
        let mut row = a.0.clone();
        row.push(Rational::zero());
        rows.push(Ineq::new(RVec(row), bi.clone()));
    }
    for w in &normals {
        // w . (v + t c - P x) >= 0
        let wp = p.p_mat.tr_mul_vec(w);
        let mut row: Vec<Rational> = wp.0.iter().map(|x| -x).collect();
        row.push(w.dot(c));
        rows.push(Ineq::new(RVec(row), -w.dot(v)));
    }
    let h = HRep::new(n + 1, rows).expect("dims");
    let mut obj = RVec::zeros(n + 1);
    obj[n] = Rational::one();
    match solve_lp(&LpProblem::minimize(obj, h)) {
        LpOutcome::Optimal {
            objective,
            point,
            dual,
        } => {
            let x = RVec(point.0[..n].to_vec());
            let u = RVec(dual.0[..m].to_vec());
            let lambda = &dual.0[m..];
            let mut w = RVec::zeros(p.nobj());
            for (wk, lk) in normals.iter().zip(lambda.iter()) {
                if !lk.is_zero() {
                    w = &w + &wk.scale(lk);
                }
            }
            debug_assert_eq!(p.a_mat.tr_mul_vec(&u), p.p_mat.tr_mul_vec(&w));
            debug_assert_eq!(c.dot(&w), Rational::one());
            debug_assert_eq!(&u.dot(&p.b) - &w.dot(v), objective);
            Probe {
                t: objective,
                x,
                u,
                w,
            }
        }
        other => panic!("separation LP must be solvable on bounded problems: {other:?}"),
    }
}

/// Refine a candidate into a minimizer: minimize a strictly positive
/// weighting over `{ x in S | P x <=_C P x0 }`.
fn refine_minimizer(p: &LvoProblem, x0: &RVec) -> RVec {
    let normals = p.cone.cone().facet_normals();
    let mut what = RVec::zeros(p.nobj());
    for w in p.cone.dual_generators() {
        what = &what + w;
    }
    if what.is_zero() {
        return x0.clone();
    }
    let px0 = p.p_mat.mul_vec(x0);
    let mut h = p.feasible_hrep();
    for w in &normals {
        // w . P x <= w . P x0
        let wp = p.p_mat.tr_mul_vec(w);
        h.ineqs.push(Ineq::new(-&wp, -w.dot(&px0)));
    }
    let obj = p.p_mat.tr_mul_vec(&what);
    match solve_lp(&LpProblem::minimize(obj, h)) {
        LpOutcome::Optimal { point, .. } => point,
        _ => x0.clone(),
    }
}

/// Outer-approximation solver. For `eps = 0` the outputs are exact
/// finitely generated primal and dual solutions; for `eps > 0` the
/// returned points form a `(D, eps)`-solution with `D(eps) = C - eps c`.
///
/// Cut selection does not depend on `eps` (the first vertex strictly
/// outside the upper image, in canonical order, is cut), so runs with
/// smaller tolerances are exact continuations of runs with larger ones;
/// only the stopping time moves.
pub fn solve_primal_benson(
    p: &LvoProblem,
    eps: &Rational,
    c: &RVec,
) -> Result<(LvoSolution, DualSolution), Error> {
    if eps.is_negative() {
        return Err(Error::InvalidProblem("eps must be nonnegative".into()));
    }
    p.check_interior(c)?;
    let feas = p.feasible_hrep();
    let zero_obj = RVec::zeros(p.nvars());
    if solve_lp(&LpProblem::minimize(zero_obj, feas.clone())).is_infeasible() {
        return Err(Error::Infeasible);
    }

    // boundedness via the weighted-sum LPs for the dual generators,
    // which also seed the outer approximation
    let mut history: Vec<(RVec, RVec)> = Vec::new();
    let mut outer_rows: Vec<Ineq> = Vec::new();
    for w in p.cone.dual_generators() {
        let obj = p.p_mat.tr_mul_vec(w);
        match solve_lp(&LpProblem::minimize(obj, feas.clone())) {
            LpOutcome::Optimal {
                objective, dual, ..
            } => {
                let (u_n, w_n) = normalize_pair(&dual, w, c);
                outer_rows.push(Ineq::new(w.clone(), objective));
                history.push((u_n, w_n));
            }
            LpOutcome::Unbounded { .. } => return Err(Error::Unbounded),
            LpOutcome::Infeasible { .. } => unreachable!("feasibility checked"),
        }
    }

    let mut outer = Polyhedron::from_hrep(&HRep::new(p.nobj(), outer_rows.clone())?);
    let mut iterations = 0usize;
    let final_points: Vec<RVec>;
    loop {
        let vertices: Vec<RVec> = outer.vertices().to_vec();
        let probes: Vec<Probe> = vertices.iter().map(|v| separation_probe(p, v, c)).collect();
        // stop once every vertex sits within eps of the upper image
        if probes.iter().all(|pr| &pr.t <= eps) {
            final_points = probes.iter().map(|pr| refine_minimizer(p, &pr.x)).collect();
            break;
        }
        // cut the first vertex that is strictly outside
        let cut = probes
            .iter()
            .find(|pr| pr.t.is_positive())
            .expect("some vertex fails the eps test");
        let (u_n, w_n) = normalize_pair(&cut.u, &cut.w, c);
        let offset = u_n.dot(&p.b);
        outer_rows.push(Ineq::new(w_n.clone(), offset));
        history.push((u_n, w_n));
        outer = Polyhedron::from_hrep(&HRep::new(p.nobj(), outer_rows.clone())?);
        iterations += 1;
    }

    // canonical point list keyed by image
    let mut keyed: Vec<(RVec, RVec)> = final_points
        .into_iter()
        .map(|x| (p.p_mat.mul_vec(&x), x))
        .collect();
    keyed.sort();
    keyed.dedup_by(|a, b| a.0 == b.0);
    let points: Vec<RVec> = keyed.into_iter().map(|(_, x)| x).collect();

    let image_pts: Vec<RVec> = points.iter().map(|x| p.p_mat.mul_vec(x)).collect();
    let image = UpperSet::from_polyhedron(
        p.cone.clone(),
        Polyhedron::from_vrep(&VRep::new(
            p.nobj(),
            image_pts,
            p.cone.cone().generators().to_vec(),
        )?),
    )?;

    // one dual pair per facet of the final outer set, each attaining its
    // supporting halfspace through a weighted-sum LP
    let mut pairs = Vec::new();
    for iq in outer.facets() {
        let cw = c.dot(&iq.normal);
        debug_assert!(cw.is_positive(), "outer facets have normals in C^+");
        let w_n = iq.normal.scale(&cw.recip());
        let obj = p.p_mat.tr_mul_vec(&w_n);
        match solve_lp(&LpProblem::minimize(obj, feas.clone())) {
            LpOutcome::Optimal { dual, .. } => pairs.push((dual, w_n)),
            _ => unreachable!("bounded by construction"),
        }
    }
    pairs.sort_by(|a, b| a.1.cmp(&b.1));
    let outer_upper = UpperSet::from_polyhedron(p.cone.clone(), outer)?;
    let primal = LvoSolution {
        points,
        image,
        eps: eps.clone(),
        c: c.clone(),
        iterations,
    };
    let dual = DualSolution {
        pairs,
        outer: outer_upper,
        history,
    };
    Ok((primal, dual))
}

/// Value of the set-valued Lagrangian
/// `L(x, u, w) = (P x + C) + inf { S_(u,w)(y) | y in b - A x + R^m_+ }`:
/// the halfspace `{ z | w . z >= w . P x + u . (b - A x) }` for
/// `u >= 0`, and all of R^q otherwise.
pub fn lagrangian_value(p: &LvoProblem, x: &RVec, u: &RVec, w: &RVec) -> Result<UpperSet, Error> {
    x.check_dim(p.nvars())?;
    u.check_dim(p.a_mat.nrows())?;
    w.check_dim(p.nobj())?;
    if w.is_zero() || !p.cone.in_dual(w) {
        return Err(Error::InvalidProblem("w must lie in C^+ \\ {0}".into()));
    }
    if u.0.iter().any(|ui| ui.is_negative()) {
        // inf over the shifted orthant is unbounded below
        return Ok(UpperSet::bottom(p.cone.clone()));
    }
    let px = p.p_mat.mul_vec(x);
    let slack = &p.b - &p.a_mat.mul_vec(x);
    let offset = &w.dot(&px) + &u.dot(&slack);
    UpperSet::halfspace(p.cone.clone(), w, offset)
}

/// Outcome of a weak-duality probe.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WeakDuality {
    Holds,
    PrimalInfeasible,
    DualInfeasible,
}

/// Checks `D(u, w) >= P x + C` for a feasible pair; a violation with
/// both sides feasible indicates an implementation bug, so this is a
/// verifier rather than a test.
pub fn check_weak_duality(
    p: &LvoProblem,
    x: &RVec,
    u: &RVec,
    w: &RVec,
) -> Result<WeakDuality, Error> {
    if !p.is_feasible_point(x) {
        return Ok(WeakDuality::PrimalInfeasible);
    }
    let dual_ok = !w.is_zero()
        && p.cone.in_dual(w)
        && u.0.iter().all(|ui| !ui.is_negative())
        && p.a_mat.tr_mul_vec(u) == p.p_mat.tr_mul_vec(w);
    if !dual_ok {
        return Ok(WeakDuality::DualInfeasible);
    }
    let px = p.p_mat.mul_vec(x);
    let holds = !(&w.dot(&px) - &u.dot(&p.b)).is_negative();
    assert!(holds, "weak duality violated by a feasible pair");
    Ok(WeakDuality::Holds)
}

/// Strong duality at `eps = 0`: the generated image equals the
/// intersection of the dual halfspaces, and every facet of the image is
/// attained by some dual pair.
pub fn check_strong_duality(
    p: &LvoProblem,
    primal: &LvoSolution,
    dual: &DualSolution,
) -> Result<bool, Error> {
    if primal.image != dual.outer {
        return Ok(false);
    }
    let Some(image) = primal.image.proper() else {
        return Ok(false);
    };
    for iq in image.facets() {
        let cw = primal.c.dot(&iq.normal);
        if !cw.is_positive() {
            return Ok(false);
        }
        let f = cw.recip();
        let w_n = iq.normal.scale(&f);
        let offset = &iq.offset * &f;
        let attained = dual
            .pairs
            .iter()
            .any(|(u, w)| *w == w_n && u.dot(&p.b) == offset);
        if !attained {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Geometric dual image
/// `D* = { (w_1, .., w_{q-1}, b^T u) | (u, w) in T } - K` with `K` the
/// nonnegative last-coordinate ray.
#[derive(Clone, Debug)]
pub struct GeometricDual {
    pub dual_image: Polyhedron,
    pub c: RVec,
}

pub fn geometric_dual(p: &LvoProblem, c: &RVec) -> Result<GeometricDual, Error> {
    p.check_interior(c)?;
    let m = p.a_mat.nrows();
    let q = p.nobj();
    if c[q - 1].is_zero() {
        // the duality coupling reconstructs w_q from c^T w = 1
        return Err(Error::InvalidProblem(
            "geometric dual needs an interior direction with nonzero last coordinate".into(),
        ));
    }
    let n = p.nvars();
    let dim = m + q;
    let mut rows = Vec::new();
    // A^T u = P^T w
    for j in 0..n {
        let mut row = RVec::zeros(dim);
        for i in 0..m {
            row[i] = p.a_mat.row(i)[j].clone();
        }
        for k in 0..q {
            row[m + k] = -&p.p_mat.row(k)[j];
        }
        rows.push(Ineq::new(row.clone(), Rational::zero()));
        rows.push(Ineq::new(-&row, Rational::zero()));
    }
    // u >= 0
    for i in 0..m {
        let mut row = RVec::zeros(dim);
        row[i] = Rational::one();
        rows.push(Ineq::new(row, Rational::zero()));
    }
    // w in C^+
    for g in p.cone.cone().generators() {
        let mut row = RVec::zeros(dim);
        for k in 0..q {
            row[m + k] = g[k].clone();
        }
        rows.push(Ineq::new(row, Rational::zero()));
    }
    // c^T w = 1
    let mut row = RVec::zeros(dim);
    for k in 0..q {
        row[m + k] = c[k].clone();
    }
    rows.push(Ineq::new(row.clone(), Rational::one()));
    rows.push(Ineq::new(-&row, Rational::from_int(-1)));

    let t_poly = Polyhedron::from_hrep(&HRep::new(dim, rows)?);
    let Some(tv) = t_poly.vrep() else {
        return Err(Error::Infeasible);
    };
    let project = |uw: &RVec| {
        let mut out = Vec::with_capacity(q);
        for k in 0..q - 1 {
            out.push(uw[m + k].clone());
        }
        out.push(RVec(uw.0[..m].to_vec()).dot(&p.b));
        RVec(out)
    };
    let points: Vec<RVec> = tv.points.iter().map(&project).collect();
    let mut dirs: Vec<RVec> = tv
        .directions
        .iter()
        .map(&project)
        .filter(|d| !d.is_zero())
        .collect();
    let mut down = RVec::zeros(q);
    down[q - 1] = -Rational::one();
    dirs.push(down);
    let dual_image = Polyhedron::from_vrep(&VRep::new(q, points, dirs)?);
    Ok(GeometricDual {
        dual_image,
        c: c.clone(),
    })
}

/// Reconstruct `w` from a geometric-dual point via the normalization
/// `c^T w = 1`.
pub fn coupling_weight(y: &RVec, c: &RVec) -> RVec {
    let q = y.dim();
    let mut acc = Rational::one();
    for i in 0..q - 1 {
        acc = &acc - &(&c[i] * &y[i]);
    }
    let mut w = y.0[..q - 1].to_vec();
    w.push(&acc / &c[q - 1]);
    RVec(w)
}

/// `phi(z, y) = w(y) . z - y_q`, the coupling function of geometric
/// duality: nonnegative on paired feasible values and zero exactly on
/// paired faces.
pub fn coupling_value(z: &RVec, y: &RVec, c: &RVec) -> Rational {
    let q = z.dim();
    let w = coupling_weight(y, c);
    &w.dot(z) - &y[q - 1]
}

/// Exact verification of the geometric duality face pairing between the
/// upper image and the geometric dual image: vertices of one correspond
/// to facets of the other, inclusion-reversing.
pub fn verify_geometric_duality(
    upper_image: &Polyhedron,
    dual_image: &Polyhedron,
    c: &RVec,
) -> Result<bool, Error> {
    let q = upper_image.dim;
    let p_vertices = upper_image.vertices();
    let p_facets = upper_image.facets();
    let d_vertices = dual_image.vertices();
    let d_facets = dual_image.facets();
    let k_max_facets: Vec<&Ineq> = d_facets
        .iter()
        .filter(|iq| !iq.normal[q - 1].is_zero())
        .collect();

    // counts: vertices of UP <-> K-maximal facets of D*, facets of UP
    // <-> vertices of D*
    if p_vertices.len() != k_max_facets.len() || p_facets.len() != d_vertices.len() {
        return Ok(false);
    }

    // each dual vertex names a facet of the upper image
    for y in d_vertices {
        let w = coupling_weight(y, c);
        let expected = Ineq::new(w, y[q - 1].clone()).normalized();
        if !p_facets.contains(&expected) {
            return Ok(false);
        }
    }

    // each upper-image vertex names a K-maximal facet of the dual image
    for v in p_vertices {
        let expected = dual_facet_of_vertex(v, c);
        if !d_facets.contains(&expected) {
            return Ok(false);
        }
    }

    // incidence reversal through the coupling function: v lies on the
    // facet named by y exactly when y lies on the facet named by v;
    // both are equivalent to phi(v, y) = 0
    for v in p_vertices {
        let v_facet = dual_facet_of_vertex(v, c);
        for y in d_vertices {
            let phi = coupling_value(v, y, c);
            if phi.is_negative() {
                return Ok(false);
            }
            let w = coupling_weight(y, c);
            let on_p_facet = w.dot(v) == y[q - 1];
            let on_d_facet = v_facet.eval(y).is_zero();
            if phi.is_zero() != on_p_facet || on_p_facet != on_d_facet {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The K-maximal facet of the dual image named by an upper-image vertex:
/// `{ y | phi(v, y) >= 0 }` rewritten as an inequality in `y`.
fn dual_facet_of_vertex(v: &RVec, c: &RVec) -> Ineq {
    let q = v.dim();
    let ratio = &v[q - 1] / &c[q - 1];
    let mut normal = Vec::with_capacity(q);
    for i in 0..q - 1 {
        normal.push(&v[i] - &(&c[i] * &ratio));
    }
    normal.push(-Rational::one());
    Ineq::new(RVec(normal), -ratio).normalized()
}

/// Per-scalarization Lagrange multiplier assignments derived from
/// weighted-sum LPs: for each `zstar` the dual of
/// `min (P^T zstar) . x  s.t.  A x >= b`.
pub fn lagrange_assignments(p: &LvoProblem, grid: &[RVec]) -> Result<Vec<(RVec, RVec)>, Error> {
    let feas = p.feasible_hrep();
    let mut out = Vec::with_capacity(grid.len());
    for zstar in grid {
        let obj = p.p_mat.tr_mul_vec(zstar);
        match solve_lp(&LpProblem::minimize(obj, feas.clone())) {
            LpOutcome::Optimal { dual, .. } => out.push((zstar.clone(), dual)),
            LpOutcome::Unbounded { .. } => return Err(Error::Unbounded),
            LpOutcome::Infeasible { .. } => return Err(Error::Infeasible),
        }
    }
    Ok(out)
}

/// The scalarization grid for Lagrange-type checks: facet normals of the
/// upper image, generators of `C^+`, and one interior witness per vertex
/// of the upper image (the sum of its active facet normals), which pins
/// each vertex as a unique scalarized minimizer.
pub fn lagrange_grid(upper_image: &Polyhedron, cone: &OrderCone) -> Vec<RVec> {
    let mut grid: Vec<RVec> = Vec::new();
    for iq in upper_image.facets() {
        grid.push(iq.normal.normalize_leading());
    }
    for w in cone.dual_generators() {
        grid.push(w.normalize_leading());
    }
    for v in upper_image.vertices() {
        let mut witness = RVec::zeros(upper_image.dim);
        for iq in upper_image.facets() {
            if iq.normal.dot(v) == iq.offset {
                witness = &witness + &iq.normal;
            }
        }
        if !witness.is_zero() {
            grid.push(witness.normalize_leading());
        }
    }
    grid.sort();
    grid.dedup();
    grid
}

/// Lagrange sufficiency: certifies that `points` is an infimizer by
/// checking, for every grid scalarization with its multiplier, dual
/// feasibility, the scalarized infimum equality
/// `min { zstar . P x | x in points } = u^T b`, and complementary
/// slackness at the attaining point.
pub fn check_lagrange_sufficiency(
    p: &LvoProblem,
    points: &[RVec],
    assignments: &[(RVec, RVec)],
) -> Result<bool, Error> {
    if points.is_empty() {
        return Ok(false);
    }
    for x in points {
        if !p.is_feasible_point(x) {
            return Ok(false);
        }
    }
    for (zstar, u) in assignments {
        if u.0.iter().any(|ui| ui.is_negative()) {
            return Ok(false);
        }
        if p.a_mat.tr_mul_vec(u) != p.p_mat.tr_mul_vec(zstar) {
            return Ok(false);
        }
        let target = u.dot(&p.b);
        let mut best: Option<(Rational, &RVec)> = None;
        for x in points {
            let val = zstar.dot(&p.p_mat.mul_vec(x));
            let better = match &best {
                None => true,
                Some((b, _)) => val < *b,
            };
            if better {
                best = Some((val, x));
            }
        }
        let (min_val, attaining) = best.expect("points nonempty");
        if min_val != target {
            return Ok(false);
        }
        // complementary slackness at the attaining point follows from
        // the two equalities; keep it as a cross-check
        let slack = &u.dot(&p.a_mat.mul_vec(attaining)) - &u.dot(&p.b);
        debug_assert!(slack.is_zero());
        if !slack.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vv(xs: &[i64]) -> RVec {
        RVec::from_ints(xs)
    }

    /// The running 2-d instance: P = I, S = {x >= 0, x1 + x2 >= 1}.
    fn two_dim_instance() -> LvoProblem {
        LvoProblem::new(
            RMat::identity(2),
            RMat::from_int_rows(&[&[1, 1], &[1, 0], &[0, 1]]),
            vv(&[1, 0, 0]),
            Arc::new(OrderCone::orthant(2)),
        )
        .unwrap()
    }

    #[test]
    fn two_dim_solve_exact() {
        let p = two_dim_instance();
        let c = p.default_c();
        let (primal, dual) = solve_primal_benson(&p, &Rational::zero(), &c).unwrap();
        let mut images: Vec<RVec> = primal.points.iter().map(|x| p.p_mat.mul_vec(x)).collect();
        images.sort();
        assert_eq!(images, vec![vv(&[0, 1]), vv(&[1, 0])]);
        // upper image facets: z1 >= 0, z2 >= 0, z1 + z2 >= 1
        let image = primal.image.proper().unwrap();
        assert_eq!(image.facets().len(), 3);
        assert!(check_strong_duality(&p, &primal, &dual).unwrap());
        for (u, w) in &dual.history {
            assert_eq!(
                check_weak_duality(&p, &primal.points[0], u, w).unwrap(),
                WeakDuality::Holds
            );
        }
        // infeasible sides are reported as not applicable
        let (u, w) = &dual.history[0];
        assert_eq!(
            check_weak_duality(&p, &vv(&[-5, -5]), u, w).unwrap(),
            WeakDuality::PrimalInfeasible
        );
        let mut bad_u = u.clone();
        bad_u[0] = &bad_u[0] + &Rational::one();
        assert_eq!(
            check_weak_duality(&p, &primal.points[0], &bad_u, w).unwrap(),
            WeakDuality::DualInfeasible
        );
    }

    #[test]
    fn scalar_embedding_reduces_to_lp() {
        // q = 1, C = R_+: one LP
        let p = LvoProblem::new(
            RMat::from_int_rows(&[&[1, 1]]),
            RMat::from_int_rows(&[&[1, 0], &[0, 1], &[1, 1]]),
            vv(&[0, 0, 1]),
            Arc::new(OrderCone::orthant(1)),
        )
        .unwrap();
        let c = vv(&[1]);
        let (primal, dual) = solve_primal_benson(&p, &Rational::zero(), &c).unwrap();
        assert_eq!(primal.points.len(), 1);
        let image = primal.image.proper().unwrap();
        assert_eq!(image.vertices(), &[vv(&[1])]);
        assert!(check_strong_duality(&p, &primal, &dual).unwrap());
    }

    #[test]
    fn single_point_feasible_set() {
        // S = {(1, 2)} via box equalities
        let p = LvoProblem::new(
            RMat::identity(2),
            RMat::from_int_rows(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]),
            vv(&[1, -1, 2, -2]),
            Arc::new(OrderCone::orthant(2)),
        )
        .unwrap();
        let c = p.default_c();
        let (primal, dual) = solve_primal_benson(&p, &Rational::zero(), &c).unwrap();
        assert_eq!(primal.points, vec![vv(&[1, 2])]);
        assert_eq!(
            dual.outer,
            UpperSet::point(p.cone.clone(), &vv(&[1, 2])).unwrap()
        );
    }

    #[test]
    fn infeasible_and_unbounded_rejected() {
        let p = LvoProblem::new(
            RMat::identity(2),
            RMat::from_int_rows(&[&[1, 0], &[-1, 0]]),
            vv(&[1, 0]),
            Arc::new(OrderCone::orthant(2)),
        )
        .unwrap();
        let c = p.default_c();
        assert!(matches!(
            solve_primal_benson(&p, &Rational::zero(), &c),
            Err(Error::Infeasible)
        ));
        let p = LvoProblem::new(
            RMat::identity(2),
            RMat::from_int_rows(&[&[1, 0]]),
            vv(&[0]),
            Arc::new(OrderCone::orthant(2)),
        )
        .unwrap();
        assert!(matches!(
            solve_primal_benson(&p, &Rational::zero(), &c),
            Err(Error::Unbounded)
        ));
    }

    #[test]
    fn dual_objective_branches() {
        let p = two_dim_instance();
        // infeasible pair gives all of R^q
        let bad = dual_objective(&p, &vv(&[1, 1, 1]), &vv(&[1, 0])).unwrap();
        assert!(bad.is_bottom());
        // b = 0 instance gives H^+(w)
        let p0 = LvoProblem::new(
            RMat::identity(2),
            RMat::from_int_rows(&[&[1, 0], &[0, 1]]),
            vv(&[0, 0]),
            Arc::new(OrderCone::orthant(2)),
        )
        .unwrap();
        let w = RVec(vec![Rational::new(1, 2), Rational::new(1, 2)]);
        let u = RVec(vec![Rational::new(1, 2), Rational::new(1, 2)]);
        let d = dual_objective(&p0, &u, &w).unwrap();
        assert_eq!(
            d,
            UpperSet::halfspace(p0.cone.clone(), &w, Rational::zero()).unwrap()
        );
        // feasible pair on the 2-d instance: w = (1/2, 1/2), u on row 1
        let u = RVec(vec![
            Rational::new(1, 2),
            Rational::zero(),
            Rational::zero(),
        ]);
        let w = RVec(vec![Rational::new(1, 2), Rational::new(1, 2)]);
        let d = dual_objective(&p, &u, &w).unwrap();
        assert_eq!(
            d,
            UpperSet::halfspace(p.cone.clone(), &w, Rational::new(1, 2)).unwrap()
        );
    }

    #[test]
    fn geometric_duality_two_dim() {
        let p = two_dim_instance();
        let c = vv(&[1, 1]);
        let (primal, _) = solve_primal_benson(&p, &Rational::zero(), &c).unwrap();
        let gd = geometric_dual(&p, &c).unwrap();
        let image = primal.image.proper().unwrap();
        assert!(verify_geometric_duality(image, &gd.dual_image, &c).unwrap());
        // three facets of UP <-> three vertices of D*
        assert_eq!(gd.dual_image.vertices().len(), 3);
        // two vertices of UP <-> two K-maximal facets of D*
        let kmax = gd
            .dual_image
            .facets()
            .iter()
            .filter(|iq| !iq.normal[1].is_zero())
            .count();
        assert_eq!(kmax, 2);
    }

    #[test]
    fn geometric_duality_scalar_case() {
        let p = LvoProblem::new(
            RMat::from_int_rows(&[&[1]]),
            RMat::from_int_rows(&[&[1], &[-1]]),
            vv(&[2, -5]),
            Arc::new(OrderCone::orthant(1)),
        )
        .unwrap();
        let c = vv(&[1]);
        let (primal, _) = solve_primal_benson(&p, &Rational::zero(), &c).unwrap();
        let gd = geometric_dual(&p, &c).unwrap();
        assert!(
            verify_geometric_duality(primal.image.proper().unwrap(), &gd.dual_image, &c).unwrap()
        );
    }

    fn build_inflation(p: &LvoProblem, eps: &Rational, c: &RVec) -> UpperSet {
        let shift = -&c.scale(eps);
        let poly = p.cone.cone().as_polyhedron().translate(&shift).unwrap();
        UpperSet::from_polyhedron(p.cone.clone(), poly).unwrap()
    }

    #[test]
    fn eps_solutions_nested() {
        let p = two_dim_instance();
        let c = vv(&[1, 1]);
        let (exact, _) = solve_primal_benson(&p, &Rational::zero(), &c).unwrap();
        let mut last_iters = 0usize;
        for eps in [
            Rational::one(),
            Rational::new(1, 10),
            Rational::new(1, 100),
            Rational::zero(),
        ] {
            let (primal, _) = solve_primal_benson(&p, &eps, &c).unwrap();
            // iteration counts are non-decreasing as eps decreases
            assert!(primal.iterations >= last_iters);
            last_iters = primal.iterations;
            let inflated = primal.image.sum(&build_inflation(&p, &eps, &c)).unwrap();
            assert!(inflated.contains_set(&exact.image).unwrap());
        }
    }

    #[test]
    fn lagrangian_reconstructs_primal() {
        // the supremum of L(x, ., .) over dual pairs is Px + C for
        // feasible x and the empty set for infeasible x
        let p = two_dim_instance();
        let normals = p.cone.cone().facet_normals();
        let zero_u = RVec::zeros(3);
        let feasible = vv(&[2, 1]);
        // sup over (0, w) for the facet normals w of C is already Px + C
        let mut acc = UpperSet::bottom(p.cone.clone());
        for w in &normals {
            let l = lagrangian_value(&p, &feasible, &zero_u, w).unwrap();
            acc = crate::scalar::intersect_upper(&acc, &l).unwrap();
        }
        assert_eq!(
            acc,
            UpperSet::point(p.cone.clone(), &p.p_mat.mul_vec(&feasible)).unwrap()
        );
        // infeasible x: pushing the multiplier of a violated row makes
        // the halfspace offsets grow without bound, so the supremum over
        // all pairs is empty
        let infeasible = vv(&[-1, 0]);
        let w = &normals[0];
        let mut u1 = RVec::zeros(3);
        u1[1] = Rational::one();
        let mut u2 = RVec::zeros(3);
        u2[1] = Rational::from_int(10);
        let l1 = lagrangian_value(&p, &infeasible, &u1, w).unwrap();
        let l2 = lagrangian_value(&p, &infeasible, &u2, w).unwrap();
        let o1 = &l1.proper().unwrap().facets()[0].offset;
        let o2 = &l2.proper().unwrap().facets()[0].offset;
        assert!(o2 > o1, "offset must diverge along the violated row");
        // negative multipliers collapse to all of R^q
        let mut neg = RVec::zeros(3);
        neg[0] = Rational::from_int(-1);
        assert!(lagrangian_value(&p, &feasible, &neg, w).unwrap().is_bottom());
    }

    #[test]
    fn lagrange_sufficiency_two_dim() {
        let p = two_dim_instance();
        let c = vv(&[1, 1]);
        let (primal, _) = solve_primal_benson(&p, &Rational::zero(), &c).unwrap();
        let image = primal.image.proper().unwrap();
        let grid = lagrange_grid(image, &p.cone);
        let assignments = lagrange_assignments(&p, &grid).unwrap();
        assert!(check_lagrange_sufficiency(&p, &primal.points, &assignments).unwrap());
        // dropping either point breaks the certificate
        for i in 0..primal.points.len() {
            let mut rest = primal.points.clone();
            rest.remove(i);
            assert!(!check_lagrange_sufficiency(&p, &rest, &assignments).unwrap());
        }
    }
}
