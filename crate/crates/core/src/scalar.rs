//! Scalarization bridge and set-valued convex analysis.
//!
//! A set-valued function into `G(R^q, C)` is handled through the family
//! of its scalarizations `phi(x) = inf { zstar . z | z in f(x) }`, one
//! extended-real polyhedral function per `zstar in C^+ \ {0}`. Support
//! values, conjugates, directional derivatives and subdifferential
//! membership all reduce to exact LPs over closed polyhedral epigraphs.

use std::sync::Arc;

use crate::error::Error;
use crate::extended::{ExtendedRational, Finite, NegInf, PosInf};
use crate::geom::{HRep, Ineq, Polyhedron, VRep};
use crate::lattice::{OrderCone, UpperSet};
use crate::linalg::{RMat, RVec};
use crate::lp::{solve_lp, LpOutcome, LpProblem};
use crate::num::Rational;

/// Dual variable: a pair of linear functionals standing in for the
/// conlinear function `x -> { z | xstar . x <= zstar . z }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPair {
    pub xstar: RVec,
    pub zstar: RVec,
}

impl DualPair {
    /// Requires `zstar in C^+ \ {0}`.
    pub fn new(cone: &OrderCone, xstar: RVec, zstar: RVec) -> Result<Self, Error> {
        zstar.check_dim(cone.dim())?;
        if zstar.is_zero() || !cone.in_dual(&zstar) {
            return Err(Error::InvalidProblem(
                "zstar must be a nonzero element of C^+".into(),
            ));
        }
        Ok(DualPair { xstar, zstar })
    }
}

/// Closed polyhedral extended-real function, stored by its epigraph in
/// R^{n+1} (last coordinate is the value axis).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarFn {
    n: usize,
    epi: Polyhedron,
}

impl ScalarFn {
    pub fn from_epigraph(n: usize, epi: Polyhedron) -> Self {
        debug_assert_eq!(epi.dim, n + 1);
        #[cfg(debug_assertions)]
        if !epi.is_empty() {
            let mut up = RVec::zeros(n + 1);
            up[n] = Rational::one();
            debug_assert!(epi.contains_dir(&up).unwrap(), "not an epigraph");
        }
        ScalarFn { n, epi }
    }

    pub fn constant_plus_infinity(n: usize) -> Self {
        ScalarFn {
            n,
            epi: Polyhedron::empty(n + 1),
        }
    }

    pub fn arg_dim(&self) -> usize {
        self.n
    }

    pub fn epigraph(&self) -> &Polyhedron {
        &self.epi
    }

    pub fn is_proper(&self) -> bool {
        if self.epi.is_empty() {
            return false;
        }
        let mut down = RVec::zeros(self.n + 1);
        down[self.n] = -Rational::one();
        !self.epi.contains_dir(&down).unwrap()
    }

    /// Exact evaluation; `+inf` off the domain, `-inf` when the value
    /// axis is unbounded below.
    pub fn eval(&self, x: &RVec) -> ExtendedRational {
        assert_eq!(x.dim(), self.n);
        let Some(h) = self.epi.hrep() else {
            return PosInf;
        };
        let mut best: Option<Rational> = None;
        for iq in &h.ineqs {
            let a_t = &iq.normal[self.n];
            let ax = RVec(iq.normal.0[..self.n].to_vec()).dot(x);
            debug_assert!(!a_t.is_negative(), "epigraph rows slope upward");
            if a_t.is_zero() {
                if (&ax - &iq.offset).is_negative() {
                    return PosInf;
                }
            } else {
                let bound = &(&iq.offset - &ax) / a_t;
                best = Some(match best {
                    None => bound,
                    Some(b) => {
                        if bound > b {
                            bound
                        } else {
                            b
                        }
                    }
                });
            }
        }
        match best {
            None => NegInf,
            Some(b) => Finite(b),
        }
    }

    /// Fenchel conjugate value `sup_x ( xstar . x - phi(x) )` by one LP
    /// over the epigraph.
    pub fn conjugate_value(&self, xstar: &RVec) -> ExtendedRational {
        assert_eq!(xstar.dim(), self.n);
        let Some(h) = self.epi.hrep() else {
            return NegInf;
        };
        let mut obj = xstar.0.clone();
        obj.push(-Rational::one());
        match solve_lp(&LpProblem::maximize(RVec(obj), h.clone())) {
            LpOutcome::Optimal { objective, .. } => Finite(objective),
            LpOutcome::Unbounded { .. } => PosInf,
            LpOutcome::Infeasible { .. } => NegInf,
        }
    }

    /// Epigraph of the conjugate, read directly off the generators:
    /// `epi phi* = { (xstar, s) | xstar . d <= delta for dirs (d, delta),
    ///               s >= xstar . p - tau for points (p, tau) }`.
    pub fn conjugate_fn(&self) -> ScalarFn {
        let n = self.n;
        let Some(v) = self.epi.vrep() else {
            // phi = +inf, phi* = -inf: the epigraph is everything
            return ScalarFn::from_epigraph(n, Polyhedron::whole_space(n + 1));
        };
        let mut rows = Vec::new();
        for d in &v.directions {
            let mut normal: Vec<Rational> = d.0[..n].iter().map(|c| -c).collect();
            normal.push(Rational::zero());
            rows.push(Ineq::new(RVec(normal), -&d[n]));
        }
        for p in &v.points {
            let mut normal: Vec<Rational> = p.0[..n].iter().map(|c| -c).collect();
            normal.push(Rational::one());
            rows.push(Ineq::new(RVec(normal), -&p[n]));
        }
        let h = HRep::new(n + 1, rows).expect("dims");
        ScalarFn::from_epigraph(n, Polyhedron::from_hrep(&h))
    }

    /// Lower Dini directional derivative with scalar residuation rules:
    /// `inf_{t>0} (phi(xbar + t x) -. phi(xbar)) / t`.
    pub fn dini_derivative(&self, xbar: &RVec, x: &RVec) -> ExtendedRational {
        assert_eq!(xbar.dim(), self.n);
        assert_eq!(x.dim(), self.n);
        match self.eval(xbar) {
            PosInf => NegInf,
            NegInf => {
                // improper at xbar: the quotient is -inf wherever the ray
                // still meets the domain and +inf otherwise
                let line = self.restrict_to_ray(xbar, x);
                match line.hrep() {
                    None => PosInf,
                    Some(h) => {
                        let obj = RVec(vec![Rational::one(), Rational::zero()]);
                        match solve_lp(&LpProblem::maximize(obj, h.clone())) {
                            LpOutcome::Unbounded { .. } => NegInf,
                            LpOutcome::Optimal { objective, .. } => {
                                if objective.is_positive() {
                                    NegInf
                                } else {
                                    PosInf
                                }
                            }
                            LpOutcome::Infeasible { .. } => PosInf,
                        }
                    }
                }
            }
            Finite(v0) => {
                // the difference quotient of a convex function is
                // nondecreasing in t, so the infimum over t > 0 comes out
                // of the tangent cone at (0, phi(xbar))
                let line = self.restrict_to_ray(xbar, x);
                let origin = RVec(vec![Rational::zero(), v0]);
                let Some(h) = line.hrep() else {
                    return PosInf;
                };
                let mut lower: Option<Rational> = None;
                for iq in &h.ineqs {
                    if !iq.eval(&origin).is_zero() {
                        continue;
                    }
                    let a_t = &iq.normal[0];
                    let a_s = &iq.normal[1];
                    debug_assert!(!a_s.is_negative());
                    if a_s.is_zero() {
                        if a_t.is_negative() {
                            return PosInf;
                        }
                    } else {
                        let bound = -&(a_t / a_s);
                        lower = Some(match lower {
                            None => bound,
                            Some(b) => {
                                if bound > b {
                                    bound
                                } else {
                                    b
                                }
                            }
                        });
                    }
                }
                match lower {
                    None => NegInf,
                    Some(b) => Finite(b),
                }
            }
        }
    }

    /// The 2-d polyhedron `{ (t, s) | (xbar + t x, s) in epi }`.
    fn restrict_to_ray(&self, xbar: &RVec, x: &RVec) -> Polyhedron {
        let Some(h) = self.epi.hrep() else {
            return Polyhedron::empty(2);
        };
        let mut rows = Vec::new();
        for iq in &h.ineqs {
            let ax = RVec(iq.normal.0[..self.n].to_vec());
            let coeff_t = ax.dot(x);
            let coeff_s = iq.normal[self.n].clone();
            let offset = &iq.offset - &ax.dot(xbar);
            rows.push(Ineq::new(RVec(vec![coeff_t, coeff_s]), offset));
        }
        Polyhedron::from_hrep(&HRep::new(2, rows).expect("dims"))
    }
}

/// Set-valued function `f: R^n -> G(R^q, C)` with polyhedral graph
/// `{ (x, z) | G [x; z] >= g }`. Convexity and closedness hold by
/// construction; the graph may be empty (f identically top).
#[derive(Clone, Debug)]
pub struct PolySetFunction {
    n: usize,
    q: usize,
    cone: Arc<OrderCone>,
    graph: Polyhedron,
}

impl PolySetFunction {
    pub fn new(n: usize, q: usize, cone: Arc<OrderCone>, graph: Polyhedron) -> Result<Self, Error> {
        if cone.dim() != q {
            return Err(Error::Dimension {
                expected: q,
                got: cone.dim(),
            });
        }
        if graph.dim != n + q {
            return Err(Error::Dimension {
                expected: n + q,
                got: graph.dim,
            });
        }
        if !graph.is_empty() {
            for c in cone.cone().generators() {
                let lifted = RVec::zeros(n).concat(c);
                if !graph.contains_dir(&lifted)? {
                    return Err(Error::InvalidProblem(
                        "graph slices are not upper sets: z-recession misses C".into(),
                    ));
                }
            }
        }
        Ok(PolySetFunction { n, q, cone, graph })
    }

    pub fn from_graph_hrep(
        n: usize,
        q: usize,
        cone: Arc<OrderCone>,
        h: &HRep,
    ) -> Result<Self, Error> {
        PolySetFunction::new(n, q, cone, Polyhedron::from_hrep(h))
    }

    /// `f(x) = P x + C` for a linear map.
    pub fn linear_image(p: &RMat, cone: Arc<OrderCone>) -> Result<Self, Error> {
        let q = p.nrows();
        let n = p.ncols();
        // z - Px in C: for each facet normal w of C, w . z >= (P^T w) . x
        let normals = cone.cone().facet_normals();
        let mut rows = Vec::new();
        for w in &normals {
            let wp = p.tr_mul_vec(w);
            let row = (-&wp).concat(w);
            rows.push(Ineq::new(row, Rational::zero()));
        }
        PolySetFunction::from_graph_hrep(n, q, cone, &HRep::new(n + q, rows)?)
    }

    /// Translative function `f(x) = { z | x - T z in A_f }` for an
    /// injective `T` (an n x q matrix of full column rank).
    pub fn translative(
        t_mat: &RMat,
        zero_sublevel: &Polyhedron,
        cone: Arc<OrderCone>,
    ) -> Result<Self, Error> {
        let n = t_mat.nrows();
        let q = t_mat.ncols();
        if t_mat.rank() != q {
            return Err(Error::InvalidProblem("T must be injective".into()));
        }
        if zero_sublevel.dim != n {
            return Err(Error::Dimension {
                expected: n,
                got: zero_sublevel.dim,
            });
        }
        let graph = match zero_sublevel.hrep() {
            None => Polyhedron::empty(n + q),
            Some(h) => {
                let mut rows = Vec::new();
                for iq in &h.ineqs {
                    let tz = t_mat.tr_mul_vec(&iq.normal);
                    let row = iq.normal.concat(&-&tz);
                    rows.push(Ineq::new(row, iq.offset.clone()));
                }
                Polyhedron::from_hrep(&HRep::new(n + q, rows)?)
            }
        };
        PolySetFunction::new(n, q, cone, graph)
    }

    pub fn empty(n: usize, q: usize, cone: Arc<OrderCone>) -> Self {
        PolySetFunction {
            n,
            q,
            cone,
            graph: Polyhedron::empty(n + q),
        }
    }

    pub fn arg_dim(&self) -> usize {
        self.n
    }

    pub fn value_dim(&self) -> usize {
        self.q
    }

    pub fn cone(&self) -> &Arc<OrderCone> {
        &self.cone
    }

    pub fn graph(&self) -> &Polyhedron {
        &self.graph
    }

    pub fn eval(&self, x: &RVec) -> Result<UpperSet, Error> {
        x.check_dim(self.n)?;
        let Some(h) = self.graph.hrep() else {
            return Ok(UpperSet::top(self.cone.clone()));
        };
        let mut rows = Vec::new();
        for iq in &h.ineqs {
            let ax = RVec(iq.normal.0[..self.n].to_vec());
            let az = RVec(iq.normal.0[self.n..].to_vec());
            rows.push(Ineq::new(az, &iq.offset - &ax.dot(x)));
        }
        let slice = Polyhedron::from_hrep(&HRep::new(self.q, rows)?);
        UpperSet::from_polyhedron(self.cone.clone(), slice)
    }

    /// Scalarization `phi(x) = inf { zstar . z | z in f(x) }` as a closed
    /// polyhedral function, computed by projecting the lifted graph
    /// `{ (x, z, t) | (x, z) in graph, t >= zstar . z }` onto `(x, t)`.
    /// Polyhedral projections are closed, so no closure flag is needed.
    pub fn scalarization(&self, zstar: &RVec) -> Result<ScalarFn, Error> {
        zstar.check_dim(self.q)?;
        let Some(h) = self.graph.hrep() else {
            return Ok(ScalarFn::constant_plus_infinity(self.n));
        };
        let dim = self.n + self.q + 1;
        let mut rows = Vec::new();
        for iq in &h.ineqs {
            let mut normal = iq.normal.0.clone();
            normal.push(Rational::zero());
            rows.push(Ineq::new(RVec(normal), iq.offset.clone()));
        }
        // t - zstar . z >= 0
        let mut tz = vec![Rational::zero(); self.n];
        tz.extend(zstar.0.iter().map(|c| -c));
        tz.push(Rational::one());
        rows.push(Ineq::new(RVec(tz), Rational::zero()));
        let lifted = Polyhedron::from_hrep(&HRep::new(dim, rows)?);
        let Some(v) = lifted.vrep() else {
            return Ok(ScalarFn::constant_plus_infinity(self.n));
        };
        let project = |w: &RVec| {
            let mut out = w.0[..self.n].to_vec();
            out.push(w[self.n + self.q].clone());
            RVec(out)
        };
        let points: Vec<RVec> = v.points.iter().map(&project).collect();
        let dirs: Vec<RVec> = v
            .directions
            .iter()
            .map(&project)
            .filter(|d| !d.is_zero())
            .collect();
        let epi = Polyhedron::from_vrep(&VRep::new(self.n + 1, points, dirs)?);
        Ok(ScalarFn::from_epigraph(self.n, epi))
    }

    /// Facet normals of the graph projected to the z-block plus the
    /// generators of `C^+`: for polyhedral data these finitely many
    /// directions determine every set-level identity.
    pub fn default_zstar_grid(&self) -> Vec<RVec> {
        let mut grid: Vec<RVec> = Vec::new();
        if let Some(h) = self.graph.hrep() {
            for iq in &h.ineqs {
                let gz = RVec(iq.normal.0[self.n..].to_vec()).normalize_leading();
                if !gz.is_zero() {
                    grid.push(gz);
                }
            }
        }
        for w in self.cone.dual_generators() {
            grid.push(w.normalize_leading());
        }
        grid.sort();
        grid.dedup();
        grid.retain(|w| !w.is_zero() && self.cone.in_dual(w));
        grid
    }
}

/// `sigma(zstar) = inf { zstar . z | z in A }`: `+inf` on the empty set,
/// `-inf` when the functional is unbounded below on `A`.
pub fn support_scalarization(a: &UpperSet, zstar: &RVec) -> Result<ExtendedRational, Error> {
    zstar.check_dim(a.cone().dim())?;
    if zstar.is_zero() {
        return Err(Error::InvalidProblem("zstar must be nonzero".into()));
    }
    if a.is_top() {
        return Ok(PosInf);
    }
    if a.is_bottom() {
        return Ok(NegInf);
    }
    let h = a.proper().unwrap().hrep().unwrap();
    Ok(
        match solve_lp(&LpProblem::minimize(zstar.clone(), h.clone())) {
            LpOutcome::Optimal { objective, .. } => Finite(objective),
            LpOutcome::Unbounded { .. } => NegInf,
            LpOutcome::Infeasible { .. } => unreachable!("proper sets are nonempty"),
        },
    )
}

/// Value of the conlinear function: the halfspace
/// `{ z | zstar . z >= xstar . x }`.
pub fn conlinear_value(
    cone: &Arc<OrderCone>,
    pair: &DualPair,
    x: &RVec,
) -> Result<UpperSet, Error> {
    x.check_dim(pair.xstar.dim())?;
    UpperSet::halfspace(cone.clone(), &pair.zstar, pair.xstar.dot(x))
}

/// The upper set `{ z | value <= zstar . z }` for an extended value.
pub fn halfspace_from_value(
    cone: &Arc<OrderCone>,
    zstar: &RVec,
    value: &ExtendedRational,
) -> Result<UpperSet, Error> {
    Ok(match value {
        PosInf => UpperSet::top(cone.clone()),
        NegInf => UpperSet::bottom(cone.clone()),
        Finite(r) => UpperSet::halfspace(cone.clone(), zstar, r.clone())?,
    })
}

/// Fenchel conjugate `f*(xstar, zstar) = { z | phi*(xstar) <= zstar . z }`
/// where `phi` is the `zstar`-scalarization.
pub fn conjugate(f: &PolySetFunction, pair: &DualPair) -> Result<UpperSet, Error> {
    let phi = f.scalarization(&pair.zstar)?;
    let v = phi.conjugate_value(&pair.xstar);
    halfspace_from_value(f.cone(), &pair.zstar, &v)
}

/// Negative conjugate `(-f*) = H^+(zstar) -. f*`.
pub fn negative_conjugate(f: &PolySetFunction, pair: &DualPair) -> Result<UpperSet, Error> {
    let fstar = conjugate(f, pair)?;
    let h0 = UpperSet::halfspace(f.cone().clone(), &pair.zstar, Rational::zero())?;
    h0.residual(&fstar)
}

/// Biconjugate value at `x`: the intersection over the grid of
/// `{ z | phi**(x) <= zstar . z }`, with `phi**` evaluated through the
/// conjugate epigraph -- a route independent of direct evaluation.
pub fn biconjugate_value(
    f: &PolySetFunction,
    x: &RVec,
    zstar_grid: &[RVec],
) -> Result<UpperSet, Error> {
    let mut acc = UpperSet::bottom(f.cone().clone());
    for zstar in zstar_grid {
        let phi = f.scalarization(zstar)?;
        let bicon = phi.conjugate_fn().conjugate_value(x);
        let hs = halfspace_from_value(f.cone(), zstar, &bicon)?;
        acc = intersect_upper(&acc, &hs)?;
    }
    Ok(acc)
}

pub fn intersect_upper(a: &UpperSet, b: &UpperSet) -> Result<UpperSet, Error> {
    if a.is_bottom() {
        return Ok(b.clone());
    }
    if b.is_bottom() {
        return Ok(a.clone());
    }
    if a.is_top() || b.is_top() {
        return Ok(UpperSet::top(a.cone().clone()));
    }
    let p = a.proper().unwrap().intersect(b.proper().unwrap())?;
    UpperSet::from_polyhedron(a.cone().clone(), p)
}

/// Lower Dini directional derivative of `f` at `xbar` in direction `x`
/// with respect to `zstar`, as an upper set.
pub fn directional_derivative(
    f: &PolySetFunction,
    zstar: &RVec,
    xbar: &RVec,
    x: &RVec,
) -> Result<UpperSet, Error> {
    let phi = f.scalarization(zstar)?;
    let d = phi.dini_derivative(xbar, x);
    halfspace_from_value(f.cone(), zstar, &d)
}

/// Decide `xstar in subdiff_{zstar} f(xbar)`: the conjugate supremum is
/// attained at `xbar`, i.e. `phi*(xstar) = xstar . xbar - phi(xbar)`.
pub fn subdifferential_membership(
    f: &PolySetFunction,
    zstar: &RVec,
    xbar: &RVec,
    xstar: &RVec,
) -> Result<bool, Error> {
    let phi = f.scalarization(zstar)?;
    let Finite(v0) = phi.eval(xbar) else {
        return Ok(false);
    };
    let target = &xstar.dot(xbar) - &v0;
    Ok(phi.conjugate_value(xstar) == Finite(target))
}

/// `sup { xstar . x | x in A }` (the classical support function), used
/// by the translative-conjugate identity.
pub fn sup_support(a: &Polyhedron, xstar: &RVec) -> ExtendedRational {
    let Some(h) = a.hrep() else {
        return NegInf;
    };
    match solve_lp(&LpProblem::maximize(xstar.clone(), h.clone())) {
        LpOutcome::Optimal { objective, .. } => Finite(objective),
        LpOutcome::Unbounded { .. } => PosInf,
        LpOutcome::Infeasible { .. } => NegInf,
    }
}

/// Right-hand side of the translative conjugate identity: the
/// intersection of the conlinear values over the zero sublevel set when
/// `zstar = T^T xstar`, and the empty set otherwise.
pub fn translative_conjugate_expected(
    t_mat: &RMat,
    zero_sublevel: &Polyhedron,
    cone: &Arc<OrderCone>,
    pair: &DualPair,
) -> Result<UpperSet, Error> {
    let t_adj = t_mat.tr_mul_vec(&pair.xstar);
    if t_adj != pair.zstar {
        return Ok(UpperSet::top(cone.clone()));
    }
    let sigma = sup_support(zero_sublevel, &pair.xstar);
    halfspace_from_value(cone, &pair.zstar, &sigma)
}
