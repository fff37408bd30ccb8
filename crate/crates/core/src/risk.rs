//! Set-valued risk measures for finite-scenario one-period markets.
//!
//! A market is given by solvency cones `K_0` (today) and `K_T(w)` per
//! scenario, plus a subspace `M` of eligible portfolios. The computed
//! measure is superhedging-type: `R(X)` collects the eligible deposits
//! `u` that can be exchanged once at time zero (paying a cost in `K_0`)
//! so that the terminal position `X(w) + u - k_0` is solvent in every
//! scenario. Values live in `G(M, K_0 ∩ M)` and come with an exact dual
//! certificate of consistent-pricing pairs `(Q, w)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geom::{Cone, HRep, Ineq, Polyhedron, VRep};
use crate::lattice::{OrderCone, UpperSet};
use crate::linalg::{RMat, RVec};
use crate::lp::{solve_lp, LpOutcome, LpProblem};
use crate::num::Rational;

#[derive(Clone, Debug)]
pub struct Scenario {
    pub prob: Rational,
    pub solvency: Cone,
}

/// Finite-scenario market with solvency cones and eligible subspace.
#[derive(Clone, Debug)]
pub struct MarketModel {
    d: usize,
    scenarios: Vec<Scenario>,
    k0: Cone,
    /// Columns of the embedding matrix: a basis of `M` in R^d.
    m_basis: Vec<RVec>,
    /// Ordering cone `K_0 ∩ M` expressed in basis coordinates.
    order: Arc<OrderCone>,
}

impl MarketModel {
    pub fn new(
        d: usize,
        scenarios: Vec<Scenario>,
        k0: Cone,
        m_basis: Vec<RVec>,
    ) -> Result<Self, Error> {
        if d == 0 || scenarios.is_empty() {
            return Err(Error::InvalidMarket("need d >= 1 and scenarios".into()));
        }
        let mut total = Rational::zero();
        for s in &scenarios {
            if !s.prob.is_positive() {
                return Err(Error::InvalidMarket("probabilities must be positive".into()));
            }
            total = &total + &s.prob;
            check_solvency_cone(d, &s.solvency)?;
        }
        if total != Rational::one() {
            return Err(Error::InvalidMarket("probabilities must sum to one".into()));
        }
        check_solvency_cone(d, &k0)?;
        if m_basis.is_empty() {
            return Err(Error::InvalidMarket("M needs a basis".into()));
        }
        for b in &m_basis {
            b.check_dim(d)?;
        }
        let e_mat = embed_matrix(d, &m_basis);
        if e_mat.rank() != m_basis.len() {
            return Err(Error::InvalidMarket("M basis is dependent".into()));
        }
        // M_+ = M ∩ R^d_+ must be nontrivial
        let k = m_basis.len();
        let pos_rows: Vec<RVec> = (0..d).map(|i| e_mat.row_of_tr(i)).collect();
        let m_plus = Cone::from_inequalities(k, pos_rows)?;
        if m_plus.is_trivial() {
            return Err(Error::InvalidMarket("M ∩ R^d_+ is trivial".into()));
        }
        // K_0 ∩ M in basis coordinates
        let k0m_rows: Vec<RVec> = k0
            .facet_normals()
            .iter()
            .map(|n| e_mat.tr_mul(n))
            .collect();
        let k0m = Cone::from_inequalities(k, k0m_rows)?;
        if k0m.is_whole_space() {
            return Err(Error::InvalidMarket("K_0 ∩ M must be a proper cone in M".into()));
        }
        let order = Arc::new(OrderCone::new(k0m)?);
        Ok(MarketModel {
            d,
            scenarios,
            k0,
            m_basis,
            order,
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn scenarios(&self) -> &[Scenario] {
        &self.scenarios
    }

    pub fn k0(&self) -> &Cone {
        &self.k0
    }

    pub fn m_basis(&self) -> &[RVec] {
        &self.m_basis
    }

    pub fn m_dim(&self) -> usize {
        self.m_basis.len()
    }

    /// The ordering cone `K_0^M` in M-coordinates.
    pub fn order_cone(&self) -> &Arc<OrderCone> {
        &self.order
    }

    /// Embed M-coordinates into R^d.
    pub fn embed(&self, lambda: &RVec) -> RVec {
        let mut out = RVec::zeros(self.d);
        for (b, l) in self.m_basis.iter().zip(lambda.0.iter()) {
            out = &out + &b.scale(l);
        }
        out
    }

    /// `E^T y` for the embedding matrix `E`.
    pub fn project_dual(&self, y: &RVec) -> RVec {
        RVec(self.m_basis.iter().map(|b| b.dot(y)).collect())
    }

    pub fn check_payoff(&self, x: &Payoff) -> Result<(), Error> {
        if x.0.len() != self.scenarios.len() {
            return Err(Error::Dimension {
                expected: self.scenarios.len(),
                got: x.0.len(),
            });
        }
        for v in &x.0 {
            v.check_dim(self.d)?;
        }
        Ok(())
    }
}

fn check_solvency_cone(d: usize, k: &Cone) -> Result<(), Error> {
    if k.dim() != d {
        return Err(Error::Dimension {
            expected: d,
            got: k.dim(),
        });
    }
    for i in 0..d {
        let mut e = RVec::zeros(d);
        e[i] = Rational::one();
        if !k.contains(&e)? {
            return Err(Error::InvalidMarket(
                "solvency cone must contain the nonnegative orthant".into(),
            ));
        }
    }
    if k.is_whole_space() {
        return Err(Error::InvalidMarket("solvency cone must be proper".into()));
    }
    Ok(())
}

/// Embedding matrix with the basis vectors as columns.
fn embed_matrix(d: usize, basis: &[RVec]) -> EmbedMat {
    EmbedMat {
        d,
        cols: basis.to_vec(),
    }
}

struct EmbedMat {
    d: usize,
    cols: Vec<RVec>,
}

impl EmbedMat {
    fn rank(&self) -> usize {
        RMat::from_rows(self.cols.clone()).expect("dims").rank()
    }

    /// Row `i` of `E^T`, i.e. the i-th coordinates of the basis vectors.
    fn row_of_tr(&self, i: usize) -> RVec {
        RVec(self.cols.iter().map(|c| c[i].clone()).collect())
    }

    /// `E^T y`.
    fn tr_mul(&self, y: &RVec) -> RVec {
        assert_eq!(y.dim(), self.d);
        RVec(self.cols.iter().map(|c| c.dot(y)).collect())
    }
}

/// Terminal payoff, one vector of asset positions per scenario.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Payoff(pub Vec<RVec>);

/// One consistent-pricing certificate entry: a vector probability
/// measure `Q` (per asset) and a price weighting `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PricingPair {
    /// `q[s][i]` is the `Q_i`-probability of scenario `s`.
    pub q: Vec<RVec>,
    pub w: RVec,
}

impl PricingPair {
    /// `E^Q[X]` componentwise.
    pub fn expectation(&self, x: &Payoff) -> RVec {
        let d = self.w.dim();
        let mut out = RVec::zeros(d);
        for (qs, xs) in self.q.iter().zip(x.0.iter()) {
            for i in 0..d {
                out[i] = &out[i] + &(&qs[i] * &xs[i]);
            }
        }
        out
    }

    /// The halfspace `{ lambda | w . E^Q[X] + w . E lambda >= 0 }` in
    /// M-coordinates.
    pub fn value_halfspace(&self, m: &MarketModel, x: &Payoff) -> Result<UpperSet, Error> {
        let normal = m.project_dual(&self.w);
        let offset = -self.w.dot(&self.expectation(x));
        UpperSet::halfspace(m.order_cone().clone(), &normal, offset)
    }
}

/// Risk set in M-coordinates together with its dual certificate.
#[derive(Clone, Debug)]
pub struct RiskResult {
    pub risk_set: UpperSet,
    pub certificate: Vec<PricingPair>,
}

/// Rows of the hedging polyhedron over `(lambda, k_0)`.
fn hedging_rows(m: &MarketModel, x: &Payoff) -> Vec<Ineq> {
    let k = m.m_dim();
    let d = m.dim();
    let e = embed_matrix(d, m.m_basis());
    let mut rows = Vec::new();
    for (s, xs) in m.scenarios().iter().zip(x.0.iter()) {
        for n in s.solvency.facet_normals() {
            // n . (X(w) + E lambda - k0) >= 0
            let mut row = e.tr_mul(&n).0;
            row.extend(n.0.iter().map(|c| -c));
            rows.push(Ineq::new(RVec(row), -n.dot(xs)));
        }
    }
    for n in m.k0().facet_normals() {
        let mut row = vec![Rational::zero(); k];
        row.extend(n.0.iter().cloned());
        rows.push(Ineq::new(RVec(row), Rational::zero()));
    }
    rows
}

/// Compute the risk set by projecting the hedging polyhedron onto the
/// eligible coordinates, then read the dual certificate off its facets.
pub fn risk_measure(m: &MarketModel, x: &Payoff) -> Result<RiskResult, Error> {
    m.check_payoff(x)?;
    let k = m.m_dim();
    let d = m.dim();
    let rows = hedging_rows(m, x);
    let lifted = Polyhedron::from_hrep(&HRep::new(k + d, rows)?);
    let risk_poly = match lifted.vrep() {
        None => Polyhedron::empty(k),
        Some(v) => {
            let points: Vec<RVec> = v.points.iter().map(|p| RVec(p.0[..k].to_vec())).collect();
            let dirs: Vec<RVec> = v
                .directions
                .iter()
                .map(|w| RVec(w.0[..k].to_vec()))
                .filter(|w| !w.is_zero())
                .collect();
            Polyhedron::from_vrep(&VRep::new(k, points, dirs)?)
        }
    };
    let risk_set = UpperSet::from_polyhedron(m.order_cone().clone(), risk_poly)?;
    let mut certificate = Vec::new();
    if let Some(poly) = risk_set.proper() {
        for iq in poly.facets() {
            certificate.push(facet_pricing_pair(m, x, iq)?);
        }
    }
    Ok(RiskResult {
        risk_set,
        certificate,
    })
}

/// Express a risk-set facet as a nonnegative combination of the hedging
/// constraints and change variables to a pricing pair `(Q, w)`.
fn facet_pricing_pair(m: &MarketModel, x: &Payoff, facet: &Ineq) -> Result<PricingPair, Error> {
    let d = m.dim();
    let e = embed_matrix(d, m.m_basis());
    // unknowns: one multiplier per scenario-facet row and per K_0 row
    let scen_counts: Vec<usize> = m
        .scenarios()
        .iter()
        .map(|s| s.solvency.facet_normals().len())
        .collect();
    let n_scen: usize = scen_counts.iter().sum();
    let k0_normals = m.k0().facet_normals();
    let nvars = n_scen + k0_normals.len();

    // equality system:
    //   sum_w E^T Y'(w) = facet normal            (k rows)
    //   sum_w Y'(w) - K0-part = 0                 (d rows)
    //   - sum_w Y'(w) . X(w) = facet offset       (1 row)
    let k = m.m_dim();
    let mut eq_rows: Vec<(RVec, Rational)> = Vec::new();
    for j in 0..k {
        let mut row = RVec::zeros(nvars);
        let mut idx = 0;
        for (s, _cnt) in m.scenarios().iter().zip(scen_counts.iter()) {
            for n in s.solvency.facet_normals() {
                row[idx] = e.tr_mul(&n)[j].clone();
                idx += 1;
            }
        }
        eq_rows.push((row, facet.normal[j].clone()));
    }
    for i in 0..d {
        let mut row = RVec::zeros(nvars);
        let mut idx = 0;
        for s in m.scenarios() {
            for n in s.solvency.facet_normals() {
                row[idx] = n[i].clone();
                idx += 1;
            }
        }
        for n in &k0_normals {
            row[idx] = -&n[i];
            idx += 1;
        }
        eq_rows.push((row, Rational::zero()));
    }
    {
        let mut row = RVec::zeros(nvars);
        let mut idx = 0;
        for (s, xs) in m.scenarios().iter().zip(x.0.iter()) {
            for n in s.solvency.facet_normals() {
                row[idx] = -n.dot(xs);
                idx += 1;
            }
        }
        eq_rows.push((row, facet.offset.clone()));
    }

    let mut ineqs = Vec::new();
    for (row, rhs) in &eq_rows {
        ineqs.push(Ineq::new(row.clone(), rhs.clone()));
        ineqs.push(Ineq::new(-row, -rhs));
    }
    for i in 0..nvars {
        let mut row = RVec::zeros(nvars);
        row[i] = Rational::one();
        ineqs.push(Ineq::new(row, Rational::zero()));
    }
    let h = HRep::new(nvars, ineqs)?;
    let outcome = solve_lp(&LpProblem::minimize(RVec::zeros(nvars), h));
    let LpOutcome::Optimal { point: mu, .. } = outcome else {
        return Err(Error::InvalidProblem(
            "facet multiplier system is infeasible".into(),
        ));
    };

    // assemble Y'(w), then w and Q
    let mut y_prime: Vec<RVec> = Vec::with_capacity(m.scenarios().len());
    let mut idx = 0;
    for s in m.scenarios() {
        let mut y = RVec::zeros(d);
        for n in s.solvency.facet_normals() {
            if !mu[idx].is_zero() {
                y = &y + &n.scale(&mu[idx]);
            }
            idx += 1;
        }
        y_prime.push(y);
    }
    let mut w = RVec::zeros(d);
    for y in &y_prime {
        w = &w + y;
    }
    let mut q: Vec<RVec> = Vec::with_capacity(y_prime.len());
    for (y, s) in y_prime.iter().zip(m.scenarios()) {
        let mut qs = RVec::zeros(d);
        for i in 0..d {
            qs[i] = if w[i].is_zero() {
                s.prob.clone()
            } else {
                &y[i] / &w[i]
            };
        }
        q.push(qs);
    }
    let pair = PricingPair { q, w };
    debug_assert_eq!(m.project_dual(&pair.w), facet.normal);
    Ok(pair)
}

/// Membership of a pricing pair in the dual admissible set: valid vector
/// probabilities, scenario densities in `K_T(w)^+`, aggregate weight in
/// `K_0^+`, nonzero projection onto M.
pub fn pricing_pair_admissible(m: &MarketModel, pair: &PricingPair) -> Result<bool, Error> {
    let d = m.dim();
    if pair.w.dim() != d || pair.q.len() != m.scenarios().len() {
        return Ok(false);
    }
    for i in 0..d {
        let mut total = Rational::zero();
        for qs in &pair.q {
            if qs[i].is_negative() {
                return Ok(false);
            }
            total = &total + &qs[i];
        }
        if total != Rational::one() {
            return Ok(false);
        }
    }
    // densities diag(w) dQ/dP must price every terminal solvency cone
    for (qs, s) in pair.q.iter().zip(m.scenarios()) {
        let mut y = RVec::zeros(d);
        for i in 0..d {
            y[i] = &(&pair.w[i] * &qs[i]) / &s.prob;
        }
        for g in s.solvency.generators() {
            if y.dot(g).is_negative() {
                return Ok(false);
            }
        }
    }
    for g in m.k0().generators() {
        if pair.w.dot(g).is_negative() {
            return Ok(false);
        }
    }
    Ok(!m.project_dual(&pair.w).is_zero())
}

/// Reconstruct the risk set from the certificate pairs and compare
/// exactly; also verifies every pair is dual-admissible and that each
/// value halfspace is an outer bound.
pub fn dual_representation_check(
    m: &MarketModel,
    x: &Payoff,
    result: &RiskResult,
) -> Result<bool, Error> {
    m.check_payoff(x)?;
    if result.risk_set.is_bottom() || result.risk_set.is_top() {
        return Ok(result.certificate.is_empty());
    }
    let mut rows = Vec::new();
    for pair in &result.certificate {
        if !pricing_pair_admissible(m, pair)? {
            return Ok(false);
        }
        let hs = pair.value_halfspace(m, x)?;
        if !hs.contains_set(&result.risk_set)? {
            return Ok(false);
        }
        let normal = m.project_dual(&pair.w);
        let offset = -pair.w.dot(&pair.expectation(x));
        rows.push(Ineq::new(normal, offset));
    }
    let rebuilt = Polyhedron::from_hrep(&HRep::new(m.m_dim(), rows)?);
    let rebuilt = UpperSet::from_polyhedron(m.order_cone().clone(), rebuilt)?;
    Ok(rebuilt == result.risk_set)
}

/// Verify `R(x2) >= R(x1)` under scenario-wise solvency dominance.
pub fn monotonicity_check(m: &MarketModel, x1: &Payoff, x2: &Payoff) -> Result<bool, Error> {
    m.check_payoff(x1)?;
    m.check_payoff(x2)?;
    for ((a, b), s) in x1.0.iter().zip(x2.0.iter()).zip(m.scenarios()) {
        if !s.solvency.contains(&(b - a))? {
            return Err(Error::InvalidProblem(
                "x2 - x1 must be solvent in every scenario".into(),
            ));
        }
    }
    let r1 = risk_measure(m, x1)?;
    let r2 = risk_measure(m, x2)?;
    r2.risk_set.contains_set(&r1.risk_set)
}

/// The risk measure as a translative set-valued function: the stacked
/// payoff space maps to M-coordinates through `T lambda = -(E lambda)`
/// repeated per scenario, and the zero sublevel set is the projection of
/// the hedging cone at `X = 0`.
pub fn as_translative_function(
    m: &MarketModel,
) -> Result<(RMat, Polyhedron, crate::scalar::PolySetFunction), Error> {
    let d = m.dim();
    let k = m.m_dim();
    let n_scen = m.scenarios().len();
    let n = d * n_scen;
    // T matrix: n x k
    let mut t_rows = Vec::with_capacity(n);
    for _ in 0..n_scen {
        for i in 0..d {
            let row = RVec(m.m_basis().iter().map(|b| -&b[i]).collect());
            t_rows.push(row);
        }
    }
    let t_mat = RMat::from_rows(t_rows)?;

    // A_R = { X | exists k0 in K_0: X(w) - k0 in K_T(w) } projected from
    // (X, k0)
    let mut rows = Vec::new();
    for (si, s) in m.scenarios().iter().enumerate() {
        for nrm in s.solvency.facet_normals() {
            let mut row = RVec::zeros(n + d);
            for i in 0..d {
                row[si * d + i] = nrm[i].clone();
            }
            for i in 0..d {
                row[n + i] = -&nrm[i];
            }
            rows.push(Ineq::new(row, Rational::zero()));
        }
    }
    for nrm in m.k0().facet_normals() {
        let mut row = RVec::zeros(n + d);
        for i in 0..d {
            row[n + i] = nrm[i].clone();
        }
        rows.push(Ineq::new(row, Rational::zero()));
    }
    let lifted = Polyhedron::from_hrep(&HRep::new(n + d, rows)?);
    let a_r = match lifted.vrep() {
        None => Polyhedron::empty(n),
        Some(v) => {
            let points: Vec<RVec> = v.points.iter().map(|p| RVec(p.0[..n].to_vec())).collect();
            let dirs: Vec<RVec> = v
                .directions
                .iter()
                .map(|w| RVec(w.0[..n].to_vec()))
                .filter(|w| !w.is_zero())
                .collect();
            Polyhedron::from_vrep(&VRep::new(n, points, dirs)?)
        }
    };
    let f = crate::scalar::PolySetFunction::translative(&t_mat, &a_r, m.order_cone().clone())?;
    // EqFAF sanity: k = rank(T) must hold for the representation
    debug_assert_eq!(t_mat.rank(), k);
    Ok((t_mat, a_r, f))
}

/// Stack a payoff into a single vector, scenario-major.
pub fn stack_payoff(x: &Payoff) -> RVec {
    let mut out = Vec::new();
    for xs in &x.0 {
        out.extend(xs.0.iter().cloned());
    }
    RVec(out)
}
