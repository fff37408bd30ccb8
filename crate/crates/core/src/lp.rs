//! Exact rational linear programming.
//!
//! Two-phase primal simplex with Bland's anti-cycling rule over exact
//! rationals. Every outcome carries a certificate which is verified
//! before it is returned: feasibility plus strong-duality equality for
//! optima, a Farkas vector for infeasibility, an improving ray for
//! unboundedness. Degenerate cases are statuses, not errors.

use crate::geom::HRep;
use crate::linalg::RVec;
use crate::num::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sense {
    Minimize,
    Maximize,
}

/// `optimize objective . x subject to constraints` (x free).
#[derive(Clone, Debug)]
pub struct LpProblem {
    pub objective: RVec,
    pub constraints: HRep,
    pub sense: Sense,
}

impl LpProblem {
    pub fn minimize(objective: RVec, constraints: HRep) -> Self {
        assert_eq!(objective.dim(), constraints.dim, "objective dimension");
        LpProblem {
            objective,
            constraints,
            sense: Sense::Minimize,
        }
    }

    pub fn maximize(objective: RVec, constraints: HRep) -> Self {
        assert_eq!(objective.dim(), constraints.dim, "objective dimension");
        LpProblem {
            objective,
            constraints,
            sense: Sense::Maximize,
        }
    }
}

/// Solver outcome with exact self-verifying certificates.
///
/// For `Optimal`, `dual` is stated for the minimization form (objective
/// negated when the problem maximizes): `dual >= 0`, `A^T dual = c_min`
/// and `b^T dual = min-value`, which together force complementary
/// slackness. For `Unbounded`, `ray` improves the stated sense without
/// bound. For `Infeasible`, `farkas >= 0` combines the rows into the
/// contradiction `0 >= farkas . b > 0`.
#[derive(Clone, Debug)]
pub enum LpOutcome {
    Optimal {
        objective: Rational,
        point: RVec,
        dual: RVec,
    },
    Infeasible {
        farkas: RVec,
    },
    Unbounded {
        point: RVec,
        ray: RVec,
    },
}

impl LpOutcome {
    pub fn optimal(&self) -> Option<(&Rational, &RVec)> {
        match self {
            LpOutcome::Optimal {
                objective, point, ..
            } => Some((objective, point)),
            _ => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpOutcome::Infeasible { .. })
    }
}

struct Tableau {
    // columns: [0..2n) split variables, [2n..2n+m) slacks,
    // [2n+m..2n+m+m_orig) artificials, last column rhs
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    row_ids: Vec<usize>,
    row_sign: Vec<i32>,
    n: usize,
    m_orig: usize,
}

impl Tableau {
    fn n_cols(&self) -> usize {
        2 * self.n + 2 * self.m_orig
    }

    fn rhs(&self, i: usize) -> &Rational {
        let c = self.n_cols();
        &self.rows[i][c]
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let c = self.n_cols();
        let inv = self.rows[r][j].recip();
        for k in 0..=c {
            self.rows[r][k] = &self.rows[r][k] * &inv;
        }
        for i in 0..self.rows.len() {
            if i != r && !self.rows[i][j].is_zero() {
                let f = self.rows[i][j].clone();
                for k in 0..=c {
                    let delta = &self.rows[r][k] * &f;
                    self.rows[i][k] = &self.rows[i][k] - &delta;
                }
            }
        }
        self.basis[r] = j;
    }

    /// Minimize `cost` over the current feasible dictionary using Bland's
    /// rule. `allowed(j)` bars columns from entering. Returns the entering
    /// column when unbounded.
    fn run_simplex(&mut self, cost: &[Rational], allowed: &dyn Fn(usize) -> bool) -> Option<usize> {
        loop {
            // reduced costs via the current basis prices
            let mut entering = None;
            for j in 0..self.n_cols() {
                if !allowed(j) || self.basis.contains(&j) {
                    continue;
                }
                let mut red = cost[j].clone();
                for (i, &bi) in self.basis.iter().enumerate() {
                    if !cost[bi].is_zero() && !self.rows[i][j].is_zero() {
                        red = &red - &(&cost[bi] * &self.rows[i][j]);
                    }
                }
                if red.is_negative() {
                    entering = Some(j);
                    break; // Bland: lowest index
                }
            }
            let j = entering?;
            // ratio test, ties broken by lowest basis index
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][j].is_positive() {
                    let ratio = self.rhs(i) / &self.rows[i][j];
                    match &leave {
                        None => leave = Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]) {
                                leave = Some((i, ratio));
                            }
                        }
                    }
                }
            }
            match leave {
                None => return Some(j),
                Some((r, _)) => self.pivot(r, j),
            }
        }
    }

    fn point(&self) -> RVec {
        let mut x = RVec::zeros(self.n);
        for (i, &bi) in self.basis.iter().enumerate() {
            if bi < self.n {
                x[bi] = &x[bi] + self.rhs(i);
            } else if bi < 2 * self.n {
                x[bi - self.n] = &x[bi - self.n] - self.rhs(i);
            }
        }
        x
    }

    /// Ray in x-space from an entering column with no blocking row.
    fn ray(&self, j: usize) -> RVec {
        let mut d = vec![Rational::zero(); 2 * self.n];
        if j < 2 * self.n {
            d[j] = Rational::one();
        }
        for (i, &bi) in self.basis.iter().enumerate() {
            if bi < 2 * self.n {
                d[bi] = -&self.rows[i][j];
            }
        }
        let mut r = RVec::zeros(self.n);
        for k in 0..self.n {
            r[k] = &d[k] - &d[k + self.n];
        }
        r
    }

    /// Multipliers for the original rows: `y = sign . (c_B B^{-1})`,
    /// read off the artificial columns. Dropped rows get zero.
    fn duals(&self, cost: &[Rational], m_rows: usize) -> RVec {
        let mut y = RVec::zeros(m_rows);
        for (i, &row_id) in self.row_ids.iter().enumerate() {
            let _ = i;
            let mut pi = Rational::zero();
            for (r, &br) in self.basis.iter().enumerate() {
                if !cost[br].is_zero() {
                    pi = &pi + &(&cost[br] * &self.rows[r][2 * self.n + self.m_orig + row_id]);
                }
            }
            if self.row_sign[i] < 0 {
                pi = -pi;
            }
            y[row_id] = pi;
        }
        y
    }
}

/// Solve an LP exactly. The returned certificates are checked internally;
/// a violation panics, since it indicates an implementation bug.
pub fn solve_lp(p: &LpProblem) -> LpOutcome {
    let n = p.objective.dim();
    let m = p.constraints.ineqs.len();
    let c_min = match p.sense {
        Sense::Minimize => p.objective.clone(),
        Sense::Maximize => -&p.objective,
    };

    // rows scaled so rhs >= 0; slack coefficient is -sign
    let mut tab = Tableau {
        rows: Vec::with_capacity(m),
        basis: Vec::with_capacity(m),
        row_ids: (0..m).collect(),
        row_sign: Vec::with_capacity(m),
        n,
        m_orig: m,
    };
    for (i, iq) in p.constraints.ineqs.iter().enumerate() {
        let sign = if iq.offset.is_negative() { -1 } else { 1 };
        let s = Rational::from_int(sign as i64);
        let mut row = Vec::with_capacity(2 * n + 2 * m + 1);
        for j in 0..n {
            row.push(&iq.normal[j] * &s);
        }
        for j in 0..n {
            row.push(-&(&iq.normal[j] * &s));
        }
        for j in 0..m {
            row.push(if j == i { -&s } else { Rational::zero() });
        }
        for j in 0..m {
            row.push(if j == i {
                Rational::one()
            } else {
                Rational::zero()
            });
        }
        row.push(&iq.offset * &s);
        tab.rows.push(row);
        tab.basis.push(2 * n + m + i);
        tab.row_sign.push(sign);
    }

    // phase 1: minimize the artificial sum
    let mut cost1 = vec![Rational::zero(); 2 * n + 2 * m];
    for cj in cost1.iter_mut().skip(2 * n + m) {
        *cj = Rational::one();
    }
    let unbounded = tab.run_simplex(&cost1, &|_| true);
    debug_assert!(unbounded.is_none(), "phase 1 cannot be unbounded");
    let phase1_val: Rational = tab
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= 2 * n + m)
        .map(|(i, _)| tab.rhs(i).clone())
        .fold(Rational::zero(), |acc, v| &acc + &v);
    if phase1_val.is_positive() {
        let farkas = tab.duals(&cost1, m);
        verify_infeasible(p, &farkas);
        return LpOutcome::Infeasible { farkas };
    }

    // drive remaining artificials out of the basis
    let mut r = 0;
    while r < tab.rows.len() {
        if tab.basis[r] >= 2 * n + m {
            debug_assert!(tab.rhs(r).is_zero());
            let col = (0..2 * n + m).find(|&j| !tab.rows[r][j].is_zero());
            match col {
                Some(j) => tab.pivot(r, j),
                None => {
                    // redundant row
                    tab.rows.remove(r);
                    tab.basis.remove(r);
                    tab.row_ids.remove(r);
                    tab.row_sign.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    // phase 2
    let mut cost2 = vec![Rational::zero(); 2 * n + 2 * m];
    for j in 0..n {
        cost2[j] = c_min[j].clone();
        cost2[n + j] = -&c_min[j];
    }
    let allowed = |j: usize| j < 2 * n + m;
    match tab.run_simplex(&cost2, &allowed) {
        Some(jcol) => {
            let point = tab.point();
            let ray = tab.ray(jcol);
            verify_unbounded(p, &c_min, &point, &ray);
            LpOutcome::Unbounded { point, ray }
        }
        None => {
            let point = tab.point();
            let dual = tab.duals(&cost2, m);
            let min_value = c_min.dot(&point);
            verify_optimal(p, &c_min, &point, &dual, &min_value);
            let objective = match p.sense {
                Sense::Minimize => min_value,
                Sense::Maximize => -min_value,
            };
            LpOutcome::Optimal {
                objective,
                point,
                dual,
            }
        }
    }
}

fn verify_optimal(p: &LpProblem, c_min: &RVec, x: &RVec, y: &RVec, value: &Rational) {
    for iq in &p.constraints.ineqs {
        assert!(iq.holds(x), "optimal point violates a constraint");
    }
    let mut aty = RVec::zeros(x.dim());
    let mut bty = Rational::zero();
    for (iq, yi) in p.constraints.ineqs.iter().zip(y.0.iter()) {
        assert!(!yi.is_negative(), "negative dual multiplier");
        for j in 0..x.dim() {
            aty[j] = &aty[j] + &(&iq.normal[j] * yi);
        }
        bty = &bty + &(&iq.offset * yi);
    }
    assert_eq!(&aty, c_min, "dual feasibility A^T y = c fails");
    assert_eq!(&bty, value, "strong duality b^T y = c^T x fails");
}

fn verify_unbounded(p: &LpProblem, c_min: &RVec, x: &RVec, r: &RVec) {
    for iq in &p.constraints.ineqs {
        assert!(iq.holds(x), "unbounded witness point infeasible");
        assert!(
            !iq.normal.dot(r).is_negative(),
            "ray leaves the feasible set"
        );
    }
    assert!(c_min.dot(r).is_negative(), "ray does not improve objective");
}

fn verify_infeasible(p: &LpProblem, y: &RVec) {
    let n = p.objective.dim();
    let mut aty = RVec::zeros(n);
    let mut bty = Rational::zero();
    for (iq, yi) in p.constraints.ineqs.iter().zip(y.0.iter()) {
        assert!(!yi.is_negative(), "negative Farkas multiplier");
        for j in 0..n {
            aty[j] = &aty[j] + &(&iq.normal[j] * yi);
        }
        bty = &bty + &(&iq.offset * yi);
    }
    assert!(aty.is_zero(), "Farkas combination A^T y != 0");
    assert!(bty.is_positive(), "Farkas value not positive");
}
