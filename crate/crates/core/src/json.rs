//! JSON interchange for every external file format.
//!
//! Rationals travel as `"p/q"` strings (integer literals and terminating
//! decimal strings are accepted on input); matrices are arrays of rows.
//! Emission is canonical: struct key order is fixed and all scalars are
//! rendered as `"p/q"`, so identical inputs produce byte-identical
//! outputs.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::extended::ExtendedRational;
use crate::geom::{Cone, HRep, Ineq, Polyhedron, VRep};
use crate::lattice::{OrderCone, SetFamily, UpperSet};
use crate::linalg::{RMat, RVec};
use crate::lp::{LpOutcome, LpProblem};
use crate::lvo::{DualSolution, LvoProblem, LvoSolution};
use crate::num::Rational;
use crate::risk::{MarketModel, Payoff, PricingPair, RiskResult, Scenario};
use crate::scalar::PolySetFunction;

pub fn rational_to_value(r: &Rational) -> Value {
    Value::String(r.canonical_string())
}

pub fn rational_from_value(v: &Value) -> Result<Rational, Error> {
    match v {
        Value::String(s) => Rational::parse(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_int(i))
            } else {
                Err(Error::Json(
                    "non-integer JSON numbers are lossy; use \"p/q\" strings".into(),
                ))
            }
        }
        other => Err(Error::Json(format!("expected rational literal, got {other}"))),
    }
}

pub fn vector_to_value(v: &RVec) -> Value {
    Value::Array(v.0.iter().map(rational_to_value).collect())
}

pub fn vector_from_value(v: &Value) -> Result<RVec, Error> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Json("expected a vector (array)".into()))?;
    Ok(RVec(
        arr.iter()
            .map(rational_from_value)
            .collect::<Result<_, _>>()?,
    ))
}

pub fn matrix_to_value(m: &RMat) -> Value {
    Value::Array(m.rows().iter().map(vector_to_value).collect())
}

pub fn matrix_from_value(v: &Value) -> Result<RMat, Error> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Json("expected a matrix (array of rows)".into()))?;
    let rows = arr
        .iter()
        .map(vector_from_value)
        .collect::<Result<Vec<_>, _>>()?;
    RMat::from_rows(rows)
}

pub fn hrep_to_value(h: &HRep) -> Value {
    json!({
        "ineqs": h
            .ineqs
            .iter()
            .map(|iq| json!({"a": vector_to_value(&iq.normal), "b": rational_to_value(&iq.offset)}))
            .collect::<Vec<_>>(),
    })
}

pub fn hrep_from_value(v: &Value, dim: usize) -> Result<HRep, Error> {
    let ineqs = v
        .get("ineqs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Json("HRep needs an \"ineqs\" array".into()))?;
    let mut rows = Vec::with_capacity(ineqs.len());
    for iq in ineqs {
        let a = vector_from_value(
            iq.get("a")
                .ok_or_else(|| Error::Json("inequality needs \"a\"".into()))?,
        )?;
        let b = rational_from_value(
            iq.get("b")
                .ok_or_else(|| Error::Json("inequality needs \"b\"".into()))?,
        )?;
        rows.push(Ineq::new(a, b));
    }
    HRep::new(dim, rows)
}

pub fn vrep_to_value(v: &VRep) -> Value {
    json!({
        "points": v.points.iter().map(vector_to_value).collect::<Vec<_>>(),
        "dirs": v.directions.iter().map(vector_to_value).collect::<Vec<_>>(),
    })
}

pub fn vrep_from_value(v: &Value, dim: usize) -> Result<VRep, Error> {
    let points = v
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Json("VRep needs \"points\"".into()))?
        .iter()
        .map(vector_from_value)
        .collect::<Result<Vec<_>, _>>()?;
    let dirs = match v.get("dirs") {
        None => vec![],
        Some(d) => d
            .as_array()
            .ok_or_else(|| Error::Json("\"dirs\" must be an array".into()))?
            .iter()
            .map(vector_from_value)
            .collect::<Result<Vec<_>, _>>()?,
    };
    VRep::new(dim, points, dirs)
}

pub fn cone_to_value(c: &Cone) -> Value {
    json!({
        "q": c.dim(),
        "gens": c.generators().iter().map(vector_to_value).collect::<Vec<_>>(),
    })
}

pub fn cone_from_value(v: &Value) -> Result<Cone, Error> {
    let dim_hint = v.get("q").and_then(Value::as_u64).map(|q| q as usize);
    if let Some(gens) = v.get("gens") {
        let gens = gens
            .as_array()
            .ok_or_else(|| Error::Json("\"gens\" must be an array".into()))?
            .iter()
            .map(vector_from_value)
            .collect::<Result<Vec<_>, _>>()?;
        let dim = dim_hint
            .or_else(|| gens.first().map(RVec::dim))
            .ok_or_else(|| Error::Json("cone needs \"q\" or nonempty \"gens\"".into()))?;
        return Cone::from_generators(dim, gens);
    }
    if let Some(normals) = v.get("ineqs") {
        let normals = normals
            .as_array()
            .ok_or_else(|| Error::Json("\"ineqs\" must be an array".into()))?
            .iter()
            .map(vector_from_value)
            .collect::<Result<Vec<_>, _>>()?;
        let dim = dim_hint
            .or_else(|| normals.first().map(RVec::dim))
            .ok_or_else(|| Error::Json("cone needs \"q\" or nonempty \"ineqs\"".into()))?;
        return Cone::from_inequalities(dim, normals);
    }
    Err(Error::Json("cone needs \"gens\" or \"ineqs\"".into()))
}

pub fn upper_set_to_value(a: &UpperSet) -> Value {
    let kind = if a.is_bottom() {
        "bottom"
    } else if a.is_top() {
        "top"
    } else {
        "proper"
    };
    let mut map = Map::new();
    map.insert("kind".into(), Value::String(kind.into()));
    if let Some(p) = a.proper() {
        map.insert("poly".into(), hrep_to_value(p.hrep().expect("proper")));
    }
    map.insert("cone".into(), cone_to_value(a.cone().cone()));
    Value::Object(map)
}

pub fn upper_set_from_value(v: &Value, cone: Option<Arc<OrderCone>>) -> Result<UpperSet, Error> {
    let cone = match cone {
        Some(c) => c,
        None => {
            let cv = v
                .get("cone")
                .ok_or_else(|| Error::Json("upper set needs a \"cone\"".into()))?;
            Arc::new(OrderCone::new(cone_from_value(cv)?)?)
        }
    };
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Json("upper set needs a \"kind\"".into()))?;
    match kind {
        "bottom" => Ok(UpperSet::bottom(cone)),
        "top" => Ok(UpperSet::top(cone)),
        "proper" => {
            let poly = v
                .get("poly")
                .ok_or_else(|| Error::Json("proper upper set needs \"poly\"".into()))?;
            let p = polyhedron_from_value(poly, cone.dim())?;
            UpperSet::from_polyhedron(cone, p)
        }
        other => Err(Error::Json(format!("unknown kind {other:?}"))),
    }
}

/// Accepts either representation: an object with `ineqs` is a halfspace
/// form, one with `points` a generator form.
pub fn polyhedron_from_value(v: &Value, dim: usize) -> Result<Polyhedron, Error> {
    if v.get("ineqs").is_some() {
        Ok(Polyhedron::from_hrep(&hrep_from_value(v, dim)?))
    } else if v.get("points").is_some() {
        Ok(Polyhedron::from_vrep(&vrep_from_value(v, dim)?))
    } else {
        Err(Error::Json(
            "polyhedron needs \"ineqs\" or \"points\"".into(),
        ))
    }
}

pub fn family_to_value(fam: &SetFamily) -> Value {
    json!({
        "cone": cone_to_value(fam.cone().cone()),
        "members": fam
            .members()
            .iter()
            .map(|m| {
                let mut v = upper_set_to_value(m);
                if let Value::Object(map) = &mut v {
                    map.remove("cone");
                }
                v
            })
            .collect::<Vec<_>>(),
    })
}

pub fn family_from_value(v: &Value) -> Result<SetFamily, Error> {
    let cone = Arc::new(OrderCone::new(cone_from_value(
        v.get("cone")
            .ok_or_else(|| Error::Json("family needs a \"cone\"".into()))?,
    )?)?);
    let members = v
        .get("members")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Json("family needs \"members\"".into()))?
        .iter()
        .map(|m| upper_set_from_value(m, Some(cone.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    SetFamily::new(cone, members)
}

pub fn set_function_to_value(f: &PolySetFunction) -> Value {
    let graph = match f.graph().hrep() {
        Some(h) => hrep_to_value(h),
        None => json!({"ineqs": [{"a": vec![0; f.arg_dim() + f.value_dim()], "b": "1/1"}]}),
    };
    json!({
        "graph": graph,
        "n": f.arg_dim(),
        "q": f.value_dim(),
        "cone": cone_to_value(f.cone().cone()),
    })
}

pub fn set_function_from_value(v: &Value) -> Result<PolySetFunction, Error> {
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Json("set function needs \"n\"".into()))? as usize;
    let q = v
        .get("q")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Json("set function needs \"q\"".into()))? as usize;
    let cone = Arc::new(OrderCone::new(cone_from_value(
        v.get("cone")
            .ok_or_else(|| Error::Json("set function needs a \"cone\"".into()))?,
    )?)?);
    let graph = hrep_from_value(
        v.get("graph")
            .ok_or_else(|| Error::Json("set function needs a \"graph\"".into()))?,
        n + q,
    )?;
    PolySetFunction::from_graph_hrep(n, q, cone, &graph)
}

/// Problem JSON `{"P":…, "A":…, "b":…, "W":…}` with the columns of `W`
/// carrying the facet normals of `C`.
pub fn lvo_problem_to_value(p: &LvoProblem) -> Value {
    let normals = p.cone.cone().facet_normals();
    let q = p.nobj();
    let mut w_rows = Vec::with_capacity(q);
    for i in 0..q {
        w_rows.push(Value::Array(
            normals.iter().map(|n| rational_to_value(&n[i])).collect(),
        ));
    }
    json!({
        "P": matrix_to_value(&p.p_mat),
        "A": matrix_to_value(&p.a_mat),
        "b": vector_to_value(&p.b),
        "W": Value::Array(w_rows),
    })
}

pub fn lvo_problem_from_value(v: &Value) -> Result<LvoProblem, Error> {
    let p_mat = matrix_from_value(
        v.get("P")
            .ok_or_else(|| Error::Json("problem needs \"P\"".into()))?,
    )?;
    let a_mat = matrix_from_value(
        v.get("A")
            .ok_or_else(|| Error::Json("problem needs \"A\"".into()))?,
    )?;
    let b = vector_from_value(
        v.get("b")
            .ok_or_else(|| Error::Json("problem needs \"b\"".into()))?,
    )?;
    let w = matrix_from_value(
        v.get("W")
            .ok_or_else(|| Error::Json("problem needs \"W\"".into()))?,
    )?;
    let q = p_mat.nrows();
    if w.nrows() != q {
        return Err(Error::Json("W must have q rows".into()));
    }
    let normals: Vec<RVec> = (0..w.ncols()).map(|j| w.col(j)).collect();
    let cone = Arc::new(OrderCone::new(Cone::from_inequalities(q, normals)?)?);
    LvoProblem::new(p_mat, a_mat, b, cone)
}

pub fn lvo_primal_to_value(p: &LvoProblem, s: &LvoSolution) -> Value {
    json!({
        "problem": lvo_problem_to_value(p),
        "points": s.points.iter().map(vector_to_value).collect::<Vec<_>>(),
        "image": upper_set_to_value(&s.image),
        "eps": rational_to_value(&s.eps),
        "c": vector_to_value(&s.c),
        "iterations": s.iterations,
    })
}

pub fn lvo_dual_to_value(p: &LvoProblem, d: &DualSolution) -> Value {
    json!({
        "problem": lvo_problem_to_value(p),
        "pairs": d
            .pairs
            .iter()
            .map(|(u, w)| json!({"u": vector_to_value(u), "w": vector_to_value(w)}))
            .collect::<Vec<_>>(),
        "outer": upper_set_to_value(&d.outer),
    })
}

/// Decoded primal solution: problem, points, image, eps, c.
pub type DecodedPrimal = (LvoProblem, Vec<RVec>, UpperSet, Rational, RVec);

pub fn lvo_primal_from_value(v: &Value) -> Result<DecodedPrimal, Error> {
    let p = lvo_problem_from_value(
        v.get("problem")
            .ok_or_else(|| Error::Json("solution needs embedded \"problem\"".into()))?,
    )?;
    let points = v
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Json("solution needs \"points\"".into()))?
        .iter()
        .map(vector_from_value)
        .collect::<Result<Vec<_>, _>>()?;
    let image = upper_set_from_value(
        v.get("image")
            .ok_or_else(|| Error::Json("solution needs \"image\"".into()))?,
        Some(p.cone.clone()),
    )?;
    let eps = rational_from_value(
        v.get("eps")
            .ok_or_else(|| Error::Json("solution needs \"eps\"".into()))?,
    )?;
    let c = vector_from_value(
        v.get("c")
            .ok_or_else(|| Error::Json("solution needs \"c\"".into()))?,
    )?;
    Ok((p, points, image, eps, c))
}

/// Decoded dual solution: problem, pairs, outer set.
pub type DecodedDual = (LvoProblem, Vec<(RVec, RVec)>, UpperSet);

pub fn lvo_dual_from_value(v: &Value) -> Result<DecodedDual, Error> {
    let p = lvo_problem_from_value(
        v.get("problem")
            .ok_or_else(|| Error::Json("solution needs embedded \"problem\"".into()))?,
    )?;
    let pairs = v
        .get("pairs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Json("dual solution needs \"pairs\"".into()))?
        .iter()
        .map(|pv| {
            let u = vector_from_value(
                pv.get("u")
                    .ok_or_else(|| Error::Json("pair needs \"u\"".into()))?,
            )?;
            let w = vector_from_value(
                pv.get("w")
                    .ok_or_else(|| Error::Json("pair needs \"w\"".into()))?,
            )?;
            Ok((u, w))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let outer = upper_set_from_value(
        v.get("outer")
            .ok_or_else(|| Error::Json("dual solution needs \"outer\"".into()))?,
        Some(p.cone.clone()),
    )?;
    Ok((p, pairs, outer))
}

pub fn market_to_value(m: &MarketModel) -> Value {
    json!({
        "d": m.dim(),
        "scenarios": m
            .scenarios()
            .iter()
            .map(|s| json!({"p": rational_to_value(&s.prob), "KT": cone_to_value(&s.solvency)}))
            .collect::<Vec<_>>(),
        "K0": cone_to_value(m.k0()),
        "M": m.m_basis().iter().map(vector_to_value).collect::<Vec<_>>(),
    })
}

pub fn market_from_value(v: &Value) -> Result<MarketModel, Error> {
    let d = v
        .get("d")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Json("market needs \"d\"".into()))? as usize;
    let scenarios = v
        .get("scenarios")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Json("market needs \"scenarios\"".into()))?
        .iter()
        .map(|sv| {
            let prob = rational_from_value(
                sv.get("p")
                    .ok_or_else(|| Error::Json("scenario needs \"p\"".into()))?,
            )?;
            let solvency = cone_from_value(
                sv.get("KT")
                    .ok_or_else(|| Error::Json("scenario needs \"KT\"".into()))?,
            )?;
            Ok(Scenario { prob, solvency })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let k0 = cone_from_value(
        v.get("K0")
            .ok_or_else(|| Error::Json("market needs \"K0\"".into()))?,
    )?;
    let m_basis = v
        .get("M")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Json("market needs \"M\"".into()))?
        .iter()
        .map(vector_from_value)
        .collect::<Result<Vec<_>, _>>()?;
    MarketModel::new(d, scenarios, k0, m_basis)
}

pub fn payoff_to_value(x: &Payoff) -> Value {
    Value::Array(x.0.iter().map(vector_to_value).collect())
}

pub fn payoff_from_value(v: &Value) -> Result<Payoff, Error> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Json("payoff must be an array of per-scenario vectors".into()))?;
    Ok(Payoff(
        arr.iter()
            .map(vector_from_value)
            .collect::<Result<_, _>>()?,
    ))
}

pub fn risk_result_to_value(r: &RiskResult) -> Value {
    json!({
        "riskSet": upper_set_to_value(&r.risk_set),
        "certificate": r
            .certificate
            .iter()
            .map(|pair| {
                json!({
                    "Q": pair.q.iter().map(vector_to_value).collect::<Vec<_>>(),
                    "w": vector_to_value(&pair.w),
                })
            })
            .collect::<Vec<_>>(),
    })
}

pub fn risk_result_from_value(v: &Value, m: &MarketModel) -> Result<RiskResult, Error> {
    let risk_set = upper_set_from_value(
        v.get("riskSet")
            .ok_or_else(|| Error::Json("result needs \"riskSet\"".into()))?,
        Some(m.order_cone().clone()),
    )?;
    let certificate = v
        .get("certificate")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Json("result needs \"certificate\"".into()))?
        .iter()
        .map(|pv| {
            let q = pv
                .get("Q")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Json("pair needs \"Q\"".into()))?
                .iter()
                .map(vector_from_value)
                .collect::<Result<Vec<_>, _>>()?;
            let w = vector_from_value(
                pv.get("w")
                    .ok_or_else(|| Error::Json("pair needs \"w\"".into()))?,
            )?;
            Ok(PricingPair { q, w })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(RiskResult {
        risk_set,
        certificate,
    })
}

pub fn extended_to_value(v: &ExtendedRational) -> Value {
    match v {
        ExtendedRational::NegInf => Value::String("-inf".into()),
        ExtendedRational::PosInf => Value::String("+inf".into()),
        ExtendedRational::Finite(r) => rational_to_value(r),
    }
}

/// LP outcome JSON for diagnostics.
pub fn lp_outcome_to_value(p: &LpProblem, o: &LpOutcome) -> Value {
    let _ = p;
    match o {
        LpOutcome::Optimal {
            objective,
            point,
            dual,
        } => json!({
            "status": "optimal",
            "objective": rational_to_value(objective),
            "point": vector_to_value(point),
            "dual": vector_to_value(dual),
        }),
        LpOutcome::Infeasible { farkas } => json!({
            "status": "infeasible",
            "farkas": vector_to_value(farkas),
        }),
        LpOutcome::Unbounded { point, ray } => json!({
            "status": "unbounded",
            "point": vector_to_value(point),
            "ray": vector_to_value(ray),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vv(xs: &[i64]) -> RVec {
        RVec::from_ints(xs)
    }

    #[test]
    fn upper_set_round_trip() {
        let cone = Arc::new(OrderCone::orthant(2));
        let a = UpperSet::point(cone.clone(), &vv(&[1, 2])).unwrap();
        let v = upper_set_to_value(&a);
        let back = upper_set_from_value(&v, None).unwrap();
        assert_eq!(a, back);
        // and the emitted JSON is byte-stable
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            serde_json::to_string(&upper_set_to_value(&back)).unwrap()
        );
    }

    #[test]
    fn lvo_problem_round_trip() {
        let p = LvoProblem::new(
            RMat::identity(2),
            RMat::from_int_rows(&[&[1, 1], &[1, 0], &[0, 1]]),
            vv(&[1, 0, 0]),
            Arc::new(OrderCone::orthant(2)),
        )
        .unwrap();
        let v = lvo_problem_to_value(&p);
        let back = lvo_problem_from_value(&v).unwrap();
        assert_eq!(back.p_mat, p.p_mat);
        assert_eq!(back.a_mat, p.a_mat);
        assert_eq!(back.b, p.b);
        assert_eq!(*back.cone, *p.cone);
    }

    #[test]
    fn market_round_trip() {
        let m = MarketModel::new(
            2,
            vec![
                Scenario {
                    prob: Rational::new(1, 2),
                    solvency: Cone::orthant(2),
                },
                Scenario {
                    prob: Rational::new(1, 2),
                    solvency: Cone::orthant(2),
                },
            ],
            Cone::orthant(2),
            vec![vv(&[1, 0]), vv(&[0, 1])],
        )
        .unwrap();
        let v = market_to_value(&m);
        let back = market_from_value(&v).unwrap();
        assert_eq!(back.dim(), 2);
        assert_eq!(back.scenarios().len(), 2);
        let x = Payoff(vec![vv(&[1, -1]), vv(&[0, 2])]);
        let xs = payoff_to_value(&x);
        assert_eq!(payoff_from_value(&xs).unwrap(), x);
    }

    #[test]
    fn rational_literals() {
        assert_eq!(
            rational_from_value(&json!("3/4")).unwrap(),
            Rational::new(3, 4)
        );
        assert_eq!(rational_from_value(&json!(7)).unwrap(), Rational::from_int(7));
        assert_eq!(
            rational_from_value(&json!("0.25")).unwrap(),
            Rational::new(1, 4)
        );
        assert!(rational_from_value(&json!(0.25)).is_err());
    }
}
