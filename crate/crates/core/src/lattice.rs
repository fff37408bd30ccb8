//! The complete lattice of closed convex upper sets.
//!
//! Values live in `G(R^q, C)`: polyhedra `P` with `P = cl co (P + C)`,
//! ordered by reverse inclusion, together with the distinguished bottom
//! (all of R^q) and top (empty set). Infima are closed convex hulls of
//! unions, suprema are intersections, and the inf-residuation
//! `A -. B = { z | B + z <= A }` substitutes for subtraction.

use std::sync::Arc;

use crate::error::Error;
use crate::geom::{Cone, HRep, Ineq, Polyhedron, VRep};
use crate::linalg::RVec;
use crate::num::Rational;

/// Ordering cone `C` with its dual `C^+`, shared by all members of a
/// family. Requires `0 in C` and `C != R^q`.
#[derive(Clone, Debug)]
pub struct OrderCone {
    cone: Cone,
    dual: Cone,
}

impl OrderCone {
    pub fn new(cone: Cone) -> Result<Self, Error> {
        if cone.is_whole_space() {
            return Err(Error::InvalidCone("ordering cone must not be all of R^q".into()));
        }
        let dual = cone.dual();
        Ok(OrderCone { cone, dual })
    }

    pub fn orthant(dim: usize) -> Self {
        OrderCone::new(Cone::orthant(dim)).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.cone.dim()
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    /// Generators of `C^+`, cross-checked against `C` on construction.
    pub fn dual_generators(&self) -> &[RVec] {
        self.dual.generators()
    }

    pub fn dual_cone(&self) -> &Cone {
        &self.dual
    }

    pub fn contains(&self, z: &RVec) -> Result<bool, Error> {
        self.cone.contains(z)
    }

    pub fn in_dual(&self, w: &RVec) -> bool {
        self.cone.generators().iter().all(|g| !w.dot(g).is_negative())
    }

    /// Validate the pairing `C`/`C^+` by exact membership both ways.
    pub fn validate(&self) -> bool {
        self.dual_generators().iter().all(|w| self.in_dual(w))
            && self.cone.generators().iter().all(|g| {
                self.dual_generators()
                    .iter()
                    .all(|w| !w.dot(g).is_negative())
            })
    }

    /// True iff the closure of `C` is a halfspace, i.e. iff reverse
    /// inclusion is a total order on the lattice.
    pub fn is_total_order(&self) -> bool {
        let facets = self.cone.as_polyhedron().facets();
        facets.len() == 1 && self.cone.is_full_dim()
    }
}

impl PartialEq for OrderCone {
    fn eq(&self, other: &Self) -> bool {
        self.cone == other.cone
    }
}

impl Eq for OrderCone {}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Kind {
    /// All of R^q: the least element under reverse inclusion.
    Bottom,
    /// The empty set: the greatest element.
    Top,
    Proper(Polyhedron),
}

/// An element of `G(R^q, C)`.
#[derive(Clone, Debug)]
pub struct UpperSet {
    cone: Arc<OrderCone>,
    kind: Kind,
}

impl PartialEq for UpperSet {
    fn eq(&self, other: &Self) -> bool {
        self.cone == other.cone && self.kind == other.kind
    }
}

impl Eq for UpperSet {}

impl UpperSet {
    pub fn bottom(cone: Arc<OrderCone>) -> Self {
        UpperSet {
            cone,
            kind: Kind::Bottom,
        }
    }

    pub fn top(cone: Arc<OrderCone>) -> Self {
        UpperSet {
            cone,
            kind: Kind::Top,
        }
    }

    /// Classify a polyhedron as an upper set, checking `P + C = P`.
    pub fn from_polyhedron(cone: Arc<OrderCone>, poly: Polyhedron) -> Result<Self, Error> {
        if poly.dim != cone.dim() {
            return Err(Error::Dimension {
                expected: cone.dim(),
                got: poly.dim,
            });
        }
        if poly.is_empty() {
            return Ok(UpperSet::top(cone));
        }
        if poly.is_whole_space() {
            return Ok(UpperSet::bottom(cone));
        }
        for g in cone.cone().generators() {
            if !poly.contains_dir(g)? {
                return Err(Error::InvalidProblem(
                    "polyhedron is not an upper set: recession cone misses C".into(),
                ));
            }
        }
        Ok(UpperSet {
            cone,
            kind: Kind::Proper(poly),
        })
    }

    /// The upper hull `cl co (P + C)` of an arbitrary polyhedron.
    pub fn hull_of(cone: Arc<OrderCone>, poly: &Polyhedron) -> Result<Self, Error> {
        let extended = poly.sum(cone.cone().as_polyhedron())?;
        UpperSet::from_polyhedron(cone, extended)
    }

    /// The point `z + C`.
    pub fn point(cone: Arc<OrderCone>, z: &RVec) -> Result<Self, Error> {
        let p = cone.cone().as_polyhedron().translate(z)?;
        UpperSet::from_polyhedron(cone, p)
    }

    /// The halfspace `{ z | zstar . z >= offset }`; requires nonzero
    /// `zstar` in `C^+` for the result to be an upper set.
    pub fn halfspace(
        cone: Arc<OrderCone>,
        zstar: &RVec,
        offset: Rational,
    ) -> Result<Self, Error> {
        let h = HRep::new(cone.dim(), vec![Ineq::new(zstar.clone(), offset)])?;
        UpperSet::from_polyhedron(cone, Polyhedron::from_hrep(&h))
    }

    pub fn cone(&self) -> &Arc<OrderCone> {
        &self.cone
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self.kind, Kind::Bottom)
    }

    pub fn is_top(&self) -> bool {
        matches!(self.kind, Kind::Top)
    }

    pub fn proper(&self) -> Option<&Polyhedron> {
        match &self.kind {
            Kind::Proper(p) => Some(p),
            _ => None,
        }
    }

    /// As a plain polyhedron (bottom = R^q, top = empty).
    pub fn to_polyhedron(&self) -> Polyhedron {
        match &self.kind {
            Kind::Bottom => Polyhedron::whole_space(self.cone.dim()),
            Kind::Top => Polyhedron::empty(self.cone.dim()),
            Kind::Proper(p) => p.clone(),
        }
    }

    /// Set inclusion `self >= other` in the containment sense.
    pub fn contains_set(&self, other: &UpperSet) -> Result<bool, Error> {
        self.check_cone(other)?;
        Ok(match (&self.kind, &other.kind) {
            (Kind::Bottom, _) => true,
            (_, Kind::Top) => true,
            (Kind::Top, _) => false,
            (_, Kind::Bottom) => false,
            (Kind::Proper(a), Kind::Proper(b)) => b.subset_of(a)?,
        })
    }

    pub fn contains_point(&self, z: &RVec) -> Result<bool, Error> {
        match &self.kind {
            Kind::Bottom => Ok(true),
            Kind::Top => Ok(false),
            Kind::Proper(p) => p.contains(z),
        }
    }

    fn check_cone(&self, other: &UpperSet) -> Result<(), Error> {
        if self.cone == other.cone {
            Ok(())
        } else {
            Err(Error::ConeMismatch)
        }
    }

    /// Minkowski sum `cl(A + B)`. Top absorbs; bottom plus anything
    /// nonempty is bottom.
    pub fn sum(&self, other: &UpperSet) -> Result<UpperSet, Error> {
        self.check_cone(other)?;
        if self.is_top() || other.is_top() {
            return Ok(UpperSet::top(self.cone.clone()));
        }
        if self.is_bottom() || other.is_bottom() {
            return Ok(UpperSet::bottom(self.cone.clone()));
        }
        let p = self
            .proper()
            .unwrap()
            .sum(other.proper().unwrap())?;
        UpperSet::from_polyhedron(self.cone.clone(), p)
    }

    /// Scaling: elementwise for `t > 0`; `t = 0` returns the cone `C`
    /// itself, for every operand including top and bottom.
    pub fn scale(&self, t: &Rational) -> Result<UpperSet, Error> {
        if t.is_negative() {
            return Err(Error::InvalidProblem("scale expects t >= 0".into()));
        }
        if t.is_zero() {
            return UpperSet::from_polyhedron(
                self.cone.clone(),
                self.cone.cone().as_polyhedron().clone(),
            );
        }
        Ok(match &self.kind {
            Kind::Bottom => UpperSet::bottom(self.cone.clone()),
            Kind::Top => UpperSet::top(self.cone.clone()),
            Kind::Proper(p) => UpperSet {
                cone: self.cone.clone(),
                kind: Kind::Proper(p.scale(t)),
            },
        })
    }

    /// Inf-residuation `A -. B = { z | B + z <= A }`, the greatest `D`
    /// with `B + D <= A`.
    pub fn residual(&self, other: &UpperSet) -> Result<UpperSet, Error> {
        self.check_cone(other)?;
        let cone = self.cone.clone();
        match (&self.kind, &other.kind) {
            // B empty: every z qualifies
            (_, Kind::Top) => Ok(UpperSet::bottom(cone)),
            (Kind::Bottom, _) => Ok(UpperSet::bottom(cone)),
            (Kind::Top, _) => Ok(UpperSet::top(cone)),
            (Kind::Proper(_), Kind::Bottom) => Ok(UpperSet::top(cone)),
            (Kind::Proper(a), Kind::Proper(b)) => {
                let bv = b.vrep().expect("proper");
                // every recession direction of B must recede in A
                for d in &bv.directions {
                    if !a.contains_dir(d)? {
                        return Ok(UpperSet::top(cone));
                    }
                }
                // intersection of the point translates A - p
                let ah = a.hrep().expect("proper");
                let mut rows = Vec::with_capacity(ah.ineqs.len());
                for iq in &ah.ineqs {
                    let shift = bv
                        .points
                        .iter()
                        .map(|p| iq.normal.dot(p))
                        .min()
                        .expect("nonempty points");
                    rows.push(Ineq::new(iq.normal.clone(), &iq.offset - &shift));
                }
                let h = HRep::new(cone.dim(), rows)?;
                UpperSet::from_polyhedron(cone, Polyhedron::from_hrep(&h))
            }
        }
    }
}

/// Finite nonempty family over a shared ordering cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    cone: Arc<OrderCone>,
    members: Vec<UpperSet>,
}

impl SetFamily {
    pub fn new(cone: Arc<OrderCone>, members: Vec<UpperSet>) -> Result<Self, Error> {
        if members.is_empty() {
            return Err(Error::InvalidProblem("family must be nonempty".into()));
        }
        for m in &members {
            if *m.cone() != cone {
                return Err(Error::ConeMismatch);
            }
        }
        Ok(SetFamily { cone, members })
    }

    pub fn cone(&self) -> &Arc<OrderCone> {
        &self.cone
    }

    pub fn members(&self) -> &[UpperSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn select(&self, indices: &[usize]) -> Result<SetFamily, Error> {
        let members = indices
            .iter()
            .map(|&i| {
                self.members
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::InvalidProblem(format!("index {i} out of range")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        SetFamily::new(self.cone.clone(), members)
    }

    /// `inf A = cl co U A`. Tops are dropped (unless all members are
    /// top); any bottom forces bottom.
    pub fn infimum(&self) -> UpperSet {
        if self.members.iter().any(UpperSet::is_bottom) {
            return UpperSet::bottom(self.cone.clone());
        }
        let mut points = Vec::new();
        let mut dirs = Vec::new();
        let mut saw_proper = false;
        for m in &self.members {
            if let Some(p) = m.proper() {
                saw_proper = true;
                let v = p.vrep().expect("proper");
                points.extend(v.points.iter().cloned());
                dirs.extend(v.directions.iter().cloned());
            }
        }
        if !saw_proper {
            return UpperSet::top(self.cone.clone());
        }
        let v = VRep::new(self.cone.dim(), points, dirs).expect("dims checked");
        UpperSet::from_polyhedron(self.cone.clone(), Polyhedron::from_vrep(&v))
            .expect("hull of upper sets is upper")
    }

    /// `sup A = intersection of A`; empty intersection is top.
    pub fn supremum(&self) -> UpperSet {
        if self.members.iter().any(UpperSet::is_top) {
            return UpperSet::top(self.cone.clone());
        }
        let mut rows: Vec<Ineq> = Vec::new();
        let mut saw_proper = false;
        for m in &self.members {
            if let Some(p) = m.proper() {
                saw_proper = true;
                rows.extend(p.hrep().expect("proper").ineqs.iter().cloned());
            }
        }
        if !saw_proper {
            return UpperSet::bottom(self.cone.clone());
        }
        let h = HRep::new(self.cone.dim(), rows).expect("dims checked");
        UpperSet::from_polyhedron(self.cone.clone(), Polyhedron::from_hrep(&h))
            .expect("intersection of upper sets is upper")
    }

    /// Indices of members minimal with respect to containment:
    /// `i` is minimal iff `A_j >= A_i` (as sets) implies `A_j = A_i`.
    pub fn minimal_elements(&self) -> Result<Vec<usize>, Error> {
        let mut out = Vec::new();
        'outer: for (i, a) in self.members.iter().enumerate() {
            for (j, b) in self.members.iter().enumerate() {
                if i == j {
                    continue;
                }
                if b.contains_set(a)? && !a.contains_set(b)? {
                    continue 'outer;
                }
            }
            out.push(i);
        }
        Ok(out)
    }

    /// Does the selection generate the same infimum as the full family?
    pub fn is_infimizer(&self, indices: &[usize]) -> Result<bool, Error> {
        let sub = self.select(indices)?;
        Ok(sub.infimum() == self.infimum())
    }

    /// Infimizer whose members are all minimal.
    pub fn is_solution(&self, indices: &[usize]) -> Result<bool, Error> {
        if !self.is_infimizer(indices)? {
            return Ok(false);
        }
        let minimal = self.minimal_elements()?;
        Ok(indices.iter().all(|i| minimal.contains(i)))
    }

    /// Domination property with its witnessing map: for every member a
    /// minimal member containing it. Finite families always satisfy it;
    /// the operation exists for API uniformity and the witnesses carry
    /// the content.
    pub fn has_domination_property(&self) -> Result<(bool, Vec<usize>), Error> {
        let witnesses = self.domination_witnesses()?;
        let minimal = self.minimal_elements()?;
        for (i, &w) in witnesses.iter().enumerate() {
            if !minimal.contains(&w) || !self.members[w].contains_set(&self.members[i])? {
                return Ok((false, witnesses));
            }
        }
        Ok((true, witnesses))
    }

    /// Finite families always dominate; returns the witnessing map
    /// index -> index of a minimal member containing it.
    pub fn domination_witnesses(&self) -> Result<Vec<usize>, Error> {
        let minimal = self.minimal_elements()?;
        let mut witnesses = Vec::with_capacity(self.members.len());
        for i in 0..self.members.len() {
            let mut cur = i;
            // climb strict containments until minimal
            loop {
                if minimal.contains(&cur) {
                    break;
                }
                let mut advanced = false;
                for (j, b) in self.members.iter().enumerate() {
                    if j != cur
                        && b.contains_set(&self.members[cur])?
                        && !self.members[cur].contains_set(b)?
                    {
                        cur = j;
                        advanced = true;
                        break;
                    }
                }
                if !advanced {
                    break;
                }
            }
            witnesses.push(cur);
        }
        Ok(witnesses)
    }
}

/// `A <= B` in the lower set relation: `B ⊆ A + C`.
/// Operands are arbitrary polyhedra, not necessarily upper sets.
pub fn set_rel_le(a: &Polyhedron, b: &Polyhedron, cone: &OrderCone) -> Result<bool, Error> {
    let extended = a.sum(cone.cone().as_polyhedron())?;
    b.subset_of(&extended)
}

/// `A <= B` in the upper set relation: `A ⊆ B - C`.
pub fn set_rel_le_dual(a: &Polyhedron, b: &Polyhedron, cone: &OrderCone) -> Result<bool, Error> {
    let neg = Cone::from_generators(
        cone.dim(),
        cone.cone().generators().iter().map(|g| -g).collect(),
    )?;
    let extended = b.sum(neg.as_polyhedron())?;
    a.subset_of(&extended)
}

/// One face of the weakly minimal boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryFace {
    pub normal: RVec,
    pub offset: Rational,
    pub face: VRep,
}

/// Weakly minimal points of an upper set: the union of the faces of `A`
/// supported by normals in `C^+ \ {0}`. Requires `int C` nonempty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeaklyMinimal {
    /// `A = R^q`: marker `{-infinity}`.
    MinusInfinity,
    /// `A` empty: marker `{+infinity}`.
    PlusInfinity,
    Faces(Vec<BoundaryFace>),
}

pub fn weakly_minimal_points(a: &UpperSet) -> Result<WeaklyMinimal, Error> {
    let cone = a.cone();
    if !cone.cone().is_full_dim() {
        return Err(Error::EmptyInterior);
    }
    let poly = match &a.kind {
        Kind::Bottom => return Ok(WeaklyMinimal::MinusInfinity),
        Kind::Top => return Ok(WeaklyMinimal::PlusInfinity),
        Kind::Proper(p) => p,
    };
    let v = poly.vrep().expect("proper");
    let mut faces = Vec::new();
    for iq in poly.facets() {
        // facet normals of an upper set always lie in C^+
        debug_assert!(cone.in_dual(&iq.normal));
        if !cone.in_dual(&iq.normal) || iq.normal.is_zero() {
            continue;
        }
        let points: Vec<RVec> = v
            .points
            .iter()
            .filter(|p| iq.normal.dot(p) == iq.offset)
            .cloned()
            .collect();
        let dirs: Vec<RVec> = v
            .directions
            .iter()
            .filter(|d| iq.normal.dot(d).is_zero())
            .cloned()
            .collect();
        faces.push(BoundaryFace {
            normal: iq.normal.clone(),
            offset: iq.offset.clone(),
            face: VRep::new(cone.dim(), points, dirs)?.canonicalized(),
        });
    }
    Ok(WeaklyMinimal::Faces(faces))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vv(xs: &[i64]) -> RVec {
        RVec::from_ints(xs)
    }

    fn orthant2() -> Arc<OrderCone> {
        Arc::new(OrderCone::orthant(2))
    }

    /// The vertical ordering cone {0} x R_+ in R^2.
    fn vertical_cone() -> Arc<OrderCone> {
        Arc::new(OrderCone::new(Cone::from_generators(2, vec![vv(&[0, 1])]).unwrap()).unwrap())
    }

    /// A_t = [-1+t, t] x R_+ for the running minimality example.
    fn strip(cone: &Arc<OrderCone>, t: Rational) -> UpperSet {
        let lo = &t - &Rational::one();
        let v = VRep::new(
            2,
            vec![RVec(vec![lo, Rational::zero()]), RVec(vec![t, Rational::zero()])],
            vec![vv(&[0, 1])],
        )
        .unwrap();
        UpperSet::from_polyhedron(cone.clone(), Polyhedron::from_vrep(&v)).unwrap()
    }

    #[test]
    fn strip_family_infimum() {
        let cone = vertical_cone();
        let fam = SetFamily::new(
            cone.clone(),
            vec![
                strip(&cone, Rational::zero()),
                strip(&cone, Rational::new(1, 2)),
                strip(&cone, Rational::one()),
            ],
        )
        .unwrap();
        let inf = fam.infimum();
        let expected = UpperSet::from_polyhedron(
            cone.clone(),
            Polyhedron::from_vrep(
                &VRep::new(2, vec![vv(&[-1, 0]), vv(&[1, 0])], vec![vv(&[0, 1])]).unwrap(),
            ),
        )
        .unwrap();
        assert_eq!(inf, expected);
        // all three members are minimal
        assert_eq!(fam.minimal_elements().unwrap(), vec![0, 1, 2]);
        // {A_0, A_1} is a solution, {A_1/2} is not an infimizer
        assert!(fam.is_infimizer(&[0, 2]).unwrap());
        assert!(fam.is_solution(&[0, 2]).unwrap());
        assert!(!fam.is_infimizer(&[1]).unwrap());
        assert!(fam.is_infimizer(&[0, 1, 2]).unwrap());
        // domination holds with identity witnesses
        assert_eq!(fam.domination_witnesses().unwrap(), vec![0, 1, 2]);
        let (dominated, witnesses) = fam.has_domination_property().unwrap();
        assert!(dominated);
        assert_eq!(witnesses, vec![0, 1, 2]);
    }

    #[test]
    fn infimum_of_two_points_is_hull() {
        let cone = orthant2();
        let a = UpperSet::point(cone.clone(), &vv(&[1, 0])).unwrap();
        let b = UpperSet::point(cone.clone(), &vv(&[0, 1])).unwrap();
        let fam = SetFamily::new(cone.clone(), vec![a.clone(), b]).unwrap();
        let inf = fam.infimum();
        let expected = UpperSet::from_polyhedron(
            cone.clone(),
            Polyhedron::from_vrep(
                &VRep::new(
                    2,
                    vec![vv(&[1, 0]), vv(&[0, 1])],
                    vec![vv(&[1, 0]), vv(&[0, 1])],
                )
                .unwrap(),
            ),
        )
        .unwrap();
        assert_eq!(inf, expected);
        // singleton family
        let single = SetFamily::new(cone.clone(), vec![a.clone()]).unwrap();
        assert_eq!(single.infimum(), a);
    }

    #[test]
    fn supremum_examples() {
        let cone = orthant2();
        let a = UpperSet::point(cone.clone(), &vv(&[1, 0])).unwrap();
        let b = UpperSet::point(cone.clone(), &vv(&[0, 1])).unwrap();
        let fam = SetFamily::new(cone.clone(), vec![a, b]).unwrap();
        let sup = fam.supremum();
        assert_eq!(sup, UpperSet::point(cone.clone(), &vv(&[1, 1])).unwrap());

        let c1 = Arc::new(OrderCone::orthant(1));
        let chain = SetFamily::new(
            c1.clone(),
            vec![
                UpperSet::point(c1.clone(), &vv(&[0])).unwrap(),
                UpperSet::point(c1.clone(), &vv(&[1])).unwrap(),
                UpperSet::point(c1.clone(), &vv(&[2])).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(
            chain.supremum(),
            UpperSet::point(c1.clone(), &vv(&[2])).unwrap()
        );
    }

    #[test]
    fn sum_conventions() {
        let c1 = Arc::new(OrderCone::orthant(1));
        let a = UpperSet::point(c1.clone(), &vv(&[2])).unwrap();
        let b = UpperSet::point(c1.clone(), &vv(&[3])).unwrap();
        assert_eq!(
            a.sum(&b).unwrap(),
            UpperSet::point(c1.clone(), &vv(&[5])).unwrap()
        );
        // top absorbs
        let top = UpperSet::top(c1.clone());
        assert!(a.sum(&top).unwrap().is_top());
        // bottom + proper = bottom
        let bot = UpperSet::bottom(c1.clone());
        assert!(a.sum(&bot).unwrap().is_bottom());
    }

    #[test]
    fn scale_conventions() {
        let cone = orthant2();
        let top = UpperSet::top(cone.clone());
        // 0 * empty = C
        let zeroed = top.scale(&Rational::zero()).unwrap();
        assert_eq!(
            zeroed,
            UpperSet::from_polyhedron(cone.clone(), cone.cone().as_polyhedron().clone()).unwrap()
        );
        let a = UpperSet::point(cone.clone(), &vv(&[1, 1])).unwrap();
        assert_eq!(
            a.scale(&Rational::from_int(2)).unwrap(),
            UpperSet::point(cone.clone(), &vv(&[2, 2])).unwrap()
        );
        assert_eq!(a.scale(&Rational::one()).unwrap(), a);
    }

    #[test]
    fn residual_one_dimensional_identity() {
        // (a + R_+) -. (b + R_+) = (a - b) + R_+
        let c1 = Arc::new(OrderCone::orthant(1));
        let a = UpperSet::point(c1.clone(), &vv(&[5])).unwrap();
        let b = UpperSet::point(c1.clone(), &vv(&[2])).unwrap();
        assert_eq!(
            a.residual(&b).unwrap(),
            UpperSet::point(c1.clone(), &vv(&[3])).unwrap()
        );
    }

    #[test]
    fn residual_cone_by_itself() {
        let cone = orthant2();
        let a = UpperSet::from_polyhedron(cone.clone(), cone.cone().as_polyhedron().clone())
            .unwrap();
        assert_eq!(a.residual(&a).unwrap(), a);
    }

    #[test]
    fn residual_halfspace_by_hull() {
        // H+((1,1)) -. (conv{(1,0),(0,1)} + R^2_+) = {z | z1+z2 >= -1}
        let cone = orthant2();
        let h = UpperSet::halfspace(cone.clone(), &vv(&[1, 1]), Rational::zero()).unwrap();
        let b = UpperSet::from_polyhedron(
            cone.clone(),
            Polyhedron::from_vrep(
                &VRep::new(
                    2,
                    vec![vv(&[1, 0]), vv(&[0, 1])],
                    vec![vv(&[1, 0]), vv(&[0, 1])],
                )
                .unwrap(),
            ),
        )
        .unwrap();
        let expected =
            UpperSet::halfspace(cone.clone(), &vv(&[1, 1]), Rational::from_int(-1)).unwrap();
        assert_eq!(h.residual(&b).unwrap(), expected);
    }

    #[test]
    fn galois_law_spot_check() {
        let cone = orthant2();
        let a = UpperSet::point(cone.clone(), &vv(&[0, 0])).unwrap();
        let b = UpperSet::point(cone.clone(), &vv(&[1, 1])).unwrap();
        let r = a.residual(&b).unwrap();
        // D <= A -. B  <=>  B + D <= A, for D = r itself
        assert!(r.contains_set(&r).unwrap());
        assert!(a.contains_set(&b.sum(&r).unwrap()).unwrap());
    }

    #[test]
    fn relations() {
        let cone = Arc::new(OrderCone::orthant(1));
        let seg = |lo: i64, hi: i64| {
            Polyhedron::from_vrep(&VRep::new(1, vec![vv(&[lo]), vv(&[hi])], vec![]).unwrap())
        };
        let a = seg(0, 1);
        let b = seg(2, 3);
        assert!(set_rel_le(&a, &b, &cone).unwrap());
        assert!(!set_rel_le(&b, &a, &cone).unwrap());
        assert!(set_rel_le(&a, &a, &cone).unwrap());

        // A = {(0,0)}, B = {(1,-1)}, C = R^2_+: not related
        let cone2 = OrderCone::orthant(2);
        let pa = Polyhedron::from_vrep(&VRep::new(2, vec![vv(&[0, 0])], vec![]).unwrap());
        let pb = Polyhedron::from_vrep(&VRep::new(2, vec![vv(&[1, -1])], vec![]).unwrap());
        assert!(!set_rel_le(&pa, &pb, &cone2).unwrap());

        // duality: A <=_C B iff -B <='_C -A
        let na = Polyhedron::from_vrep(&VRep::new(1, vec![vv(&[0]), vv(&[-1])], vec![]).unwrap());
        let nb = Polyhedron::from_vrep(&VRep::new(1, vec![vv(&[-2]), vv(&[-3])], vec![]).unwrap());
        assert!(set_rel_le_dual(&nb, &na, &cone).unwrap());
    }

    #[test]
    fn total_order_tests() {
        // halfplane: total
        let h = OrderCone::new(Cone::from_inequalities(2, vec![vv(&[1, 1])]).unwrap()).unwrap();
        assert!(h.is_total_order());
        // orthant: not total
        assert!(!OrderCone::orthant(2).is_total_order());
        // vertical ray: not total (lower-dimensional)
        let v = OrderCone::new(Cone::from_generators(2, vec![vv(&[0, 1])]).unwrap()).unwrap();
        assert!(!v.is_total_order());
        // 1-d nonnegative ray: total
        assert!(OrderCone::orthant(1).is_total_order());
    }

    #[test]
    fn minimal_elements_chain() {
        let c1 = Arc::new(OrderCone::orthant(1));
        let fam = SetFamily::new(
            c1.clone(),
            vec![
                UpperSet::point(c1.clone(), &vv(&[0])).unwrap(),
                UpperSet::point(c1.clone(), &vv(&[1])).unwrap(),
            ],
        )
        .unwrap();
        // [0, inf) strictly contains [1, inf): only the superset is minimal
        assert_eq!(fam.minimal_elements().unwrap(), vec![0]);
        assert_eq!(fam.domination_witnesses().unwrap(), vec![0, 0]);
        let single = SetFamily::new(c1.clone(), vec![UpperSet::point(c1.clone(), &vv(&[7])).unwrap()])
            .unwrap();
        assert_eq!(single.minimal_elements().unwrap(), vec![0]);
    }

    #[test]
    fn weakly_minimal_faces() {
        let cone = orthant2();
        // A = conv{(1,0),(0,1)} + R^2_+: all facets carry normals in C^+,
        // so the weakly minimal set is the whole boundary
        let a = UpperSet::from_polyhedron(
            cone.clone(),
            Polyhedron::from_vrep(
                &VRep::new(
                    2,
                    vec![vv(&[1, 0]), vv(&[0, 1])],
                    vec![vv(&[1, 0]), vv(&[0, 1])],
                )
                .unwrap(),
            ),
        )
        .unwrap();
        let wm = weakly_minimal_points(&a).unwrap();
        match wm {
            WeaklyMinimal::Faces(fs) => {
                assert_eq!(fs.len(), 3);
                let seg = fs
                    .iter()
                    .find(|f| f.normal == vv(&[1, 1]))
                    .expect("diagonal facet");
                assert_eq!(seg.face.points, vec![vv(&[0, 1]), vv(&[1, 0])]);
                assert!(seg.face.directions.is_empty());
            }
            other => panic!("expected faces, got {other:?}"),
        }
        // orthant: two boundary rays
        let orth = UpperSet::from_polyhedron(cone.clone(), cone.cone().as_polyhedron().clone())
            .unwrap();
        match weakly_minimal_points(&orth).unwrap() {
            WeaklyMinimal::Faces(fs) => assert_eq!(fs.len(), 2),
            other => panic!("expected faces, got {other:?}"),
        }
        // bottom marker
        assert_eq!(
            weakly_minimal_points(&UpperSet::bottom(cone.clone())).unwrap(),
            WeaklyMinimal::MinusInfinity
        );
        // empty interior rejected
        let thin = vertical_cone();
        let member = strip(&thin, Rational::zero());
        assert!(matches!(
            weakly_minimal_points(&member),
            Err(Error::EmptyInterior)
        ));
    }

    #[test]
    fn sup_add_distribution_strictness() {
        // sup(A (+) B) can strictly contain (sup A) (+) B: take two
        // disjoint strips over the vertical cone and B = R^2.
        let cone = vertical_cone();
        let a0 = strip(&cone, Rational::zero());
        let far = UpperSet::from_polyhedron(
            cone.clone(),
            Polyhedron::from_vrep(
                &VRep::new(2, vec![vv(&[5, 0]), vv(&[6, 0])], vec![vv(&[0, 1])]).unwrap(),
            ),
        )
        .unwrap();
        let bottom = UpperSet::bottom(cone.clone());
        let fam = SetFamily::new(cone.clone(), vec![a0.clone(), far.clone()]).unwrap();
        // sup A = empty set
        assert!(fam.supremum().is_top());
        let sum_fam = SetFamily::new(
            cone.clone(),
            vec![a0.sum(&bottom).unwrap(), far.sum(&bottom).unwrap()],
        )
        .unwrap();
        let lhs = sum_fam.supremum();
        let rhs = fam.supremum().sum(&bottom).unwrap();
        assert!(lhs.is_bottom());
        assert!(rhs.is_top());
        assert!(lhs.contains_set(&rhs).unwrap());
        assert_ne!(lhs, rhs);
    }
}
