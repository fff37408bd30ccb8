//! Exact-arithmetic toolkit for set optimization over polyhedral geometry.
//!
//! The crate provides, bottom up: exact rational scalars/vectors, H- and
//! V-representations of polyhedra with double-description conversion, an
//! exact simplex LP solver with self-verifying certificates, the complete
//! lattice of closed convex upper sets with its residuated structure,
//! scalarization-based set-valued convex analysis (support functions,
//! conjugates, directional derivatives, subdifferentials), a linear
//! vector optimization solver with set-valued and geometric duality, and
//! a set-valued risk measure engine for finite-scenario markets.

pub mod error;
pub mod extended;
pub mod geom;
pub mod json;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod lvo;
pub mod num;
pub mod risk;
pub mod scalar;

pub use error::Error;
pub use extended::ExtendedRational;
pub use geom::{Cone, HRep, Ineq, Polyhedron, VRep};
pub use lattice::{OrderCone, SetFamily, UpperSet};
pub use linalg::{RMat, RVec};
pub use num::Rational;
