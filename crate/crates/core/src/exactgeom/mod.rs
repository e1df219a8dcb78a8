//! Exact polyhedral ground truth: rays in the quotient space, H- and
//! V-representations, brute-force vertex enumeration, normal fans and
//! coarsening checks.

mod coarsen;
mod normal_fan;
mod polytope;
mod ray;

pub use coarsen::{coarsens, fine_cones_inside, in_cone, Coarsening, CoarseningWitness};
pub use normal_fan::{detect_ambient, facets, normal_fan, Facet, Facets, FanRay, GeneralFan};
pub use polytope::{
    enumerate_points, enumerate_with_equalities, rows_by_label, tight_rhs, vertex_enumeration, Enumerated,
    HPolytope, HRow, VPolytope,
};
pub use ray::{
    canonical_in, canonical_ray, int_to_rat, lattice_normal, primitive_integer, rep_label, Ambient, QuotientRay,
};

use crate::error::Result;
use crate::linalg::simplicial_coefficients;
use crate::rat::{Rat, RatVec};

/// Coefficients of `x` in the simplicial cone spanned by `rays` modulo the
/// all-one vector, or `None` if `x` lies outside.
pub fn simplicial_cone_membership(rays: &[QuotientRay], x: &[Rat]) -> Result<Option<RatVec>> {
    let gens: Vec<RatVec> = rays.iter().map(|r| r.to_ratvec()).collect();
    let ones = vec![Rat::from_integer(1.into()); x.len()];
    simplicial_coefficients(&gens, &[ones], x)
}
