use num_traits::One;

use super::normal_fan::GeneralFan;
use super::ray::{int_to_rat, Ambient};
use crate::linalg::cone_contains;
use crate::rat::{Rat, RatVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoarseningWitness {
    pub fine_cone: usize,
    pub generator: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coarsening {
    pub holds: bool,
    pub witness: Option<CoarseningWitness>,
}

fn lineality(ambient: Ambient, n: usize) -> Vec<RatVec> {
    match ambient {
        Ambient::Quotient => vec![vec![Rat::one(); n]],
        Ambient::Linear => Vec::new(),
    }
}

/// Whether `x` lies in the cone spanned by `gens` (modulo 1 in quotient mode).
pub fn in_cone(ambient: Ambient, gens: &[RatVec], x: &[Rat]) -> bool {
    cone_contains(gens, &lineality(ambient, x.len()), x)
}

/// True iff every maximal cone of `fine` lies inside some maximal cone of
/// `coarse`. On failure the witness names the fine cone and the first of its
/// generators missing from the coarse cone that holds the most of them.
pub fn coarsens(fine: &GeneralFan, coarse: &GeneralFan) -> Coarsening {
    let coarse_gens: Vec<Vec<RatVec>> = (0..coarse.cones.len()).map(|i| coarse.cone_vectors(i)).collect();
    let fine_reps = fine.rep_of();
    for (fi, cone) in fine.cones.iter().enumerate() {
        let gens: Vec<(String, RatVec)> =
            cone.iter().map(|l| (l.clone(), int_to_rat(&fine_reps[l]))).collect();
        let mut best: Option<(usize, String)> = None;
        let mut ok = false;
        for cg in &coarse_gens {
            let inside = gens
                .iter()
                .take_while(|(_, g)| in_cone(coarse.ambient, cg, g))
                .count();
            if inside == gens.len() {
                ok = true;
                break;
            }
            if best.as_ref().is_none_or(|(b, _)| inside > *b) {
                best = Some((inside, gens[inside].0.clone()));
            }
        }
        if !ok {
            let generator = best.map(|(_, g)| g).unwrap_or_default();
            return Coarsening { holds: false, witness: Some(CoarseningWitness { fine_cone: fi, generator }) };
        }
    }
    Coarsening { holds: true, witness: None }
}

/// Number of maximal cones of `fine` whose interior sample point (sum of
/// generators) lies in cone `ci` of `coarse`.
pub fn fine_cones_inside(fine: &GeneralFan, coarse: &GeneralFan, ci: usize) -> usize {
    let cg = coarse.cone_vectors(ci);
    (0..fine.cones.len())
        .filter(|&fi| {
            let gens = fine.cone_vectors(fi);
            let mut x = vec![Rat::from_integer(0.into()); gens[0].len()];
            for g in &gens {
                x = crate::rat::add(&x, g);
            }
            in_cone(coarse.ambient, &cg, &x)
        })
        .count()
}
