//! Seeded generators for property checks.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::defcone::{hrep_from_subsets, tight_b, BVector, Domain};
use crate::error::Result;
use crate::exactgeom::vertex_enumeration;
use crate::permutohedra::{is_appropriate, nested_facet_b, AlphaBeta};
use crate::posets::all_subsets;
use crate::rat::{int, Rat};

pub const DEFAULT_SEED: u64 = 20_240_601;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `sum_j min(w_j(S), c_j) + m(S)` with nonnegative weights `w_j`, which is
/// submodular with `b_∅ = 0`; the modular part `m` may be negative.
pub fn random_submodular(rng: &mut impl Rng, d: usize) -> BVector {
    let n = d + 1;
    let terms = rng.gen_range(1..=3);
    let caps: Vec<(Vec<i64>, i64)> =
        (0..terms).map(|_| ((0..n).map(|_| rng.gen_range(0..=4)).collect(), rng.gen_range(1..=8))).collect();
    let modular: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
    let values = all_subsets(d, false)
        .into_iter()
        .filter(|s| !s.elements.is_empty())
        .map(|s| {
            let weight = |w: &[i64]| s.elements.iter().map(|&i| w[i - 1]).sum::<i64>();
            let v = caps.iter().map(|(w, c)| weight(w).min(*c)).sum::<i64>() + weight(&modular);
            (s.to_string(), int(v))
        })
        .collect();
    BVector { domain: Domain::Subsets, d, values }
}

/// Moves one random entry by a nonzero amount in `[-3, 3]`.
pub fn perturb(rng: &mut impl Rng, b: &BVector) -> BVector {
    let labels: Vec<&String> = b.values.keys().collect();
    let label = (*labels.choose(rng).expect("nonempty")).clone();
    let mut delta = 0;
    while delta == 0 {
        delta = rng.gen_range(-3..=3);
    }
    let v = b.values[&label].clone() + int(delta);
    b.with(&label, v)
}

fn increasing(rng: &mut impl Rng, len: usize) -> Vec<Rat> {
    let mut x: i64 = rng.gen_range(-5..=5);
    (0..len)
        .map(|_| {
            x += rng.gen_range(1..=4);
            int(x)
        })
        .collect()
}

/// Random increasing integer `alpha`, `beta` and `N`, with `M` doubled until
/// the pair is appropriate.
pub fn random_appropriate(rng: &mut impl Rng, d: usize) -> AlphaBeta {
    let alpha = increasing(rng, d + 1);
    let beta = increasing(rng, d);
    let n = int(rng.gen_range(1..=3));
    let mut m = int(1);
    loop {
        let ab = AlphaBeta::new(alpha.clone(), beta.clone(), m.clone(), n.clone()).expect("increasing, positive");
        if is_appropriate(&ab).is_none() {
            return ab;
        }
        m *= int(2);
    }
}

fn combine(terms: &[(i64, &BVector)]) -> BVector {
    let mut values: BTreeMap<String, Rat> = BTreeMap::new();
    for (c, b) in terms {
        for (l, v) in &b.values {
            *values.entry(l.clone()).or_insert_with(|| int(0)) += int(*c) * v;
        }
    }
    let first = terms[0].1;
    BVector { domain: first.domain, d: first.d, values }
}

/// A usual generalized permutohedron read on partition directions: a point
/// on the boundary of the nested deformation cone.
pub fn random_nested_boundary(rng: &mut impl Rng, d: usize) -> Result<BVector> {
    let usual = vertex_enumeration(&hrep_from_subsets(&random_submodular(rng, d))?)?.polytope();
    tight_b(Domain::Partitions, d, &usual)
}

/// A nonnegative combination of a nested permutohedron and a usual
/// generalized permutohedron, read on partition directions.
pub fn random_nested_member(rng: &mut impl Rng, d: usize) -> Result<BVector> {
    let nested = nested_facet_b(&random_appropriate(rng, d))?;
    let usual = random_nested_boundary(rng, d)?;
    let weights = [(rng.gen_range(0..=2), &nested), (rng.gen_range(0..=3), &usual)];
    if weights.iter().all(|(c, _)| *c == 0) {
        return Ok(nested);
    }
    Ok(combine(&weights))
}
