//! Usual and nested permutohedra: vertices, appropriate choices of `(M, N)`,
//! facet values and centralization.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::defcone::{BVector, Domain};
use crate::error::{Error, Result};
use crate::exactgeom::VPolytope;
use crate::posets::{all_pairs, all_partitions, all_perms, all_subsets, inverse, structure_type, PermPair};
use crate::rat::{int, sum, Rat, RatVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaBeta {
    pub alpha: RatVec,
    pub beta: RatVec,
    pub m: Rat,
    pub n: Rat,
}

fn strictly_increasing(v: &[Rat]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

impl AlphaBeta {
    pub fn new(alpha: RatVec, beta: RatVec, m: Rat, n: Rat) -> Result<Self> {
        if !strictly_increasing(&alpha) || !strictly_increasing(&beta) {
            return Err(Error::NotIncreasing);
        }
        if beta.len() + 1 != alpha.len() {
            return Err(Error::DegenerateInput(format!("alpha has {} entries, beta {}", alpha.len(), beta.len())));
        }
        if !m.is_positive() || !n.is_positive() {
            return Err(Error::DegenerateInput("M and N must be positive".into()));
        }
        Ok(AlphaBeta { alpha, beta, m, n })
    }

    pub fn d(&self) -> usize {
        self.beta.len()
    }

    fn beta_at(&self, tau: &[usize], i: usize) -> Rat {
        // tau(0) = tau(d+1) = 0 and beta at 0 is 0
        if i == 0 || i > tau.len() {
            Rat::zero()
        } else {
            self.beta[tau[i - 1] - 1].clone()
        }
    }

    /// `M alpha_i + N (beta_{tau(i-1)} - beta_{tau(i)})` for `i = 1..d+1`.
    pub fn coefficients(&self, tau: &[usize]) -> RatVec {
        (1..=self.alpha.len())
            .map(|i| &self.m * &self.alpha[i - 1] + &self.n * (self.beta_at(tau, i - 1) - self.beta_at(tau, i)))
            .collect()
    }
}

/// Every `(tau, i)` where the coefficient sequence fails to increase from
/// `i` to `i+1`.
pub fn appropriate_failures(ab: &AlphaBeta) -> Vec<(Vec<usize>, usize)> {
    let mut out = Vec::new();
    for tau in all_perms(ab.d()) {
        let c = ab.coefficients(&tau);
        for i in 1..c.len() {
            if c[i - 1] >= c[i] {
                out.push((tau.clone(), i));
            }
        }
    }
    out
}

/// `None` when `(M, N)` is appropriate, else the first failing `(tau, i)`.
pub fn is_appropriate(ab: &AlphaBeta) -> Option<(Vec<usize>, usize)> {
    for tau in all_perms(ab.d()) {
        let c = ab.coefficients(&tau);
        if let Some(i) = (1..c.len()).find(|&i| c[i - 1] >= c[i]) {
            return Some((tau, i));
        }
    }
    None
}

fn require_appropriate(ab: &AlphaBeta) -> Result<()> {
    match is_appropriate(ab) {
        Some((tau, index)) => Err(Error::NotAppropriate { tau, index }),
        None => Ok(()),
    }
}

/// `v_pi = (alpha_{pi(1)}, ..., alpha_{pi(d+1)})`.
pub fn perm_vertex(alpha: &[Rat], pi: &[usize]) -> RatVec {
    pi.iter().map(|&j| alpha[j - 1].clone()).collect()
}

pub fn perm_vertices(alpha: &[Rat]) -> Result<VPolytope> {
    if !strictly_increasing(alpha) {
        return Err(Error::NotIncreasing);
    }
    let n = alpha.len();
    VPolytope::new(n, all_perms(n).iter().map(|pi| perm_vertex(alpha, pi)).collect())
}

/// `sum_i c_i e_{pi^{-1}(i)}` with the coefficients of `tau`.
pub fn nested_vertex(ab: &AlphaBeta, p: &PermPair) -> RatVec {
    let c = ab.coefficients(&p.tau);
    let inv = inverse(&p.pi);
    let mut v = vec![Rat::zero(); c.len()];
    for (i, ci) in c.into_iter().enumerate() {
        v[inv[i] - 1] = ci;
    }
    v
}

/// All `(d+1)! d!` labeled vertices.
pub fn nested_vertices_labeled(ab: &AlphaBeta) -> Result<Vec<(PermPair, RatVec)>> {
    require_appropriate(ab)?;
    let out: Vec<(PermPair, RatVec)> = all_pairs(ab.d()).into_iter().map(|p| {
        let v = nested_vertex(ab, &p);
        (p, v)
    }).collect();
    let mut seen = BTreeMap::new();
    for (p, v) in &out {
        if let Some(q) = seen.insert(v.clone(), p.clone()) {
            return Err(Error::DegenerateInput(format!("pairs {q:?} and {p:?} share a vertex")));
        }
    }
    Ok(out)
}

pub fn nested_vertices(ab: &AlphaBeta) -> Result<VPolytope> {
    let labeled = nested_vertices_labeled(ab)?;
    VPolytope::new(ab.alpha.len(), labeled.into_iter().map(|(_, v)| v).collect())
}

/// `b_T = M sum_i i (sum of alpha over block i's positions) + N sum of the
/// top k entries of beta`, where `T` has `k+1` blocks; the top included.
pub fn nested_facet_b(ab: &AlphaBeta) -> Result<BVector> {
    require_appropriate(ab)?;
    let d = ab.d();
    let mut values = BTreeMap::new();
    for t in all_partitions(d, false) {
        let pos = structure_type(&t).positions;
        let mut a = Rat::zero();
        for i in 1..pos.len() {
            let block: Rat = sum(&ab.alpha[pos[i - 1]..pos[i]]);
            a += int(i as i64) * block;
        }
        let k = t.blocks.len() - 1;
        let bsum = sum(&ab.beta[d - k..]);
        values.insert(t.to_string(), &ab.m * a + &ab.n * bsum);
    }
    BVector::new(Domain::Partitions, d, values)
}

/// `b_S` = sum of the `|S|` largest entries of alpha, for every nonempty `S`.
pub fn usual_facet_b(alpha: &[Rat]) -> Result<BVector> {
    if !strictly_increasing(alpha) {
        return Err(Error::NotIncreasing);
    }
    let d = alpha.len() - 1;
    let mut values = BTreeMap::new();
    for s in all_subsets(d, false).into_iter().filter(|s| !s.elements.is_empty()) {
        let k = s.elements.len();
        values.insert(s.to_string(), sum(&alpha[alpha.len() - k..]));
    }
    BVector::new(Domain::Subsets, d, values)
}

/// Translates a polytope with constant coordinate sum to sum zero.
pub fn centralize(p: &VPolytope) -> Result<VPolytope> {
    let s = p.constant_sum().ok_or(Error::NotConstantSum)?;
    let shift = -(s / int(p.dim as i64));
    Ok(p.translate(&vec![shift; p.dim]))
}

pub use crate::defcone::centralize_b;

/// For each labeled vertex, whether it lies in the relative interior-closed
/// region where `x` and its first differences follow `(pi, tau)`.
pub fn vertex_in_own_cone_report(ab: &AlphaBeta) -> Result<Vec<(PermPair, bool)>> {
    let labeled = nested_vertices_labeled(ab)?;
    Ok(labeled
        .into_iter()
        .map(|(p, v)| {
            let inv = inverse(&p.pi);
            let sorted: RatVec = inv.iter().map(|&j| v[j - 1].clone()).collect();
            let ordered = sorted.windows(2).all(|w| w[0] <= w[1]);
            let diffs: RatVec = sorted.windows(2).map(|w| &w[1] - &w[0]).collect();
            let tinv = inverse(&p.tau);
            let diff_ordered = tinv.windows(2).all(|w| diffs[w[0] - 1] <= diffs[w[1] - 1]);
            (p, ordered && diff_ordered)
        })
        .collect())
}
