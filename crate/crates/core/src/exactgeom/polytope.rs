use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{One, Signed};
use rayon::prelude::*;

use super::ray::Ambient;
use crate::budget;
use crate::error::{Error, Result};
use crate::linalg::{nullspace, rank, rref, solve_square};
use crate::rat::{dot, Rat, RatVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRow {
    pub label: String,
    pub normal: RatVec,
    pub rhs: Rat,
}

/// `{x : <a_i, x> <= b_i}`, optionally intersected with `<1, x> = c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    pub dim: usize,
    pub equality_rhs: Option<Rat>,
    pub rows: Vec<HRow>,
}

impl HPolytope {
    pub fn new(dim: usize, equality_rhs: Option<Rat>, rows: Vec<HRow>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for r in &rows {
            if r.normal.len() != dim {
                return Err(Error::DegenerateInput(format!(
                    "row {} has length {}, expected {dim}",
                    r.label,
                    r.normal.len()
                )));
            }
            if !seen.insert(r.label.clone()) {
                return Err(Error::DegenerateInput(format!("duplicate label {}", r.label)));
            }
        }
        Ok(HPolytope { dim, equality_rhs, rows })
    }

    /// Builds a polytope from unlabeled rows; labels are `1..=m`.
    pub fn from_matrix(a: Vec<RatVec>, b: Vec<Rat>, equality_rhs: Option<Rat>) -> Result<Self> {
        let dim = a.first().map_or(0, |r| r.len());
        let rows = a
            .into_iter()
            .zip(b)
            .enumerate()
            .map(|(i, (normal, rhs))| HRow { label: (i + 1).to_string(), normal, rhs })
            .collect();
        Self::new(dim, equality_rhs, rows)
    }

    pub fn ambient(&self) -> Ambient {
        if self.equality_rhs.is_some() {
            Ambient::Quotient
        } else {
            Ambient::Linear
        }
    }

    /// Dimension of the polytope itself (ambient minus the equality).
    pub fn poly_dim(&self) -> usize {
        match self.ambient() {
            Ambient::Quotient => self.dim - 1,
            Ambient::Linear => self.dim,
        }
    }

    pub fn rhs(&self) -> Vec<Rat> {
        self.rows.iter().map(|r| r.rhs.clone()).collect()
    }

    pub fn with_rhs(&self, rhs: &[Rat], equality_rhs: Option<Rat>) -> HPolytope {
        let rows = self
            .rows
            .iter()
            .zip(rhs)
            .map(|(r, b)| HRow { label: r.label.clone(), normal: r.normal.clone(), rhs: b.clone() })
            .collect();
        HPolytope { dim: self.dim, equality_rhs, rows }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.rows.iter().position(|r| r.label == label)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        let eq_ok = match &self.equality_rhs {
            Some(c) => &crate::rat::sum(x) == c,
            None => true,
        };
        eq_ok && self.rows.iter().all(|r| dot(&r.normal, x) <= r.rhs)
    }

    fn equalities(&self) -> Vec<(RatVec, Rat)> {
        match &self.equality_rhs {
            Some(c) => vec![(vec![Rat::one(); self.dim], c.clone())],
            None => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VPolytope {
    pub dim: usize,
    pub vertices: Vec<RatVec>,
}

impl VPolytope {
    /// Sorts and deduplicates the points.
    pub fn new(dim: usize, vertices: Vec<RatVec>) -> Result<Self> {
        if let Some(v) = vertices.iter().find(|v| v.len() != dim) {
            return Err(Error::DegenerateInput(format!("point of length {} in dimension {dim}", v.len())));
        }
        let set: BTreeSet<RatVec> = vertices.into_iter().collect();
        Ok(VPolytope { dim, vertices: set.into_iter().collect() })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Common coordinate sum, if all points share one.
    pub fn constant_sum(&self) -> Option<Rat> {
        let sums: BTreeSet<Rat> = self.vertices.iter().map(|v| crate::rat::sum(v)).collect();
        if sums.len() == 1 {
            sums.into_iter().next()
        } else {
            None
        }
    }

    pub fn translate(&self, t: &[Rat]) -> VPolytope {
        let vs = self.vertices.iter().map(|v| crate::rat::add(v, t)).collect();
        VPolytope::new(self.dim, vs).expect("same dimension")
    }

    pub fn max_of(&self, a: &[Rat]) -> Option<Rat> {
        self.vertices.iter().map(|v| dot(a, v)).max()
    }
}

/// Vertices found by enumeration, with the rows tight at each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumerated {
    pub dim: usize,
    pub vertices: Vec<RatVec>,
    pub tight: Vec<BTreeSet<usize>>,
}

impl Enumerated {
    pub fn polytope(&self) -> VPolytope {
        VPolytope { dim: self.dim, vertices: self.vertices.clone() }
    }

    pub fn index_of(&self, v: &[Rat]) -> Option<usize> {
        self.vertices.binary_search_by(|x| x.as_slice().cmp(v)).ok()
    }
}

/// Brute-force enumeration of the points of `{rows} ∩ {eqs}` cut out by
/// enough tight rows. Results are sorted.
pub fn enumerate_points(
    n: usize,
    rows: &[(RatVec, Rat)],
    eqs: &[(RatVec, Rat)],
) -> Result<Vec<(RatVec, BTreeSet<usize>)>> {
    let aug: Vec<RatVec> = eqs
        .iter()
        .map(|(a, c)| {
            let mut r = a.clone();
            r.push(c.clone());
            r
        })
        .collect();
    let (red, pivots) = if aug.is_empty() { (Vec::new(), Vec::new()) } else { rref(aug) };
    if pivots.contains(&n) {
        return Ok(Vec::new());
    }
    let eq_rows: Vec<(RatVec, Rat)> = red
        .into_iter()
        .take(pivots.len())
        .map(|mut r| {
            let c = r.pop().expect("augmented");
            (r, c)
        })
        .collect();
    let k = n - eq_rows.len();
    budget::check(budget::binomial(rows.len(), k))?;

    let feasible = |x: &RatVec| rows.iter().all(|(a, c)| &dot(a, x) <= c);
    let tight_of = |x: &RatVec| -> BTreeSet<usize> {
        rows.iter().enumerate().filter(|(_, (a, c))| &dot(a, x) == c).map(|(i, _)| i).collect()
    };

    let found: Vec<RatVec> = (0..rows.len())
        .combinations(k)
        .par_bridge()
        .filter_map(|subset| {
            let mut a: Vec<RatVec> = eq_rows.iter().map(|(r, _)| r.clone()).collect();
            let mut b: Vec<Rat> = eq_rows.iter().map(|(_, c)| c.clone()).collect();
            for &i in &subset {
                a.push(rows[i].0.clone());
                b.push(rows[i].1.clone());
            }
            let x = solve_square(&a, &b)?;
            feasible(&x).then_some(x)
        })
        .collect();
    let uniq: BTreeSet<RatVec> = found.into_iter().collect();
    Ok(uniq.into_iter().map(|x| {
        let t = tight_of(&x);
        (x, t)
    }).collect())
}

/// Nonzero recession direction of `{y : eqs·y = 0, rows·y <= 0}`, searched
/// among the one-dimensional solution sets of (k-1) tight rows.
fn recession_direction(n: usize, rows: &[RatVec], eqs: &[RatVec]) -> Result<bool> {
    let mut all = eqs.to_vec();
    all.extend(rows.iter().cloned());
    if rank(&all) < n {
        return Ok(true);
    }
    let k = n - rank(eqs);
    if k == 0 {
        return Ok(false);
    }
    budget::check(budget::binomial(rows.len(), k - 1))?;
    let hit = (0..rows.len()).combinations(k - 1).par_bridge().any(|subset| {
        let mut m = eqs.to_vec();
        m.extend(subset.iter().map(|&i| rows[i].clone()));
        let ns = nullspace(&m, n);
        if ns.len() != 1 {
            return false;
        }
        let y = &ns[0];
        let vals: Vec<Rat> = rows.iter().map(|a| dot(a, y)).collect();
        vals.iter().all(|v| !v.is_positive()) || vals.iter().all(|v| !v.is_negative())
    });
    Ok(hit)
}

/// All vertices of `P` with their tight rows.
pub fn vertex_enumeration(p: &HPolytope) -> Result<Enumerated> {
    let rows: Vec<(RatVec, Rat)> = p.rows.iter().map(|r| (r.normal.clone(), r.rhs.clone())).collect();
    let eqs = p.equalities();
    let normals: Vec<RatVec> = rows.iter().map(|r| r.0.clone()).collect();
    let eq_normals: Vec<RatVec> = eqs.iter().map(|e| e.0.clone()).collect();
    let mut all = eq_normals.clone();
    all.extend(normals.iter().cloned());
    if rank(&all) < p.dim {
        return Err(Error::Unbounded);
    }
    let points = enumerate_points(p.dim, &rows, &eqs)?;
    if !points.is_empty() && recession_direction(p.dim, &normals, &eq_normals)? {
        return Err(Error::Unbounded);
    }
    let (vertices, tight) = points.into_iter().unzip();
    Ok(Enumerated { dim: p.dim, vertices, tight })
}

/// Points of `P ∩ {<a_j, x> = c_j}`; used to test whether faces meet.
pub fn enumerate_with_equalities(p: &HPolytope, extra: &[(RatVec, Rat)]) -> Result<Vec<RatVec>> {
    let rows: Vec<(RatVec, Rat)> = p.rows.iter().map(|r| (r.normal.clone(), r.rhs.clone())).collect();
    let mut eqs = p.equalities();
    eqs.extend(extra.iter().cloned());
    Ok(enumerate_points(p.dim, &rows, &eqs)?.into_iter().map(|(x, _)| x).collect())
}

/// Right-hand sides making every row tight on `vertices`.
pub fn tight_rhs(p: &HPolytope, vertices: &VPolytope) -> Result<Vec<Rat>> {
    if vertices.is_empty() {
        return Err(Error::EmptyQ);
    }
    Ok(p.rows.iter().map(|r| vertices.max_of(&r.normal).expect("nonempty")).collect())
}

pub fn rows_by_label(p: &HPolytope) -> BTreeMap<String, usize> {
    p.rows.iter().enumerate().map(|(i, r)| (r.label.clone(), i)).collect()
}
