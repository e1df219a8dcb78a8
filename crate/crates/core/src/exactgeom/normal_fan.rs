use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::polytope::VPolytope;
use super::ray::{canonical_in, rep_label, Ambient};
use crate::budget;
use crate::error::{Error, Result};
use crate::linalg::{nullspace, rank};
use crate::rat::{dot, sub, Rat, RatVec};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FanRay {
    pub label: String,
    pub rep: Vec<BigInt>,
}

/// A fan given by labeled rays and maximal cones listed as label sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralFan {
    pub ambient: Ambient,
    pub rays: Vec<FanRay>,
    pub cones: Vec<Vec<String>>,
}

impl GeneralFan {
    pub fn new(ambient: Ambient, rays: Vec<FanRay>, cones: Vec<Vec<String>>) -> Result<Self> {
        let labels: BTreeSet<&str> = rays.iter().map(|r| r.label.as_str()).collect();
        if labels.len() != rays.len() {
            return Err(Error::DegenerateInput("duplicate ray label".into()));
        }
        let mut used = BTreeSet::new();
        let mut distinct = BTreeSet::new();
        let mut sorted_cones = Vec::with_capacity(cones.len());
        for c in cones {
            let mut c = c;
            c.sort();
            c.dedup();
            for l in &c {
                if !labels.contains(l.as_str()) {
                    return Err(Error::MissingLabel(l.clone()));
                }
                used.insert(l.clone());
            }
            if !distinct.insert(c.clone()) {
                return Err(Error::DegenerateInput("repeated maximal cone".into()));
            }
            sorted_cones.push(c);
        }
        if used.len() != labels.len() {
            return Err(Error::DegenerateInput("ray not used by any maximal cone".into()));
        }
        Ok(GeneralFan { ambient, rays, cones: sorted_cones })
    }

    pub fn rep_of(&self) -> BTreeMap<String, Vec<BigInt>> {
        self.rays.iter().map(|r| (r.label.clone(), r.rep.clone())).collect()
    }

    pub fn cone_vectors(&self, i: usize) -> Vec<RatVec> {
        let reps = self.rep_of();
        self.cones[i].iter().map(|l| super::ray::int_to_rat(&reps[l])).collect()
    }

    /// Cones as sets of canonical reps, for label-independent comparison.
    pub fn geometric_cones(&self) -> BTreeSet<BTreeSet<Vec<BigInt>>> {
        let reps = self.rep_of();
        self.cones
            .iter()
            .map(|c| c.iter().map(|l| reps[l].clone()).collect())
            .collect()
    }

    /// Same ambient and same cones, compared through canonical reps.
    pub fn same_fan(&self, other: &GeneralFan) -> bool {
        self.ambient == other.ambient && self.geometric_cones() == other.geometric_cones()
    }

    /// Labels of `self` rewritten with labels of `other` wherever reps agree.
    pub fn relabel_like(&self, other: &GeneralFan) -> GeneralFan {
        let by_rep: BTreeMap<Vec<BigInt>, String> =
            other.rays.iter().map(|r| (r.rep.clone(), r.label.clone())).collect();
        let rename: BTreeMap<String, String> = self
            .rays
            .iter()
            .map(|r| (r.label.clone(), by_rep.get(&r.rep).cloned().unwrap_or_else(|| r.label.clone())))
            .collect();
        let rays = self
            .rays
            .iter()
            .map(|r| FanRay { label: rename[&r.label].clone(), rep: r.rep.clone() })
            .collect();
        let cones = self
            .cones
            .iter()
            .map(|c| {
                let mut c: Vec<String> = c.iter().map(|l| rename[l].clone()).collect();
                c.sort();
                c
            })
            .collect();
        GeneralFan { ambient: self.ambient, rays, cones }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    /// Outward normal in the ambient space (last coordinate zero in quotient mode).
    pub normal: RatVec,
    pub rhs: Rat,
    pub vertices: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facets {
    pub ambient: Ambient,
    pub facets: Vec<Facet>,
}

pub fn detect_ambient(p: &VPolytope) -> Ambient {
    if p.constant_sum().is_some() {
        Ambient::Quotient
    } else {
        Ambient::Linear
    }
}

fn det_i128(mut m: Vec<Vec<i128>>) -> Option<i128> {
    // Bareiss fraction-free elimination
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return Some(0);
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].checked_mul(m[k][k])?;
                let b = m[i][k].checked_mul(m[k][j])?;
                m[i][j] = a.checked_sub(b)? / prev;
            }
        }
        prev = m[k][k];
    }
    m[n - 1][n - 1].checked_mul(sign)
}

/// Generalized cross product: a vector orthogonal to all `k-1` rows.
fn cross_i128(rows: &[Vec<i128>], k: usize) -> Option<Vec<i128>> {
    let mut out = Vec::with_capacity(k);
    for skip in 0..k {
        let minor: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, x)| *x).collect())
            .collect();
        let d = det_i128(minor)?;
        out.push(if skip % 2 == 0 { d } else { -d });
    }
    Some(out)
}

const SMALL: i128 = 1 << 20;

fn scaled_points(pts: &[RatVec]) -> Option<Vec<Vec<i128>>> {
    let l = pts
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let lr = Rat::from_integer(l);
    pts.iter()
        .map(|p| {
            p.iter()
                .map(|x| {
                    let v = (x * &lr).to_integer().to_i128()?;
                    (v.abs() < SMALL).then_some(v)
                })
                .collect()
        })
        .collect()
}

type Candidate = (BTreeSet<usize>, RatVec);

fn facet_from_subset_int(pts: &[Vec<i128>], subset: &[usize], k: usize) -> Option<Option<Candidate>> {
    let p0 = &pts[subset[0]];
    let diffs: Vec<Vec<i128>> = subset[1..]
        .iter()
        .map(|&i| pts[i].iter().zip(p0).map(|(a, b)| a - b).collect())
        .collect();
    let w = cross_i128(&diffs, k)?;
    if w.iter().all(|&x| x == 0) {
        return Some(None);
    }
    let dotw = |p: &Vec<i128>| -> Option<i128> {
        let mut s: i128 = 0;
        for (a, b) in w.iter().zip(p) {
            s = s.checked_add(a.checked_mul(*b)?)?;
        }
        Some(s)
    };
    let c = dotw(p0)?;
    let (mut pos, mut neg) = (false, false);
    let mut on = BTreeSet::new();
    for (i, p) in pts.iter().enumerate() {
        let v = dotw(p)?;
        if v > c {
            pos = true;
        } else if v < c {
            neg = true;
        } else {
            on.insert(i);
        }
        if pos && neg {
            return Some(None);
        }
    }
    let sgn = if pos { -1 } else { 1 };
    let normal = w.iter().map(|&x| Rat::from_integer(BigInt::from(x * sgn))).collect();
    Some(Some((on, normal)))
}

fn facet_from_subset_rat(pts: &[RatVec], subset: &[usize], k: usize) -> Option<Candidate> {
    let p0 = &pts[subset[0]];
    let diffs: Vec<RatVec> = subset[1..].iter().map(|&i| sub(&pts[i], p0)).collect();
    let ns = if diffs.is_empty() { vec![vec![Rat::one(); k]] } else { nullspace(&diffs, k) };
    if ns.len() != 1 {
        return None;
    }
    let w = &ns[0];
    let c = dot(w, p0);
    let (mut pos, mut neg) = (false, false);
    let mut on = BTreeSet::new();
    for (i, p) in pts.iter().enumerate() {
        let v = dot(w, p);
        if v > c {
            pos = true;
        } else if v < c {
            neg = true;
        } else {
            on.insert(i);
        }
        if pos && neg {
            return None;
        }
    }
    let normal = if pos { w.iter().map(|x| -x).collect() } else { w.clone() };
    Some((on, normal))
}

/// Facets of the convex hull of `P`, found by testing every affinely
/// independent k-subset of vertices for a supporting hyperplane.
pub fn facets(p: &VPolytope) -> Result<Facets> {
    let ambient = detect_ambient(p);
    let n = p.dim;
    let k = match ambient {
        Ambient::Quotient => n - 1,
        Ambient::Linear => n,
    };
    if k == 0 || p.len() < k + 1 {
        return Err(Error::DegenerateInput("fewer than d+1 affinely independent vertices".into()));
    }
    let pts: Vec<RatVec> = p.vertices.iter().map(|v| v[..k].to_vec()).collect();
    let diffs: Vec<RatVec> = pts[1..].iter().map(|q| sub(q, &pts[0])).collect();
    if rank(&diffs) < k {
        return Err(Error::DegenerateInput("vertices are not full-dimensional".into()));
    }
    budget::check(budget::binomial(pts.len(), k))?;

    let fast = scaled_points(&pts);
    let candidates: Option<Vec<Candidate>> = match &fast {
        Some(ip) => (0..pts.len())
            .combinations(k)
            .par_bridge()
            .filter_map(|s| match facet_from_subset_int(ip, &s, k) {
                Some(Some(c)) => Some(Some(c)),
                Some(None) => None,
                None => Some(None),
            })
            .collect(),
        None => None,
    };
    let candidates = match candidates {
        Some(c) => c,
        None => (0..pts.len())
            .combinations(k)
            .par_bridge()
            .filter_map(|s| facet_from_subset_rat(&pts, &s, k))
            .collect(),
    };

    let mut by_set: BTreeMap<BTreeSet<usize>, RatVec> = BTreeMap::new();
    for (set, normal) in candidates {
        by_set.entry(set).or_insert(normal);
    }
    let mut facets = Vec::new();
    for (set, w) in by_set {
        let on: Vec<RatVec> = set.iter().map(|&i| sub(&pts[i], &pts[*set.first().unwrap()])).collect();
        if rank(&on) != k - 1 {
            continue;
        }
        let mut normal = w;
        if ambient == Ambient::Quotient {
            normal.push(Rat::zero());
        }
        let rhs = dot(&normal, &p.vertices[*set.first().unwrap()]);
        facets.push(Facet { normal, rhs, vertices: set });
    }
    Ok(Facets { ambient, facets })
}

/// Normal fan of the convex hull of `P`: one maximal cone per vertex, spanned
/// by the outward normals of the facets through it.
pub fn normal_fan(p: &VPolytope) -> Result<GeneralFan> {
    let fs = facets(p)?;
    let k = match fs.ambient {
        Ambient::Quotient => p.dim - 1,
        Ambient::Linear => p.dim,
    };
    let mut reps = Vec::with_capacity(fs.facets.len());
    for f in &fs.facets {
        reps.push(canonical_in(fs.ambient, &f.normal)?);
    }
    let mut cones = Vec::with_capacity(p.len());
    for (vi, v) in p.vertices.iter().enumerate() {
        let at: Vec<usize> = (0..fs.facets.len()).filter(|&j| fs.facets[j].vertices.contains(&vi)).collect();
        let mut normals: Vec<RatVec> = at.iter().map(|&j| fs.facets[j].normal.clone()).collect();
        if fs.ambient == Ambient::Quotient {
            normals.push(vec![Rat::one(); p.dim]);
        }
        let want = if fs.ambient == Ambient::Quotient { k + 1 } else { k };
        if rank(&normals) < want {
            return Err(Error::DegenerateInput(format!(
                "point {} is not a vertex of the hull",
                crate::rat::fmt_vec(v)
            )));
        }
        let mut labels: Vec<String> = at.iter().map(|&j| rep_label(&reps[j])).collect();
        labels.sort();
        cones.push(labels);
    }
    let mut rays: Vec<FanRay> = reps.into_iter().map(|rep| FanRay { label: rep_label(&rep), rep }).collect();
    rays.sort();
    rays.dedup();
    GeneralFan::new(fs.ambient, rays, cones)
}
