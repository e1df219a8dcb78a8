//! Braid fans and nested Braid fans as labeled simplicial fans, their
//! adjacent cone pairs, and the wall relation across each shared wall.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::budget;
use crate::error::{Error, Result};
use crate::exactgeom::{
    canonical_in, int_to_rat, primitive_integer, vertex_enumeration, Ambient, FanRay, GeneralFan, HPolytope,
};
use crate::linalg::{columns_to_matrix, nullspace, rank};
use crate::posets::{
    all_pairs, all_partitions, all_perms, all_subsets, chain_element, gamma, perm_string, OrderedSetPartition,
    SubsetLabel,
};
use crate::rat::{add, scale, Rat, RatVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Braid,
    Nested,
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SfRay {
    pub label: String,
    /// Vector used in wall relations (0/1 or block-index vector for Braid rays).
    pub raw: RatVec,
    pub rep: Vec<BigInt>,
}

#[derive(Debug, Clone)]
pub struct SimplicialFan {
    pub d: usize,
    pub ambient: Ambient,
    pub provenance: Provenance,
    pub rays: Vec<SfRay>,
    /// Maximal cones as sorted ray indices.
    pub cones: Vec<Vec<usize>>,
    /// Human-readable key per cone (`pi` or `pi,tau`), empty for custom fans.
    pub cone_tags: Vec<String>,
    /// Label carrying `b` for the all-one direction in quotient mode.
    pub top_label: Option<String>,
    index: HashMap<String, usize>,
}

impl SimplicialFan {
    pub fn new(
        d: usize,
        ambient: Ambient,
        provenance: Provenance,
        rays: Vec<SfRay>,
        cones: Vec<Vec<usize>>,
        top_label: Option<String>,
    ) -> Result<Self> {
        let index: HashMap<String, usize> = rays.iter().enumerate().map(|(i, r)| (r.label.clone(), i)).collect();
        if index.len() != rays.len() {
            return Err(Error::DegenerateInput("duplicate ray label".into()));
        }
        let n = rays.first().map_or(0, |r| r.raw.len());
        let mut cones = cones;
        for c in cones.iter_mut() {
            c.sort();
            c.dedup();
            if c.len() != d {
                return Err(Error::DegenerateInput(format!("cone with {} rays in a {d}-dimensional fan", c.len())));
            }
            let mut vs: Vec<RatVec> = c.iter().map(|&i| int_to_rat(&rays[i].rep)).collect();
            if ambient == Ambient::Quotient {
                vs.push(vec![Rat::one(); n]);
            }
            if rank(&vs) != vs.len() {
                return Err(Error::DependentRays);
            }
        }
        let cone_tags = vec![String::new(); cones.len()];
        Ok(SimplicialFan { d, ambient, provenance, rays, cones, cone_tags, top_label, index })
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn cone_labels(&self, i: usize) -> Vec<String> {
        self.cones[i].iter().map(|&r| self.rays[r].label.clone()).collect()
    }

    /// Sum of the ray reps of a cone; an interior point.
    pub fn sample_point(&self, i: usize) -> RatVec {
        let n = self.rays[0].rep.len();
        self.cones[i]
            .iter()
            .fold(vec![Rat::zero(); n], |acc, &r| add(&acc, &int_to_rat(&self.rays[r].rep)))
    }

    pub fn to_general(&self) -> GeneralFan {
        let rays = self.rays.iter().map(|r| FanRay { label: r.label.clone(), rep: r.rep.clone() }).collect();
        let cones = (0..self.cones.len())
            .map(|i| {
                let mut c = self.cone_labels(i);
                c.sort();
                c
            })
            .collect();
        GeneralFan { ambient: self.ambient, rays, cones }
    }

    /// A simplicial fan read from a general one; raw vectors are the reps.
    pub fn from_general(f: &GeneralFan) -> Result<Self> {
        let d = f.cones.first().map_or(0, |c| c.len());
        let rays: Vec<SfRay> = f
            .rays
            .iter()
            .map(|r| SfRay { label: r.label.clone(), raw: int_to_rat(&r.rep), rep: r.rep.clone() })
            .collect();
        let idx: HashMap<&str, usize> = rays.iter().enumerate().map(|(i, r)| (r.label.as_str(), i)).collect();
        let cones = f
            .cones
            .iter()
            .map(|c| c.iter().map(|l| idx.get(l.as_str()).copied().ok_or_else(|| Error::MissingLabel(l.clone()))).collect())
            .collect::<Result<Vec<Vec<usize>>>>()?;
        let top = (f.ambient == Ambient::Quotient).then(|| "top".to_string());
        SimplicialFan::new(d, f.ambient, Provenance::Custom, rays, cones, top)
    }

    /// The normal fan of a simple polytope given by its rows; ray labels are
    /// the row labels and raw vectors the row normals.
    pub fn from_hpolytope(p: &HPolytope) -> Result<Self> {
        let en = vertex_enumeration(p)?;
        let d = p.poly_dim();
        let ambient = p.ambient();
        let mut rays = Vec::with_capacity(p.rows.len());
        for r in &p.rows {
            rays.push(SfRay { label: r.label.clone(), raw: r.normal.clone(), rep: canonical_in(ambient, &r.normal)? });
        }
        let mut used = vec![false; rays.len()];
        let mut cones = Vec::new();
        for (v, t) in en.vertices.iter().zip(&en.tight) {
            if t.len() != d {
                return Err(Error::DegenerateInput(format!(
                    "vertex {} lies on {} facets; the polytope is not simple",
                    crate::rat::fmt_vec(v),
                    t.len()
                )));
            }
            for &i in t {
                used[i] = true;
            }
            cones.push(t.iter().copied().collect());
        }
        if used.iter().any(|u| !u) {
            return Err(Error::DegenerateInput("some row is not facet-defining".into()));
        }
        let top = (ambient == Ambient::Quotient).then(|| "top".to_string());
        SimplicialFan::new(d, ambient, Provenance::Custom, rays, cones, top)
    }
}

/// `Br_d`: rays `e_S` for proper nonempty `S`, one cone per permutation
/// spanned by `e_{Gamma_i^pi}`, `i = 1..d`.
pub fn braid_fan(d: usize) -> Result<SimplicialFan> {
    if d == 0 {
        return Err(Error::DegenerateInput("d must be at least 1".into()));
    }
    budget::check(budget::factorial(d + 1))?;
    let n = d + 1;
    let rays: Vec<SfRay> = all_subsets(d, true)
        .into_iter()
        .map(|s| {
            let raw = s.raw();
            let rep = canonical_in(Ambient::Quotient, &raw).expect("proper subset");
            SfRay { label: s.to_string(), raw, rep }
        })
        .collect();
    let idx: HashMap<String, usize> = rays.iter().enumerate().map(|(i, r)| (r.label.clone(), i)).collect();
    let perms = all_perms(n);
    let cones: Vec<Vec<usize>> = perms
        .iter()
        .map(|pi| (1..=d).map(|i| idx[&gamma(pi, i).expect("in range").to_string()]).collect())
        .collect();
    let top = SubsetLabel::new(n, 1..=n)?.to_string();
    let mut f = SimplicialFan::new(d, Ambient::Quotient, Provenance::Braid, rays, cones, Some(top))?;
    f.cone_tags = perms.iter().map(|p| perm_string(p)).collect();
    Ok(f)
}

/// `Br_d^2`: rays `e_T` for proper ordered set partitions, one cone per
/// `(pi, tau)` spanned by the non-maximum elements of its chain.
pub fn nested_braid_fan(d: usize) -> Result<SimplicialFan> {
    if d == 0 {
        return Err(Error::DegenerateInput("d must be at least 1".into()));
    }
    budget::check(budget::factorial(d + 1) * budget::factorial(d))?;
    let n = d + 1;
    let rays: Vec<SfRay> = all_partitions(d, true)
        .into_iter()
        .map(|t| {
            let raw = t.raw();
            let rep = canonical_in(Ambient::Quotient, &raw).expect("proper partition");
            SfRay { label: t.to_string(), raw, rep }
        })
        .collect();
    let idx: HashMap<String, usize> = rays.iter().enumerate().map(|(i, r)| (r.label.clone(), i)).collect();
    let pairs = all_pairs(d);
    let cones: Vec<Vec<usize>> = pairs
        .iter()
        .map(|p| (0..d).map(|r| idx[&chain_element(p, r).to_string()]).collect())
        .collect();
    let top = OrderedSetPartition::top(n).to_string();
    let mut f = SimplicialFan::new(d, Ambient::Quotient, Provenance::Nested, rays, cones, Some(top))?;
    f.cone_tags = pairs.iter().map(|p| format!("{},{}", perm_string(&p.pi), perm_string(&p.tau))).collect();
    Ok(f)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacentPair {
    pub a: usize,
    pub b: usize,
    pub shared: Vec<usize>,
    /// Ray of `a` not in `b`.
    pub fa: usize,
    /// Ray of `b` not in `a`.
    pub fb: usize,
}

/// All unordered pairs of maximal cones whose label sets differ in one label.
pub fn adjacent_pairs(f: &SimplicialFan) -> Vec<AdjacentPair> {
    let mut by_wall: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
    for (ci, c) in f.cones.iter().enumerate() {
        for (k, &dropped) in c.iter().enumerate() {
            let mut wall = c.clone();
            wall.remove(k);
            by_wall.entry(wall).or_default().push((ci, dropped));
        }
    }
    let mut out = Vec::new();
    for (wall, cs) in by_wall {
        for i in 0..cs.len() {
            for j in i + 1..cs.len() {
                let ((a, fa), (b, fb)) = if cs[i].0 < cs[j].0 { (cs[i], cs[j]) } else { (cs[j], cs[i]) };
                out.push(AdjacentPair { a, b, shared: wall.clone(), fa, fb });
            }
        }
    }
    out.sort_by_key(|p| (p.a, p.b));
    out
}

/// `sum lhs_j b_j + balance * b_top <= sum rhs_j b_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallInequality {
    pub kind: String,
    pub lhs: BTreeMap<String, Rat>,
    pub rhs: Vec<(String, Rat)>,
    /// Coefficient of `b_top` on the left, keeping the raw identity balanced.
    pub balance: Rat,
    pub top_label: Option<String>,
}

impl WallInequality {
    /// Evaluates both sides with `value(label)`.
    pub fn sides(&self, value: &dyn Fn(&str) -> Result<Rat>) -> Result<(Rat, Rat)> {
        let mut l = Rat::zero();
        for (lab, c) in &self.lhs {
            l += c * value(lab)?;
        }
        if !self.balance.is_zero() {
            let top = self.top_label.as_deref().ok_or_else(|| Error::MissingLabel("top".into()))?;
            l += &self.balance * value(top)?;
        }
        let mut r = Rat::zero();
        for (lab, c) in &self.rhs {
            r += c * value(lab)?;
        }
        Ok((l, r))
    }

    pub fn holds(&self, value: &dyn Fn(&str) -> Result<Rat>) -> Result<bool> {
        let (l, r) = self.sides(value)?;
        Ok(l <= r)
    }

    /// Substitutes vectors for symbols: the two sides must agree exactly.
    pub fn is_balanced(&self, raw: &dyn Fn(&str) -> RatVec, n: usize) -> bool {
        let mut l = vec![Rat::zero(); n];
        for (lab, c) in &self.lhs {
            l = add(&l, &scale(&raw(lab), c));
        }
        l = add(&l, &vec![self.balance.clone(); n]);
        let mut r = vec![Rat::zero(); n];
        for (lab, c) in &self.rhs {
            r = add(&r, &scale(&raw(lab), c));
        }
        l == r
    }

    /// Labels with their signed coefficients, top included, for comparisons.
    pub fn signature(&self) -> BTreeMap<String, Rat> {
        let mut m: BTreeMap<String, Rat> = BTreeMap::new();
        for (l, c) in &self.lhs {
            *m.entry(l.clone()).or_insert_with(Rat::zero) += c;
        }
        if let (false, Some(t)) = (self.balance.is_zero(), &self.top_label) {
            *m.entry(t.clone()).or_insert_with(Rat::zero) += &self.balance;
        }
        for (l, c) in &self.rhs {
            *m.entry(l.clone()).or_insert_with(Rat::zero) -= c;
        }
        m.retain(|_, c| !c.is_zero());
        m
    }

    pub fn display(&self) -> String {
        let term = |c: &Rat, l: &str| if c.is_one() { format!("b[{l}]") } else { format!("{c}*b[{l}]") };
        let mut left: Vec<String> = self.lhs.iter().map(|(l, c)| term(c, l)).collect();
        if !self.balance.is_zero() {
            left.push(term(&self.balance, self.top_label.as_deref().unwrap_or("top")));
        }
        if left.is_empty() {
            left.push("0".into());
        }
        let right: Vec<String> = self.rhs.iter().map(|(l, c)| term(c, l)).collect();
        format!("{} <= {}", left.join(" + "), right.join(" + "))
    }
}

/// Builds a balanced inequality `lhs + t*b_top <= rhs`, folding top-labeled
/// terms into the balance and solving for the remaining multiple of 1.
pub fn balanced_inequality(
    kind: &str,
    lhs: &[(String, Rat)],
    rhs: &[(String, Rat)],
    top_label: &str,
    raw: &dyn Fn(&str) -> RatVec,
    n: usize,
) -> Result<WallInequality> {
    let mut l: BTreeMap<String, Rat> = BTreeMap::new();
    let mut balance = Rat::zero();
    let mut lv = vec![Rat::zero(); n];
    for (lab, c) in lhs {
        if lab == top_label {
            balance += c;
        } else {
            *l.entry(lab.clone()).or_insert_with(Rat::zero) += c;
            lv = add(&lv, &scale(&raw(lab), c));
        }
    }
    let mut r: Vec<(String, Rat)> = Vec::new();
    let mut rv = vec![Rat::zero(); n];
    for (lab, c) in rhs {
        if lab == top_label {
            balance -= c;
        } else {
            r.push((lab.clone(), c.clone()));
            rv = add(&rv, &scale(&raw(lab), c));
        }
    }
    let resid: RatVec = rv.iter().zip(&lv).map(|(a, b)| a - b - &balance).collect();
    if resid.iter().any(|x| x != &resid[0]) {
        return Err(Error::GeometryViolation(format!("{kind} inequality is not balanced")));
    }
    balance += &resid[0];
    l.retain(|_, c| !c.is_zero());
    Ok(WallInequality { kind: kind.to_string(), lhs: l, rhs: r, balance, top_label: Some(top_label.to_string()) })
}

/// The unique (up to positive scale) relation
/// `sum c_j r_j + c_top 1 = c_F r_F + c_F' r_F'` across a shared wall, as the
/// primitive integer solution with `c_F > 0`.
pub fn wall_relation(f: &SimplicialFan, pair: &AdjacentPair) -> Result<WallInequality> {
    let n = f.rays[pair.fa].raw.len();
    let mut cols: Vec<RatVec> = pair.shared.iter().map(|&i| f.rays[i].raw.clone()).collect();
    let quotient = f.ambient == Ambient::Quotient;
    if quotient {
        cols.push(vec![Rat::one(); n]);
    }
    cols.push(f.rays[pair.fa].raw.iter().map(|x| -x).collect());
    cols.push(f.rays[pair.fb].raw.iter().map(|x| -x).collect());
    let m = columns_to_matrix(&cols, n);
    let ns = nullspace(&m, cols.len());
    let what = || format!("cones {} and {}", pair.a, pair.b);
    if ns.len() != 1 {
        return Err(Error::GeometryViolation(format!("{}: relation space has dimension {}", what(), ns.len())));
    }
    let mut sol: RatVec = int_to_rat(&primitive_integer(&ns[0]).expect("nonzero"));
    let k = cols.len();
    if sol[k - 2].is_negative() {
        sol = sol.iter().map(|x| -x).collect();
    }
    if sol[k - 2].is_zero() || !sol[k - 1].is_positive() {
        return Err(Error::GeometryViolation(format!("{}: no positive solution", what())));
    }
    let mut lhs = BTreeMap::new();
    for (j, &i) in pair.shared.iter().enumerate() {
        if !sol[j].is_zero() {
            lhs.insert(f.rays[i].label.clone(), sol[j].clone());
        }
    }
    let balance = if quotient { sol[pair.shared.len()].clone() } else { Rat::zero() };
    let rhs = vec![
        (f.rays[pair.fa].label.clone(), sol[k - 2].clone()),
        (f.rays[pair.fb].label.clone(), sol[k - 1].clone()),
    ];
    Ok(WallInequality { kind: "wall".into(), lhs, rhs, balance, top_label: f.top_label.clone() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WallShape {
    Diamond,
    Ren,
}

/// Shape of a wall in `Br_d^2`: the two chains differ at rank 0 exactly when
/// they form the "ren" shape.
pub fn classify_nested_wall(f: &SimplicialFan, pair: &AdjacentPair) -> Result<WallShape> {
    let t = OrderedSetPartition::parse(&f.rays[pair.fa].label, Some(f.d + 1))?;
    Ok(if t.rank() == 0 { WallShape::Ren } else { WallShape::Diamond })
}

/// Wall inequalities for every adjacent pair, in pair order.
pub fn all_wall_relations(f: &SimplicialFan) -> Result<Vec<(AdjacentPair, WallInequality)>> {
    adjacent_pairs(f)
        .into_par_iter()
        .map(|p| wall_relation(f, &p).map(|w| (p, w)))
        .collect()
}
