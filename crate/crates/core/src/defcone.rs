//! Deformation-cone membership: the generic wall engine, the general vertex
//! criterion for arbitrary polytopes, submodularity, the nested
//! diamond/essential system, and polymatroid utilities.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactgeom::{vertex_enumeration, Ambient, HPolytope, HRow};
use crate::fans::{all_wall_relations, balanced_inequality, classify_nested_wall, nested_braid_fan, SimplicialFan, WallInequality, WallShape};
use crate::linalg::{rank, solve_square};
use crate::posets::{
    all_pairs, all_partitions, all_subsets, chain_element, OrderedSetPartition, SubsetLabel, EMPTY_LABEL,
};
use crate::rat::{dot, int, Rat, RatVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Subsets,
    Partitions,
    /// Row labels of an explicit H-representation.
    Rows,
}

impl Domain {
    pub fn as_str(self) -> &'static str {
        match self {
            Domain::Subsets => "subsets",
            Domain::Partitions => "partitions",
            Domain::Rows => "rows",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "subsets" => Ok(Domain::Subsets),
            "partitions" => Ok(Domain::Partitions),
            "rows" => Ok(Domain::Rows),
            _ => Err(Error::Parse(format!("unknown domain {s:?}"))),
        }
    }
}

/// Label used for the equality value when `domain` is `Rows`.
pub const ROWS_TOP: &str = "top";

/// Values indexed by subsets, ordered set partitions or row labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BVector {
    pub domain: Domain,
    pub d: usize,
    pub values: BTreeMap<String, Rat>,
}

impl BVector {
    /// Normalizes every label to its canonical string form.
    pub fn new(domain: Domain, d: usize, values: BTreeMap<String, Rat>) -> Result<Self> {
        let n = d + 1;
        let mut out = BTreeMap::new();
        for (k, v) in values {
            let key = match domain {
                Domain::Subsets => SubsetLabel::parse(&k, n)?.to_string(),
                Domain::Partitions => OrderedSetPartition::parse(&k, Some(n))?.to_string(),
                Domain::Rows => k,
            };
            if out.insert(key.clone(), v).is_some() {
                return Err(Error::Parse(format!("label {key} given twice")));
            }
        }
        Ok(BVector { domain, d, values: out })
    }

    pub fn top_label(&self) -> String {
        match self.domain {
            Domain::Subsets | Domain::Partitions => OrderedSetPartition::top(self.d + 1).to_string(),
            Domain::Rows => ROWS_TOP.to_string(),
        }
    }

    pub fn get(&self, label: &str) -> Result<Rat> {
        if let Some(v) = self.values.get(label) {
            return Ok(v.clone());
        }
        if self.domain == Domain::Subsets && (label == EMPTY_LABEL || label.is_empty()) {
            return Ok(Rat::zero());
        }
        Err(Error::MissingLabel(label.to_string()))
    }

    pub fn subset(&self, s: &SubsetLabel) -> Result<Rat> {
        self.get(&s.to_string())
    }

    pub fn top(&self) -> Result<Rat> {
        self.get(&self.top_label())
    }

    pub fn is_centralized(&self) -> bool {
        self.top().map(|t| t.is_zero()).unwrap_or(false)
    }

    pub fn lookup(&self) -> impl Fn(&str) -> Result<Rat> + '_ {
        move |l: &str| self.get(l)
    }

    pub fn with(&self, label: &str, value: Rat) -> BVector {
        let mut b = self.clone();
        b.values.insert(label.to_string(), value);
        b
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// A listed inequality with its evaluated sides.
    Inequality { index: usize, inequality: WallInequality, lhs: Rat, rhs: Rat },
    /// `b(S ∪ T) + b(S ∩ T) = lhs > rhs = b(S) + b(T)`.
    Submodular { s: String, t: String, lhs: Rat, rhs: Rat },
    /// An extra facet through a vertex misses the solved point.
    Equality { vertex: RatVec, point: RatVec, facet: String, value: Rat, rhs: Rat },
    /// The solved point passes beyond a facet.
    NoPassing { vertex: RatVec, point: RatVec, facet: String, value: Rat, rhs: Rat },
    /// Failed polymatroid condition (`R1`, `R2` or `R3`).
    Rank { condition: String, sets: Vec<String>, lhs: Rat, rhs: Rat },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub member: bool,
    pub certificate: Option<Certificate>,
}

impl Verdict {
    pub fn yes() -> Self {
        Verdict { member: true, certificate: None }
    }

    pub fn no(c: Certificate) -> Self {
        Verdict { member: false, certificate: Some(c) }
    }
}

/// One wall inequality per adjacent pair of maximal cones.
pub fn defcone_inequalities(f: &SimplicialFan) -> Result<Vec<WallInequality>> {
    Ok(all_wall_relations(f)?.into_iter().map(|(_, w)| w).collect())
}

/// Evaluates inequalities in order; the first failure is the certificate.
pub fn check_membership(ineqs: &[WallInequality], b: &BVector) -> Result<Verdict> {
    let look = b.lookup();
    for (index, w) in ineqs.iter().enumerate() {
        let (lhs, rhs) = w.sides(&look)?;
        if lhs > rhs {
            return Ok(Verdict::no(Certificate::Inequality { index, inequality: w.clone(), lhs, rhs }));
        }
    }
    Ok(Verdict::yes())
}

fn expect_domain(b: &BVector, want: Domain) -> Result<()> {
    if b.domain != want {
        return Err(Error::Parse(format!("expected a {} vector, got {}", want.as_str(), b.domain.as_str())));
    }
    Ok(())
}

fn submodular_pair(b: &BVector, s: &SubsetLabel, t: &SubsetLabel) -> Result<Option<Certificate>> {
    let lhs = b.subset(&s.union(t))? + b.subset(&s.intersection(t))?;
    let rhs = b.subset(s)? + b.subset(t)?;
    Ok((lhs > rhs).then(|| Certificate::Submodular { s: s.to_string(), t: t.to_string(), lhs, rhs }))
}

/// Submodularity over all incomparable pairs in canonical order, or with
/// `diamonds_only` over pairs `S∪a, S∪b` (an equivalent system).
pub fn check_submodular_with(b: &BVector, diamonds_only: bool) -> Result<Verdict> {
    expect_domain(b, Domain::Subsets)?;
    let subsets = all_subsets(b.d, false);
    if diamonds_only {
        let n = b.d + 1;
        for s in &subsets {
            let out: Vec<usize> = (1..=n).filter(|x| !s.contains(*x)).collect();
            for (i, &x) in out.iter().enumerate() {
                for &y in &out[i + 1..] {
                    if let Some(c) = submodular_pair(b, &s.with(x), &s.with(y))? {
                        return Ok(Verdict::no(c));
                    }
                }
            }
        }
        return Ok(Verdict::yes());
    }
    for (i, s) in subsets.iter().enumerate() {
        for t in &subsets[i + 1..] {
            if s.is_subset(t) || t.is_subset(s) {
                continue;
            }
            if let Some(c) = submodular_pair(b, s, t)? {
                return Ok(Verdict::no(c));
            }
        }
    }
    Ok(Verdict::yes())
}

pub fn check_submodular(b: &BVector) -> Result<Verdict> {
    check_submodular_with(b, false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairMode {
    /// Every vertex against every facet.
    Full,
    /// Only facets through an edge-neighbor of the vertex.
    Neighboring,
}

/// Vertex-by-vertex criterion for an arbitrary polytope `P0`: at each vertex
/// solve its first `dim` supporting facets with the new right-hand sides,
/// require the remaining supporting facets to pass through the solution, and
/// require the solution to satisfy the other facets.
pub fn general_defcone_membership(
    p0: &HPolytope,
    b: &[Rat],
    equality_rhs: Option<Rat>,
    mode: PairMode,
) -> Result<Verdict> {
    if b.len() != p0.rows.len() {
        return Err(Error::DegenerateInput(format!("{} values for {} rows", b.len(), p0.rows.len())));
    }
    let en = vertex_enumeration(p0)?;
    let k = p0.poly_dim();
    let quotient = p0.ambient() == Ambient::Quotient;
    let eq = match (quotient, equality_rhs) {
        (true, Some(c)) => Some(c),
        (true, None) => p0.equality_rhs.clone(),
        (false, _) => None,
    };
    let tight: Vec<Vec<usize>> = en.tight.iter().map(|t| t.iter().copied().collect()).collect();
    let neighbors: Vec<BTreeSet<usize>> = match mode {
        PairMode::Full => Vec::new(),
        PairMode::Neighboring => edge_neighbors(p0, &en.tight),
    };
    for (vi, v) in en.vertices.iter().enumerate() {
        let t = &tight[vi];
        let first = &t[..k.min(t.len())];
        let mut a: Vec<RatVec> = first.iter().map(|&i| p0.rows[i].normal.clone()).collect();
        let mut rhs: Vec<Rat> = first.iter().map(|&i| b[i].clone()).collect();
        if let Some(c) = &eq {
            a.push(vec![Rat::one(); p0.dim]);
            rhs.push(c.clone());
        }
        let point = solve_square(&a, &rhs).ok_or_else(|| Error::DegenerateP0(crate::rat::fmt_vec(v)))?;
        for &j in &t[first.len()..] {
            let value = dot(&p0.rows[j].normal, &point);
            if value != b[j] {
                return Ok(Verdict::no(Certificate::Equality {
                    vertex: v.clone(),
                    point,
                    facet: p0.rows[j].label.clone(),
                    value,
                    rhs: b[j].clone(),
                }));
            }
        }
        let candidates: BTreeSet<usize> = match mode {
            PairMode::Full => (0..p0.rows.len()).filter(|j| !en.tight[vi].contains(j)).collect(),
            PairMode::Neighboring => neighbors[vi]
                .iter()
                .flat_map(|&w| en.tight[w].iter().copied())
                .filter(|j| !en.tight[vi].contains(j))
                .collect(),
        };
        for j in candidates {
            let value = dot(&p0.rows[j].normal, &point);
            if value > b[j] {
                return Ok(Verdict::no(Certificate::NoPassing {
                    vertex: v.clone(),
                    point,
                    facet: p0.rows[j].label.clone(),
                    value,
                    rhs: b[j].clone(),
                }));
            }
        }
    }
    Ok(Verdict::yes())
}

/// Vertices joined by an edge: their common tight rows cut out a line.
fn edge_neighbors(p: &HPolytope, tight: &[BTreeSet<usize>]) -> Vec<BTreeSet<usize>> {
    let n = p.dim;
    let mut out = vec![BTreeSet::new(); tight.len()];
    for i in 0..tight.len() {
        for j in i + 1..tight.len() {
            let mut m: Vec<RatVec> = tight[i].intersection(&tight[j]).map(|&r| p.rows[r].normal.clone()).collect();
            if p.ambient() == Ambient::Quotient {
                m.push(vec![Rat::one(); n]);
            }
            if rank(&m) == n - 1 {
                out[i].insert(j);
                out[j].insert(i);
            }
        }
    }
    out
}

/// Right-hand sides of `P0`'s rows read from a `Rows` vector.
pub fn rows_rhs(p0: &HPolytope, b: &BVector) -> Result<(Vec<Rat>, Option<Rat>)> {
    let rhs = p0.rows.iter().map(|r| b.get(&r.label)).collect::<Result<Vec<_>>>()?;
    let eq = match p0.ambient() {
        Ambient::Quotient => Some(b.get(ROWS_TOP).or_else(|_| p0.equality_rhs.clone().ok_or(Error::MissingLabel(ROWS_TOP.into())))?),
        Ambient::Linear => None,
    };
    Ok((rhs, eq))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deformation {
    pub verdict: Verdict,
    /// Tight right-hand sides of `Q`, one per row of `P0`.
    pub tight_rhs: Vec<Rat>,
}

/// Whether `Q` (same normals as `P0`) is a deformation of `P0`: replace `Q`'s
/// right-hand sides by tight ones and run the vertex criterion.
pub fn is_deformation(p0: &HPolytope, q: &HPolytope) -> Result<Deformation> {
    let same = p0.dim == q.dim
        && p0.rows.len() == q.rows.len()
        && p0.rows.iter().zip(&q.rows).all(|(a, b)| a.normal == b.normal)
        && p0.ambient() == q.ambient();
    if !same {
        return Err(Error::DegenerateInput("Q must share the normal matrix of P0".into()));
    }
    let en = vertex_enumeration(q)?;
    if en.vertices.is_empty() {
        return Err(Error::EmptyQ);
    }
    let tight_rhs = crate::exactgeom::tight_rhs(q, &en.polytope())?;
    let verdict = general_defcone_membership(p0, &tight_rhs, q.equality_rhs.clone(), PairMode::Full)?;
    Ok(Deformation { verdict, tight_rhs })
}

fn partition_raw(n: usize) -> impl Fn(&str) -> RatVec {
    move |l: &str| OrderedSetPartition::parse(l, Some(n)).expect("valid partition label").raw()
}

/// `b_{T_{r+1}} + b_{T_{r-1}} <= b_{T_r} + b_{T'_r}` for every diamond in a
/// maximal interval, deduplicated, in canonical order.
pub fn diamond_inequalities(d: usize) -> Vec<WallInequality> {
    let n = d + 1;
    let top = OrderedSetPartition::top(n).to_string();
    let raw = partition_raw(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for p in all_pairs(d) {
        for r in 1..d {
            let mut swapped = p.clone();
            for v in swapped.tau.iter_mut() {
                if *v == r {
                    *v = r + 1;
                } else if *v == r + 1 {
                    *v = r;
                }
            }
            let lo = chain_element(&p, r - 1).to_string();
            let hi = chain_element(&p, r + 1).to_string();
            let mid = chain_element(&p, r).to_string();
            let mid2 = chain_element(&swapped, r).to_string();
            let (m1, m2) = if mid < mid2 { (mid, mid2) } else { (mid2, mid) };
            if !seen.insert((lo.clone(), hi.clone(), m1.clone(), m2.clone())) {
                continue;
            }
            let w = balanced_inequality("diamond", &[(hi, int(1)), (lo, int(1))], &[(m1, int(1)), (m2, int(1))], &top, &raw, n)
                .expect("diamonds are balanced");
            out.push(w);
        }
    }
    out
}

/// One inequality per rank-1 partition `T` with doubleton `{a, b}` at block
/// `i`: `2 b_T + b_S <= b_{T0} + b_{T0'}` plus the balancing top term, where
/// `T0, T0'` split the doubleton both ways and `S` merges everything before
/// and after it.
pub fn essential_ren_inequalities(d: usize) -> Vec<WallInequality> {
    let n = d + 1;
    let top = OrderedSetPartition::top(n).to_string();
    let raw = partition_raw(n);
    let mut out = Vec::new();
    for t in all_partitions(d, false).into_iter().filter(|t| t.rank() == 1) {
        let i = t.blocks.iter().position(|b| b.len() == 2).expect("rank one");
        let (a, b) = (t.blocks[i][0], t.blocks[i][1]);
        let split = |x: usize, y: usize| {
            let mut blocks = t.blocks.clone();
            blocks.splice(i..=i, [vec![x], vec![y]]);
            OrderedSetPartition { n, blocks }.to_string()
        };
        let mut s_blocks: Vec<Vec<usize>> = Vec::new();
        let before: Vec<usize> = t.blocks[..i].iter().flatten().copied().collect();
        let after: Vec<usize> = t.blocks[i + 1..].iter().flatten().copied().collect();
        for blk in [before, t.blocks[i].clone(), after] {
            if !blk.is_empty() {
                let mut blk = blk;
                blk.sort();
                s_blocks.push(blk);
            }
        }
        let s = OrderedSetPartition { n, blocks: s_blocks }.to_string();
        let tl = t.to_string();
        let w = balanced_inequality(
            "essential",
            &[(tl, int(2)), (s, int(1))],
            &[(split(a, b), int(1)), (split(b, a), int(1))],
            &top,
            &raw,
            n,
        )
        .expect("essential inequalities are balanced");
        out.push(w);
    }
    out
}

/// Every ren-shaped wall inequality of the nested fan, from the wall engine.
pub fn ren_inequalities(d: usize) -> Result<Vec<WallInequality>> {
    let f = nested_braid_fan(d)?;
    let mut out = Vec::new();
    for (p, mut w) in all_wall_relations(&f)? {
        if classify_nested_wall(&f, &p)? == WallShape::Ren {
            w.kind = "ren".into();
            out.push(w);
        }
    }
    Ok(out)
}

/// Subtracts `k * |S|` (resp. `k * card(T)`) with `k = b_top / (d+1)`.
pub fn centralize_b(b: &BVector) -> Result<BVector> {
    let n = b.d + 1;
    let k = b.top()? / int(n as i64);
    let mut values = BTreeMap::new();
    for (l, v) in &b.values {
        let weight = match b.domain {
            Domain::Subsets => int(SubsetLabel::parse(l, n)?.elements.len() as i64),
            Domain::Partitions => OrderedSetPartition::parse(l, Some(n))?.card(),
            Domain::Rows => return Err(Error::Parse("cannot centralize a rows vector".into())),
        };
        values.insert(l.clone(), v - &k * weight);
    }
    Ok(BVector { domain: b.domain, d: b.d, values })
}

/// Diamond and essential inequalities after centralization.
pub fn check_nested_b(b: &BVector) -> Result<Verdict> {
    expect_domain(b, Domain::Partitions)?;
    for t in all_partitions(b.d, true) {
        b.get(&t.to_string())?;
    }
    let c = centralize_b(b)?;
    let mut ineqs = diamond_inequalities(b.d);
    ineqs.extend(essential_ren_inequalities(b.d));
    check_membership(&ineqs, &c)
}

/// Polymatroid rank conditions: nonnegative, monotone, submodular.
pub fn is_rank_function(b: &BVector) -> Result<Verdict> {
    expect_domain(b, Domain::Subsets)?;
    let subsets = all_subsets(b.d, false);
    for s in &subsets {
        let v = b.subset(s)?;
        if v.is_negative() {
            return Ok(Verdict::no(Certificate::Rank { condition: "R1".into(), sets: vec![s.to_string()], lhs: int(0), rhs: v }));
        }
    }
    for s in &subsets {
        for x in (1..=b.d + 1).filter(|x| !s.contains(*x)) {
            let big = s.with(x);
            let (lo, hi) = (b.subset(s)?, b.subset(&big)?);
            if lo > hi {
                return Ok(Verdict::no(Certificate::Rank {
                    condition: "R2".into(),
                    sets: vec![s.to_string(), big.to_string()],
                    lhs: lo,
                    rhs: hi,
                }));
            }
        }
    }
    match check_submodular(b)? {
        Verdict { certificate: Some(Certificate::Submodular { s, t, lhs, rhs }), .. } => {
            Ok(Verdict::no(Certificate::Rank { condition: "R3".into(), sets: vec![s, t], lhs, rhs }))
        }
        v => Ok(v),
    }
}

/// `b_S + k |S|`.
pub fn monotone_shift(b: &BVector, k: &Rat) -> Result<BVector> {
    expect_domain(b, Domain::Subsets)?;
    let n = b.d + 1;
    let mut values = BTreeMap::new();
    for (l, v) in &b.values {
        let size = SubsetLabel::parse(l, n)?.elements.len() as i64;
        values.insert(l.clone(), v + k * int(size));
    }
    Ok(BVector { domain: b.domain, d: b.d, values })
}

/// Smallest nonnegative integer `k` making every margin `b_{S+x} - b_S + k`
/// nonnegative.
pub fn monotone_shift_k(b: &BVector) -> Result<Rat> {
    expect_domain(b, Domain::Subsets)?;
    let mut worst = Rat::zero();
    for s in all_subsets(b.d, false) {
        for x in (1..=b.d + 1).filter(|x| !s.contains(*x)) {
            let gap = b.subset(&s)? - b.subset(&s.with(x))?;
            if gap > worst {
                worst = gap;
            }
        }
    }
    Ok(Rat::from_integer(worst.ceil().to_integer()))
}

/// `{<e_S, x> <= b_S, S proper} ∩ {<1, x> = b_top}`.
pub fn hrep_from_subsets(b: &BVector) -> Result<HPolytope> {
    expect_domain(b, Domain::Subsets)?;
    let rows = all_subsets(b.d, true)
        .into_iter()
        .map(|s| Ok(HRow { label: s.to_string(), normal: s.raw(), rhs: b.subset(&s)? }))
        .collect::<Result<Vec<_>>>()?;
    HPolytope::new(b.d + 1, Some(b.top()?), rows)
}

/// `{<e_T, x> <= b_T, T proper} ∩ {<1, x> = b_top}`.
pub fn hrep_from_partitions(b: &BVector) -> Result<HPolytope> {
    expect_domain(b, Domain::Partitions)?;
    let rows = all_partitions(b.d, true)
        .into_iter()
        .map(|t| {
            let l = t.to_string();
            Ok(HRow { normal: t.raw(), rhs: b.get(&l)?, label: l })
        })
        .collect::<Result<Vec<_>>>()?;
    HPolytope::new(b.d + 1, Some(b.top()?), rows)
}

/// Tight values of a polytope on the subset (resp. partition) directions.
pub fn tight_b(domain: Domain, d: usize, p: &crate::exactgeom::VPolytope) -> Result<BVector> {
    if p.is_empty() {
        return Err(Error::EmptyQ);
    }
    let mut values = BTreeMap::new();
    match domain {
        Domain::Subsets => {
            for s in all_subsets(d, false).into_iter().filter(|s| !s.elements.is_empty()) {
                values.insert(s.to_string(), p.max_of(&s.raw()).expect("nonempty"));
            }
        }
        Domain::Partitions => {
            for t in all_partitions(d, false) {
                values.insert(t.to_string(), p.max_of(&t.raw()).expect("nonempty"));
            }
        }
        Domain::Rows => return Err(Error::Parse("rows need an H-representation".into())),
    }
    Ok(BVector { domain, d, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, ints};

    fn subsets_b(d: usize, f: impl Fn(&SubsetLabel) -> Rat) -> BVector {
        let values = all_subsets(d, false).iter().filter(|s| !s.elements.is_empty()).map(|s| (s.to_string(), f(s))).collect();
        BVector::new(Domain::Subsets, d, values).unwrap()
    }

    fn cube_b() -> BVector {
        subsets_b(3, |s| int([0, 3, 4, 6, 6][s.elements.len()]))
    }

    fn ex23() -> HPolytope {
        HPolytope::from_matrix(
            vec![ints(&[-1, 0]), ints(&[0, 1]), ints(&[0, -1]), ints(&[1, -1])],
            ints(&[1, 2, 1, 2]),
            None,
        )
        .unwrap()
    }

    #[test]
    fn submodular_examples() {
        let v = check_submodular(&cube_b()).unwrap();
        match v.certificate {
            Some(Certificate::Submodular { lhs, rhs, .. }) => assert_eq!((lhs, rhs), (int(9), int(8))),
            other => panic!("{other:?}"),
        }
        assert!(check_submodular(&subsets_b(3, |s| int(s.elements.len() as i64))).unwrap().member);
        assert!(check_submodular(&subsets_b(3, |s| int(s.elements.len().min(2) as i64))).unwrap().member);
    }

    #[test]
    fn rank_functions() {
        assert!(is_rank_function(&subsets_b(3, |s| int(s.elements.len().min(2) as i64))).unwrap().member);
        let v = is_rank_function(&cube_b()).unwrap();
        assert!(matches!(v.certificate, Some(Certificate::Rank { ref condition, .. }) if condition == "R3"));
    }

    #[test]
    fn general_membership_worked_example() {
        let p0 = ex23();
        assert!(general_defcone_membership(&p0, &ints(&[1, 2, 1, 2]), None, PairMode::Full).unwrap().member);
        let v = general_defcone_membership(&p0, &ints(&[1, 2, 2, 0]), None, PairMode::Full).unwrap();
        assert!(!v.member);
        let q3 = p0.with_rhs(&ints(&[1, 2, 2, 0]), None);
        let def = is_deformation(&p0, &q3).unwrap();
        assert!(def.verdict.member);
        assert_eq!(def.tight_rhs, ints(&[1, 2, 1, 0]));
        let b1 = vec![int(3), int(2), int(0), frac(5, 2)];
        assert!(general_defcone_membership(&p0, &b1, None, PairMode::Neighboring).unwrap().member);
    }

    #[test]
    fn essential_examples() {
        let e2 = essential_ren_inequalities(2);
        let w = e2.iter().find(|w| w.lhs.contains_key("12|3")).unwrap();
        assert_eq!(w.lhs["12|3"], int(3));
        assert_eq!(w.balance, int(0));
        let rhs: BTreeSet<&str> = w.rhs.iter().map(|(l, _)| l.as_str()).collect();
        assert_eq!(rhs, BTreeSet::from(["1|2|3", "2|1|3"]));
        let e3 = essential_ren_inequalities(3);
        let w = e3.iter().find(|w| w.lhs.get("13|2|4") == Some(&int(2))).unwrap();
        assert_eq!(w.lhs["13|24"], int(1));
        assert_eq!(w.balance, int(0));
        let e1 = essential_ren_inequalities(1);
        assert_eq!(e1.len(), 1);
        assert_eq!(e1[0].balance, int(3));
    }

    #[test]
    fn diamond_count() {
        assert_eq!(diamond_inequalities(2).len(), 6);
    }

    #[test]
    fn zero_is_member() {
        let b = subsets_b(2, |_| int(0));
        assert!(check_submodular(&b).unwrap().member);
        let zero_nested = BVector::new(
            Domain::Partitions,
            2,
            all_partitions(2, false).iter().map(|t| (t.to_string(), int(0))).collect(),
        )
        .unwrap();
        assert!(check_nested_b(&zero_nested).unwrap().member);
    }
}
