//! Chiseling faces off polytopes and the barycentric subdivision it
//! produces on normal fans.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactgeom::{
    enumerate_with_equalities, facets, int_to_rat, lattice_normal, normal_fan, primitive_integer, rep_label,
    vertex_enumeration, Ambient, HPolytope, HRow, VPolytope,
};
use crate::fans::{braid_fan, nested_braid_fan};
use crate::linalg::rank;
use crate::permutohedra::{is_appropriate, nested_vertices, perm_vertices, AlphaBeta};
use crate::posets::{OrderedSetPartition, SubsetLabel};
use crate::rat::{dot, frac, int, ints, sub, Rat, RatVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiselSchedule {
    pub epsilons: RatVec,
    pub mode: u8,
}

impl ChiselSchedule {
    /// Mode 1 needs `eps_1 < 1/2`, mode 2 `eps_1 < 1/4`; both need positive
    /// `eps_i < eps_{i-1} / 2`.
    pub fn new(epsilons: RatVec, mode: u8) -> Result<Self> {
        let bound = match mode {
            1 => frac(1, 2),
            2 => frac(1, 4),
            _ => return Err(Error::InvalidSchedule(format!("unknown mode {mode}"))),
        };
        let Some(first) = epsilons.first() else {
            return Err(Error::InvalidSchedule("no distances".into()));
        };
        if first >= &bound {
            return Err(Error::InvalidSchedule(format!("eps_1 = {first} is not below {bound}")));
        }
        if let Some(e) = epsilons.iter().find(|e| !e.is_positive()) {
            return Err(Error::InvalidSchedule(format!("distance {e} is not positive")));
        }
        for (i, w) in epsilons.windows(2).enumerate() {
            if w[1] >= &w[0] / int(2) {
                return Err(Error::InvalidSchedule(format!("eps_{} = {} is not below eps_{} / 2", i + 2, w[1], i + 1)));
            }
        }
        Ok(ChiselSchedule { epsilons, mode })
    }

    /// `eps_i = 5^{-i}`, valid in both modes.
    pub fn default_for(d: usize, mode: u8) -> Self {
        let eps = (1..=d as u32).map(|i| frac(1, 5i64.pow(i))).collect();
        ChiselSchedule::new(eps, mode).expect("powers of 1/5 satisfy both modes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceRecord {
    /// Labels of the facets containing the face, sorted.
    pub tight: Vec<String>,
    pub vertices: BTreeSet<usize>,
    pub dim: usize,
    /// Sum of the tight facet normals.
    pub direction: RatVec,
    /// Maximum of the direction over the polytope, attained exactly on the face.
    pub offset: Rat,
}

impl FaceRecord {
    pub fn label(&self) -> String {
        format!("chisel[{}]", self.tight.join(","))
    }
}

/// Vertex/facet incidences of a polytope.
#[derive(Debug, Clone)]
pub struct Incidence {
    pub ambient: Ambient,
    pub vertices: Vec<RatVec>,
    pub facet_labels: Vec<String>,
    pub facet_normals: Vec<RatVec>,
    pub facet_sets: Vec<BTreeSet<usize>>,
}

fn facet_label(normal: &[num_bigint::BigInt]) -> String {
    let zero_one = normal.iter().all(|x| x.is_zero() || x.is_one());
    if zero_one {
        let els: Vec<usize> = normal.iter().enumerate().filter(|(_, x)| x.is_one()).map(|(i, _)| i + 1).collect();
        SubsetLabel { n: normal.len(), elements: els }.to_string()
    } else {
        rep_label(normal)
    }
}

/// Incidences of a V-polytope with lattice-primitive facet normals (0/1
/// vectors for simplices and permutohedra in the quotient setting).
pub fn incidence(p: &VPolytope) -> Result<Incidence> {
    let fs = facets(p)?;
    let mut facet_labels = Vec::new();
    let mut facet_normals = Vec::new();
    let mut facet_sets = Vec::new();
    for f in &fs.facets {
        let normal = match fs.ambient {
            Ambient::Quotient => lattice_normal(&f.normal)?,
            Ambient::Linear => primitive_integer(&f.normal).expect("nonzero normal"),
        };
        facet_labels.push(facet_label(&normal));
        facet_normals.push(int_to_rat(&normal));
        facet_sets.push(f.vertices.clone());
    }
    Ok(Incidence { ambient: fs.ambient, vertices: p.vertices.clone(), facet_labels, facet_normals, facet_sets })
}

fn incidence_of_h(p: &HPolytope) -> Result<Incidence> {
    let en = vertex_enumeration(p)?;
    let mut facet_sets = vec![BTreeSet::new(); p.rows.len()];
    for (vi, t) in en.tight.iter().enumerate() {
        for &r in t {
            facet_sets[r].insert(vi);
        }
    }
    Ok(Incidence {
        ambient: p.ambient(),
        vertices: en.vertices,
        facet_labels: p.rows.iter().map(|r| r.label.clone()).collect(),
        facet_normals: p.rows.iter().map(|r| r.normal.clone()).collect(),
        facet_sets,
    })
}

fn affine_dim(vs: &[RatVec], idx: &BTreeSet<usize>) -> usize {
    let mut it = idx.iter();
    let Some(&first) = it.next() else { return 0 };
    let diffs: Vec<RatVec> = it.map(|&i| sub(&vs[i], &vs[first])).collect();
    rank(&diffs)
}

/// Nonempty proper faces, as closures of facet intersections.
pub fn all_faces(inc: &Incidence) -> Vec<FaceRecord> {
    let full: BTreeSet<usize> = (0..inc.vertices.len()).collect();
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut queue: Vec<BTreeSet<usize>> = Vec::new();
    for s in &inc.facet_sets {
        if !s.is_empty() && s != &full && seen.insert(s.clone()) {
            queue.push(s.clone());
        }
    }
    while let Some(face) = queue.pop() {
        for s in &inc.facet_sets {
            let meet: BTreeSet<usize> = face.intersection(s).copied().collect();
            if !meet.is_empty() && seen.insert(meet.clone()) {
                queue.push(meet);
            }
        }
    }
    let mut out: Vec<FaceRecord> = seen
        .into_iter()
        .map(|vs| {
            let tight_idx: Vec<usize> =
                (0..inc.facet_sets.len()).filter(|&j| vs.is_subset(&inc.facet_sets[j])).collect();
            let n = inc.vertices[0].len();
            let direction = tight_idx.iter().fold(vec![Rat::zero(); n], |acc, &j| crate::rat::add(&acc, &inc.facet_normals[j]));
            let offset = inc.vertices.iter().map(|v| dot(&direction, v)).max().expect("nonempty");
            let mut tight: Vec<String> = tight_idx.iter().map(|&j| inc.facet_labels[j].clone()).collect();
            tight.sort();
            FaceRecord { tight, dim: affine_dim(&inc.vertices, &vs), vertices: vs, direction, offset }
        })
        .collect();
    out.sort_by(|a, b| (a.dim, &a.tight).cmp(&(b.dim, &b.tight)));
    out
}

/// All `k`-dimensional faces of `P`.
pub fn faces_of(p: &VPolytope, k: usize) -> Result<Vec<FaceRecord>> {
    let inc = incidence(p)?;
    Ok(all_faces(&inc).into_iter().filter(|f| f.dim == k).collect())
}

/// `P ∩ {<a_G, x> <= b_G - eps}` for each face, after checking exactly that
/// the cut only removes the faces and that the new facets do not meet.
pub fn chisel(p: &HPolytope, faces: &[FaceRecord], eps: &Rat) -> Result<HPolytope> {
    let en = vertex_enumeration(p)?;
    let mut rows = p.rows.clone();
    for (i, g) in faces.iter().enumerate() {
        for h in &faces[i + 1..] {
            let on = |f: &FaceRecord, v: &RatVec| dot(&f.direction, v) == f.offset;
            if en.vertices.iter().any(|v| on(g, v) && on(h, v)) {
                return Err(Error::DegenerateInput(format!("faces {} and {} meet", g.label(), h.label())));
            }
        }
        let cut = &g.offset - eps;
        for v in &en.vertices {
            let val = dot(&g.direction, v);
            if val != g.offset && val >= cut {
                return Err(Error::EpsTooLarge(format!(
                    "vertex {} is not strictly inside the cut at {}",
                    crate::rat::fmt_vec(v),
                    g.label()
                )));
            }
        }
        rows.push(HRow { label: g.label(), normal: g.direction.clone(), rhs: cut });
    }
    let q = HPolytope::new(p.dim, p.equality_rhs.clone(), rows)?;
    for (i, g) in faces.iter().enumerate() {
        for h in &faces[i + 1..] {
            let hit = enumerate_with_equalities(
                &q,
                &[(g.direction.clone(), &g.offset - eps), (h.direction.clone(), &h.offset - eps)],
            )?;
            if !hit.is_empty() {
                return Err(Error::EpsTooLarge(format!("new facets at {} and {} meet", g.label(), h.label())));
            }
        }
    }
    Ok(q)
}

fn facet_hrep(inc: &Incidence) -> Result<HPolytope> {
    let n = inc.vertices[0].len();
    let rows = (0..inc.facet_labels.len())
        .map(|j| {
            let rhs = inc.vertices.iter().map(|v| dot(&inc.facet_normals[j], v)).max().expect("nonempty");
            HRow { label: inc.facet_labels[j].clone(), normal: inc.facet_normals[j].clone(), rhs }
        })
        .collect();
    let eq = match inc.ambient {
        Ambient::Quotient => Some(crate::rat::sum(&inc.vertices[0])),
        Ambient::Linear => None,
    };
    HPolytope::new(n, eq, rows)
}

fn poly_dim(inc: &Incidence) -> usize {
    let n = inc.vertices[0].len();
    match inc.ambient {
        Ambient::Quotient => n - 1,
        Ambient::Linear => n,
    }
}

/// The facets of `P0` together with `<a_G, x> <= b_G - eps_{dim G + 1}` for
/// every nonempty proper face `G`.
pub fn barycentric_by_chiseling(p0: &VPolytope, sched: &ChiselSchedule) -> Result<HPolytope> {
    let inc = incidence(p0)?;
    let d = poly_dim(&inc);
    if sched.epsilons.len() != d {
        return Err(Error::InvalidSchedule(format!("{} distances for dimension {d}", sched.epsilons.len())));
    }
    let mut h = facet_hrep(&inc)?;
    for g in all_faces(&inc) {
        let rhs = &g.offset - &sched.epsilons[g.dim];
        h.rows.push(HRow { label: g.label(), normal: g.direction.clone(), rhs });
    }
    HPolytope::new(h.dim, h.equality_rhs, h.rows)
}

/// Round `i` chisels, at distance `eps_i`, every `(i-1)`-face of the current
/// polytope whose tight rows all come from `P0`.
pub fn barycentric_rounds(p0: &VPolytope, sched: &ChiselSchedule) -> Result<HPolytope> {
    let inc = incidence(p0)?;
    let d = poly_dim(&inc);
    if sched.epsilons.len() != d {
        return Err(Error::InvalidSchedule(format!("{} distances for dimension {d}", sched.epsilons.len())));
    }
    let mut h = facet_hrep(&inc)?;
    let original: BTreeSet<String> = h.rows.iter().map(|r| r.label.clone()).collect();
    for (round, eps) in sched.epsilons.iter().enumerate() {
        let cur = incidence_of_h(&h)?;
        let faces: Vec<FaceRecord> = all_faces(&cur)
            .into_iter()
            .filter(|f| f.dim == round && f.tight.iter().all(|l| original.contains(l)))
            .collect();
        h = chisel(&h, &faces, eps)?;
    }
    Ok(h)
}

/// `(eps_d, eps_{d-1} - eps_d, ..., eps_1 - eps_2, 1 - eps_1)`.
pub fn derived_alpha(eps: &[Rat]) -> RatVec {
    let d = eps.len();
    let mut a = vec![eps[d - 1].clone()];
    for j in (1..d).rev() {
        a.push(&eps[j - 1] - &eps[j]);
    }
    a.push(Rat::one() - &eps[0]);
    a
}

/// `(eps_2 - eps_1, ..., eps_d - eps_{d-1}, -eps_d)`.
pub fn derived_beta(eps: &[Rat]) -> RatVec {
    let d = eps.len();
    let mut b: RatVec = (1..d).map(|j| &eps[j] - &eps[j - 1]).collect();
    b.push(-eps[d - 1].clone());
    b
}

pub fn simplex(d: usize) -> VPolytope {
    let n = d + 1;
    let vs = (0..n).map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect();
    VPolytope::new(n, vs).expect("well formed")
}

pub fn standard_permutohedron(d: usize) -> VPolytope {
    let alpha: Vec<i64> = (1..=d as i64 + 1).collect();
    perm_vertices(&ints(&alpha)).expect("increasing")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaryReport {
    pub level: u8,
    pub d: usize,
    pub epsilons: RatVec,
    pub alpha: RatVec,
    pub beta: Option<RatVec>,
    pub appropriate: Option<bool>,
    pub vertex_count: usize,
    pub vertices_match: bool,
    pub fan_match: bool,
    /// Round-by-round construction agrees with the closed form (`d <= 2`).
    pub rounds_match: Option<bool>,
    pub pass: bool,
}

/// Level 1 chisels the simplex into `Perm(alpha)`; level 2 chisels the
/// standard permutohedron into the nested permutohedron with `M = N = 1`.
pub fn verify_bary(level: u8, d: usize, sched: &ChiselSchedule) -> Result<BaryReport> {
    if sched.epsilons.len() != d {
        return Err(Error::InvalidSchedule(format!("{} distances for d = {d}", sched.epsilons.len())));
    }
    ChiselSchedule::new(sched.epsilons.clone(), level)?;
    let eps = &sched.epsilons;
    let (p0, expected, fan, alpha, beta, appropriate) = match level {
        1 => {
            let alpha = derived_alpha(eps);
            (simplex(d), perm_vertices(&alpha)?, braid_fan(d)?, alpha, None, None)
        }
        2 => {
            let alpha: Vec<i64> = (1..=d as i64 + 1).collect();
            let alpha = ints(&alpha);
            let beta = derived_beta(eps);
            let ab = AlphaBeta::new(alpha.clone(), beta.clone(), Rat::one(), Rat::one())?;
            let ok = is_appropriate(&ab).is_none();
            (standard_permutohedron(d), nested_vertices(&ab)?, nested_braid_fan(d)?, alpha, Some(beta), Some(ok))
        }
        _ => return Err(Error::InvalidSchedule(format!("unknown level {level}"))),
    };
    let h = barycentric_by_chiseling(&p0, sched)?;
    let got = vertex_enumeration(&h)?.polytope();
    let vertices_match = got == expected;
    let fan_match = normal_fan(&got).map(|f| f.same_fan(&fan.to_general())).unwrap_or(false);
    let rounds_match = if d <= 2 {
        let r = barycentric_rounds(&p0, sched)?;
        Some(vertex_enumeration(&r)?.polytope() == got)
    } else {
        None
    };
    let pass = vertices_match && fan_match && appropriate != Some(false) && rounds_match != Some(false);
    Ok(BaryReport {
        level,
        d,
        epsilons: eps.clone(),
        alpha,
        beta,
        appropriate,
        vertex_count: got.len(),
        vertices_match,
        fan_match,
        rounds_match,
        pass,
    })
}

/// `T = ([d+1] \ S_k, S_k \ S_{k-1}, ..., S_1)` for a chain `S_1 ⊂ ... ⊂ S_k`
/// of proper subsets naming a face of the permutohedron.
pub fn face_partition_label(chain: &[SubsetLabel]) -> Result<OrderedSetPartition> {
    let Some(last) = chain.last() else {
        return Err(Error::MalformedChain("empty chain names the whole polytope".into()));
    };
    let n = last.n;
    for s in chain {
        if !s.is_proper() || s.n != n {
            return Err(Error::MalformedChain(format!("{s} is not a proper subset")));
        }
    }
    for w in chain.windows(2) {
        if !(w[0].is_subset(&w[1]) && w[0].elements.len() < w[1].elements.len()) {
            return Err(Error::MalformedChain(format!("{} is not below {}", w[0], w[1])));
        }
    }
    let mut blocks = vec![last.complement().elements];
    for w in chain.windows(2).rev() {
        blocks.push(w[1].elements.iter().filter(|x| !w[0].contains(**x)).copied().collect());
    }
    blocks.push(chain[0].elements.clone());
    OrderedSetPartition::new(n, blocks)
}

/// Tight facet labels of a permutohedron face read as a chain of subsets.
pub fn face_chain(face: &FaceRecord, n: usize) -> Result<Vec<SubsetLabel>> {
    let mut chain: Vec<SubsetLabel> = face.tight.iter().map(|l| SubsetLabel::parse(l, n)).collect::<Result<_>>()?;
    chain.sort_by_key(|s| s.elements.len());
    Ok(chain)
}

/// Maps labels of the derived schedule constants for reports.
pub fn schedule_summary(s: &ChiselSchedule) -> BTreeMap<String, String> {
    s.epsilons.iter().enumerate().map(|(i, e)| (format!("eps_{}", i + 1), e.to_string())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::canonical_ray;

    fn square() -> VPolytope {
        VPolytope::new(2, vec![ints(&[0, 0]), ints(&[1, 0]), ints(&[0, 1]), ints(&[1, 1])]).unwrap()
    }

    #[test]
    fn square_faces_and_pentagon() {
        let vs = faces_of(&square(), 0).unwrap();
        assert_eq!(vs.len(), 4);
        assert!(vs.iter().all(|f| f.tight.len() == 2));
        let inc = incidence(&square()).unwrap();
        let h = facet_hrep(&inc).unwrap();
        let q = chisel(&h, &vs[..1], &frac(1, 4)).unwrap();
        assert_eq!(vertex_enumeration(&q).unwrap().vertices.len(), 5);
    }

    #[test]
    fn triangle_hexagon_and_too_far() {
        let tri = simplex(2);
        let inc = incidence(&tri).unwrap();
        let h = facet_hrep(&inc).unwrap();
        let vs = faces_of(&tri, 0).unwrap();
        let hex = chisel(&h, &vs, &frac(1, 3)).unwrap();
        assert_eq!(vertex_enumeration(&hex).unwrap().vertices.len(), 6);
        assert!(matches!(chisel(&h, &vs, &frac(2, 3)), Err(Error::EpsTooLarge(_))));
    }

    #[test]
    fn simplex_directions_point_at_faces() {
        let inc = incidence(&simplex(3)).unwrap();
        for f in all_faces(&inc) {
            let indicator: RatVec = (0..4).map(|i| if f.vertices.iter().any(|&v| inc.vertices[v][i].is_one()) { Rat::one() } else { Rat::zero() }).collect();
            assert_eq!(canonical_ray(&f.direction).unwrap(), canonical_ray(&indicator).unwrap());
            assert_eq!(f.vertices.len(), f.dim + 1);
        }
    }

    #[test]
    fn segment() {
        let s = ChiselSchedule::new(vec![frac(1, 5)], 1).unwrap();
        let h = barycentric_by_chiseling(&simplex(1), &s).unwrap();
        let got = vertex_enumeration(&h).unwrap().polytope();
        assert_eq!(got, perm_vertices(&[frac(1, 5), frac(4, 5)]).unwrap());
    }

    #[test]
    fn derived_constants() {
        let eps = ChiselSchedule::default_for(3, 2).epsilons;
        assert_eq!(derived_alpha(&eps), vec![frac(1, 125), frac(4, 125), frac(4, 25), frac(4, 5)]);
        assert_eq!(derived_beta(&eps), vec![frac(-4, 25), frac(-4, 125), frac(-1, 125)]);
    }

    #[test]
    fn schedules() {
        assert!(ChiselSchedule::new(vec![frac(1, 3), frac(1, 9), frac(1, 27)], 2).is_err());
        assert!(ChiselSchedule::new(vec![frac(1, 3), frac(1, 9), frac(1, 27)], 1).is_ok());
        assert!(ChiselSchedule::new(vec![frac(1, 5), frac(1, 9)], 1).is_err());
    }

    #[test]
    fn face_labels() {
        let chain = [SubsetLabel::new(4, [4]).unwrap(), SubsetLabel::new(4, [1, 3, 4]).unwrap()];
        let t = face_partition_label(&chain).unwrap();
        assert_eq!(t.to_string(), "2|13|4");
        let dir = crate::rat::add(&chain[0].raw(), &chain[1].raw());
        assert_eq!(canonical_ray(&dir).unwrap(), canonical_ray(&t.raw()).unwrap());
        assert!(face_partition_label(&[]).is_err());
        let full: Vec<SubsetLabel> = [vec![3], vec![1, 3], vec![1, 2, 3]].into_iter().map(|e| SubsetLabel::new(4, e).unwrap()).collect();
        assert_eq!(face_partition_label(&full).unwrap().to_string(), "4|2|1|3");
    }
}
