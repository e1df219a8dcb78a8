//! The Boolean lattice of subsets and the poset of ordered set partitions of
//! `[d+1]`, with their ray vectors and the bijection between pairs of
//! permutations and maximal chains.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::exactgeom::{canonical_ray, QuotientRay};
use crate::rat::{int, Rat, RatVec};

/// A permutation in one-line notation with values `1..=n`.
pub type Perm = Vec<usize>;

pub fn inverse(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v - 1] = i + 1;
    }
    inv
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&v| v >= 1 && v <= p.len() && !std::mem::replace(&mut seen[v - 1], true))
}

/// All permutations of `1..=n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    (1..=n).permutations(n).collect()
}

fn join_elements(xs: &[usize], n: usize) -> String {
    if n >= 10 {
        xs.iter().map(|x| x.to_string()).join(",")
    } else {
        xs.iter().map(|x| x.to_string()).collect()
    }
}

fn split_elements(s: &str, n: usize) -> Result<Vec<usize>> {
    let bad = || Error::Parse(format!("bad element list {s:?}"));
    let parts: Vec<&str> = if s.contains(',') || n >= 10 {
        s.split(',').map(str::trim).collect()
    } else {
        s.trim().split("").filter(|t| !t.is_empty()).collect()
    };
    parts.into_iter().map(|t| t.parse::<usize>().map_err(|_| bad())).collect()
}

pub fn perm_string(p: &[usize]) -> String {
    join_elements(p, p.len())
}

pub fn parse_perm(s: &str) -> Result<Perm> {
    let digits = s.trim().trim_start_matches('[').trim_end_matches(']');
    let n_hint = if digits.contains(',') { 10 } else { digits.len() };
    let p = split_elements(digits, n_hint)?;
    if !is_permutation(&p) {
        return Err(Error::Parse(format!("not a permutation: {s:?}")));
    }
    Ok(p)
}

/// A subset of `[n]`, elements sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetLabel {
    pub n: usize,
    pub elements: Vec<usize>,
}

pub const EMPTY_LABEL: &str = "∅";

impl SubsetLabel {
    pub fn new(n: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = elements.into_iter().collect();
        if let Some(&x) = set.iter().find(|&&x| x == 0 || x > n) {
            return Err(Error::IndexOutOfRange { index: x, max: n });
        }
        Ok(SubsetLabel { n, elements: set.into_iter().collect() })
    }

    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == EMPTY_LABEL {
            return Ok(SubsetLabel { n, elements: Vec::new() });
        }
        Self::new(n, split_elements(t, n)?)
    }

    pub fn is_proper(&self) -> bool {
        !self.elements.is_empty() && self.elements.len() < self.n
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn raw(&self) -> RatVec {
        (1..=self.n).map(|i| int(self.contains(i) as i64)).collect()
    }

    pub fn union(&self, o: &SubsetLabel) -> SubsetLabel {
        SubsetLabel { n: self.n, elements: self.elements.iter().chain(&o.elements).copied().collect::<BTreeSet<_>>().into_iter().collect() }
    }

    pub fn intersection(&self, o: &SubsetLabel) -> SubsetLabel {
        SubsetLabel { n: self.n, elements: self.elements.iter().filter(|x| o.contains(**x)).copied().collect() }
    }

    pub fn is_subset(&self, o: &SubsetLabel) -> bool {
        self.elements.iter().all(|x| o.contains(*x))
    }

    pub fn complement(&self) -> SubsetLabel {
        SubsetLabel { n: self.n, elements: (1..=self.n).filter(|x| !self.contains(*x)).collect() }
    }

    pub fn with(&self, x: usize) -> SubsetLabel {
        let mut e = self.elements.clone();
        if !self.contains(x) {
            e.push(x);
            e.sort();
        }
        SubsetLabel { n: self.n, elements: e }
    }
}

impl fmt::Display for SubsetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elements.is_empty() {
            f.write_str(EMPTY_LABEL)
        } else {
            f.write_str(&join_elements(&self.elements, self.n))
        }
    }
}

/// Subsets of `[d+1]` in canonical order (size, then lexicographic). With
/// `proper`, the empty set and `[d+1]` are left out.
pub fn all_subsets(d: usize, proper: bool) -> Vec<SubsetLabel> {
    let n = d + 1;
    let mut out = Vec::new();
    for k in 0..=n {
        if proper && (k == 0 || k == n) {
            continue;
        }
        for c in (1..=n).combinations(k) {
            out.push(SubsetLabel { n, elements: c });
        }
    }
    out
}

/// An ordered set partition of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedSetPartition {
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl OrderedSetPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            if b.is_empty() {
                return Err(Error::Parse("empty block".into()));
            }
            b.sort();
            for &x in &b {
                if x == 0 || x > n {
                    return Err(Error::IndexOutOfRange { index: x, max: n });
                }
                if std::mem::replace(&mut seen[x - 1], true) {
                    return Err(Error::Parse(format!("element {x} repeated")));
                }
            }
            out.push(b);
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Parse("blocks do not cover the ground set".into()));
        }
        Ok(OrderedSetPartition { n, blocks: out })
    }

    /// Parses the `34|15|267` form; `n` defaults to the number of elements.
    pub fn parse(s: &str, n: Option<usize>) -> Result<Self> {
        let t = s.trim();
        let guess = n.unwrap_or_else(|| if t.contains(',') { 10 } else { t.chars().filter(|c| c.is_ascii_digit()).count() });
        let blocks: Vec<Vec<usize>> = t.split('|').map(|b| split_elements(b, guess)).collect::<Result<_>>()?;
        let total = n.unwrap_or_else(|| blocks.iter().map(Vec::len).sum());
        Self::new(total, blocks)
    }

    pub fn top(n: usize) -> Self {
        OrderedSetPartition { n, blocks: vec![(1..=n).collect()] }
    }

    /// Singletons in the given linear order.
    pub fn singletons(order: &[usize]) -> Self {
        OrderedSetPartition { n: order.len(), blocks: order.iter().map(|&x| vec![x]).collect() }
    }

    pub fn is_top(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn rank(&self) -> usize {
        self.n - self.blocks.len()
    }

    /// Zero-based index of the block holding `x`.
    pub fn block_of(&self, x: usize) -> usize {
        self.blocks.iter().position(|b| b.contains(&x)).expect("element in ground set")
    }

    /// `sum_i i * e_{S_i}` as a vector in `R^{n}`.
    pub fn raw(&self) -> RatVec {
        let mut v = vec![int(0); self.n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                v[x - 1] = int(i as i64 + 1);
            }
        }
        v
    }

    /// `<e_T, 1>`.
    pub fn card(&self) -> Rat {
        crate::rat::sum(&self.raw())
    }

    fn merged(&self, i: usize) -> Self {
        let mut blocks = self.blocks.clone();
        let next = blocks.remove(i + 1);
        blocks[i].extend(next);
        blocks[i].sort();
        OrderedSetPartition { n: self.n, blocks }
    }
}

impl fmt::Display for OrderedSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.blocks.iter().map(|b| join_elements(b, self.n)).join("|");
        f.write_str(&s)
    }
}

/// Ordered set partitions of `[d+1]` sorted by (#blocks descending,
/// string form). With `proper`, the one-block partition is left out.
pub fn all_partitions(d: usize, proper: bool) -> Vec<OrderedSetPartition> {
    let n = d + 1;
    let mut out = Vec::new();
    for k in (1..=n).rev() {
        if proper && k == 1 {
            continue;
        }
        let mut level: Vec<OrderedSetPartition> = Vec::new();
        for assign in std::iter::repeat_n(0..k, n).multi_cartesian_product() {
            let mut blocks = vec![Vec::new(); k];
            for (x, &b) in assign.iter().enumerate() {
                blocks[b].push(x + 1);
            }
            if blocks.iter().all(|b| !b.is_empty()) {
                level.push(OrderedSetPartition { n, blocks });
            }
        }
        level.sort_by_key(|t| t.to_string());
        out.extend(level);
    }
    out
}

/// Number of ordered set partitions of `[n]`, by the recurrence
/// `a(n) = sum_{k=1}^{n} C(n,k) a(n-k)`.
pub fn fubini(n: usize) -> u128 {
    let mut a = vec![1u128; n + 1];
    for m in 1..=n {
        a[m] = (1..=m).map(|k| crate::budget::binomial(m, k) * a[m - k]).sum();
    }
    a[n]
}

pub fn e_set(s: &SubsetLabel) -> Result<(RatVec, QuotientRay)> {
    if !s.is_proper() {
        return Err(Error::TopOrBottom);
    }
    let raw = s.raw();
    let ray = canonical_ray(&raw)?;
    Ok((raw, ray))
}

pub fn e_partition(t: &OrderedSetPartition) -> Result<(RatVec, QuotientRay)> {
    if t.is_top() {
        return Err(Error::TopOrBottom);
    }
    let raw = t.raw();
    let ray = canonical_ray(&raw)?;
    Ok((raw, ray))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StructureType {
    pub positions: Vec<usize>,
}

pub fn structure_type(t: &OrderedSetPartition) -> StructureType {
    let mut positions = vec![0];
    let mut acc = 0;
    for b in &t.blocks {
        acc += b.len();
        positions.push(acc);
    }
    StructureType { positions }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermPair {
    pub pi: Perm,
    pub tau: Perm,
}

impl PermPair {
    pub fn new(pi: Perm, tau: Perm) -> Result<Self> {
        if !is_permutation(&pi) || !is_permutation(&tau) || tau.len() + 1 != pi.len() {
            return Err(Error::Parse(format!("invalid pair {pi:?}, {tau:?}")));
        }
        Ok(PermPair { pi, tau })
    }

    pub fn d(&self) -> usize {
        self.tau.len()
    }
}

/// All pairs in `S_{d+1} x S_d`, lexicographic.
pub fn all_pairs(d: usize) -> Vec<PermPair> {
    let taus = all_perms(d);
    all_perms(d + 1)
        .into_iter()
        .flat_map(|pi| taus.iter().map(move |tau| PermPair { pi: pi.clone(), tau: tau.clone() }))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MaximalChain {
    pub elements: Vec<OrderedSetPartition>,
}

/// `T_r` of the labeled diagram: elements in the order `pi^{-1}`, bars between
/// positions `i, i+1` labeled `tau(i)`, and every bar with label `<= r` erased.
pub fn chain_element(p: &PermPair, r: usize) -> OrderedSetPartition {
    let order = inverse(&p.pi);
    let mut blocks = vec![vec![order[0]]];
    for (i, &x) in order.iter().enumerate().skip(1) {
        if p.tau[i - 1] > r {
            blocks.push(Vec::new());
        }
        blocks.last_mut().unwrap().push(x);
    }
    for b in blocks.iter_mut() {
        b.sort();
    }
    OrderedSetPartition { n: order.len(), blocks }
}

pub fn chain_of(p: &PermPair) -> MaximalChain {
    MaximalChain { elements: (0..=p.d()).map(|r| chain_element(p, r)).collect() }
}

pub fn covers(lower: &OrderedSetPartition, upper: &OrderedSetPartition) -> bool {
    lower.n == upper.n
        && upper.blocks.len() + 1 == lower.blocks.len()
        && (0..upper.blocks.len()).any(|i| &lower.merged(i) == upper)
}

pub fn pair_of_chain(c: &MaximalChain) -> Result<PermPair> {
    let els = &c.elements;
    let Some(t0) = els.first() else {
        return Err(Error::MalformedChain("empty chain".into()));
    };
    let n = t0.n;
    if n < 2 || els.len() != n {
        return Err(Error::MalformedChain(format!("expected {n} elements, got {}", els.len())));
    }
    if t0.blocks.len() != n {
        return Err(Error::MalformedChain("first element is not a linear order".into()));
    }
    for (r, w) in els.windows(2).enumerate() {
        if !covers(&w[0], &w[1]) {
            return Err(Error::MalformedChain(format!("step {} does not merge two adjacent blocks", r + 1)));
        }
    }
    let order: Vec<usize> = t0.blocks.iter().map(|b| b[0]).collect();
    let pi = inverse(&order);
    let mut tau = vec![0; n - 1];
    for (i, t) in tau.iter_mut().enumerate() {
        let (a, b) = (order[i], order[i + 1]);
        *t = (1..n).find(|&r| els[r].block_of(a) == els[r].block_of(b)).expect("top joins all");
    }
    Ok(PermPair { pi, tau })
}

/// `Gamma_i^pi = { pi^{-1}(j) : i < j <= d+1 }`.
pub fn gamma(pi: &[usize], i: usize) -> Result<SubsetLabel> {
    let n = pi.len();
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, max: n - 1 });
    }
    let inv = inverse(pi);
    SubsetLabel::new(n, inv[i..].iter().copied())
}

/// A common linear order refined by both partitions, if one exists.
fn common_order(s: &OrderedSetPartition, t: &OrderedSetPartition) -> Option<Vec<usize>> {
    for x in 1..=s.n {
        for y in 1..=s.n {
            if s.block_of(x) < s.block_of(y) && t.block_of(x) > t.block_of(y) {
                return None;
            }
        }
    }
    let mut order: Vec<usize> = (1..=s.n).collect();
    order.sort_by_key(|&x| (s.block_of(x), t.block_of(x), x));
    Some(order)
}

fn bars(t: &OrderedSetPartition, order: &[usize]) -> BTreeSet<usize> {
    (1..order.len()).filter(|&i| t.block_of(order[i - 1]) != t.block_of(order[i])).collect()
}

fn from_bars(order: &[usize], bars: &BTreeSet<usize>) -> OrderedSetPartition {
    let mut blocks = vec![vec![order[0]]];
    for (i, &x) in order.iter().enumerate().skip(1) {
        if bars.contains(&i) {
            blocks.push(Vec::new());
        }
        blocks.last_mut().unwrap().push(x);
    }
    for b in blocks.iter_mut() {
        b.sort();
    }
    OrderedSetPartition { n: order.len(), blocks }
}

fn interval_op(
    s: &OrderedSetPartition,
    t: &OrderedSetPartition,
    op: impl Fn(&BTreeSet<usize>, &BTreeSet<usize>) -> BTreeSet<usize>,
) -> Result<OrderedSetPartition> {
    let order = common_order(s, t)
        .filter(|_| s.n == t.n)
        .ok_or_else(|| Error::NotComparableInterval(s.to_string(), t.to_string()))?;
    Ok(from_bars(&order, &op(&bars(s, &order), &bars(t, &order))))
}

/// Least upper bound inside a common interval `[T(pi), top]`: keep the bars
/// both partitions have.
pub fn join(s: &OrderedSetPartition, t: &OrderedSetPartition) -> Result<OrderedSetPartition> {
    interval_op(s, t, |a, b| a.intersection(b).copied().collect())
}

/// Greatest lower bound inside a common interval: keep every bar of either.
pub fn meet(s: &OrderedSetPartition, t: &OrderedSetPartition) -> Result<OrderedSetPartition> {
    interval_op(s, t, |a, b| a.union(b).copied().collect())
}
