//! Exact Gaussian elimination and Fourier–Motzkin feasibility.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{Rat, RatVec};

pub type Matrix = Vec<RatVec>;

/// Reduced row echelon form. Returns the reduced matrix and its pivot columns.
pub fn rref(mut m: Matrix) -> (Matrix, Vec<usize>) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot = m[r].clone();
                for (x, p) in m[i][c..cols].iter_mut().zip(&pivot[c..cols]) {
                    *x -= p * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(m: &[RatVec]) -> usize {
    if m.is_empty() {
        return 0;
    }
    rref(m.to_vec()).1.len()
}

/// Basis of `{x : m x = 0}`, one vector per free column.
pub fn nullspace(m: &[RatVec], cols: usize) -> Vec<RatVec> {
    let (r, pivots) = rref(m.to_vec());
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for f in (0..cols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![Rat::zero(); cols];
        v[f] = Rat::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -r[row][f].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solves a square system; `None` when singular.
pub fn solve_square(a: &[RatVec], b: &[Rat]) -> Option<RatVec> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) || b.len() != n {
        return None;
    }
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(aug);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(r.into_iter().map(|row| row[n].clone()).collect())
}

/// Transposes a list of column vectors into a row-major matrix.
pub fn columns_to_matrix(cols: &[RatVec], rows: usize) -> Matrix {
    (0..rows)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect()
}

/// Coefficients of `x` in the simplicial cone spanned by linearly independent
/// `gens`, or `None` if `x` lies outside. `lineality` vectors are free
/// directions (e.g. the all-one vector when working modulo 1); their
/// coefficients are not returned.
pub fn simplicial_coefficients(
    gens: &[RatVec],
    lineality: &[RatVec],
    x: &[Rat],
) -> Result<Option<RatVec>> {
    let n = x.len();
    let mut cols: Vec<RatVec> = gens.to_vec();
    cols.extend(lineality.iter().cloned());
    if rank(&columns_to_matrix(&cols, n)) != cols.len() {
        return Err(Error::DependentRays);
    }
    let mut aug = columns_to_matrix(&cols, n);
    for (row, xi) in aug.iter_mut().zip(x) {
        row.push(xi.clone());
    }
    let k = cols.len();
    let (r, pivots) = rref(aug);
    if pivots.contains(&k) {
        return Ok(None);
    }
    let mut coef = vec![Rat::zero(); k];
    for (row, &pc) in pivots.iter().enumerate() {
        coef[pc] = r[row][k].clone();
    }
    coef.truncate(gens.len());
    if coef.iter().any(|c| c.is_negative()) {
        return Ok(None);
    }
    Ok(Some(coef))
}

/// Normalizes an inequality `a·y <= c` so that duplicates collapse.
fn normalize(a: RatVec, c: Rat) -> (RatVec, Rat) {
    match a.iter().find(|v| !v.is_zero()) {
        Some(lead) => {
            let s = lead.abs().recip();
            (a.iter().map(|v| v * &s).collect(), c * s)
        }
        None => (a, c),
    }
}

/// Decides whether `{y : a_i·y <= c_i}` is nonempty by Fourier–Motzkin elimination.
pub fn fm_feasible(rows: Vec<(RatVec, Rat)>, vars: usize) -> bool {
    let mut sys: BTreeSet<(RatVec, Rat)> = rows
        .into_iter()
        .map(|(a, c)| normalize(a, c))
        .collect();
    for j in 0..vars {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), BTreeSet::new());
        for (a, c) in sys {
            if a[j].is_positive() {
                pos.push((a, c));
            } else if a[j].is_negative() {
                neg.push((a, c));
            } else {
                rest.insert((a, c));
            }
        }
        for (ap, cp) in &pos {
            for (an, cn) in &neg {
                let sp = ap[j].recip();
                let sn = -an[j].recip();
                let a: RatVec = ap.iter().zip(an).map(|(x, y)| x * &sp + y * &sn).collect();
                let c = cp * &sp + cn * &sn;
                rest.insert(normalize(a, c));
            }
        }
        if rest.iter().any(|(a, c)| a.iter().all(|v| v.is_zero()) && c.is_negative()) {
            return false;
        }
        sys = rest;
    }
    sys.iter().all(|(_, c)| !c.is_negative())
}

/// Whether `x` is a nonnegative combination of `gens` plus any combination of
/// `lineality`. Equalities are eliminated by row reduction, the remaining sign
/// constraints by Fourier–Motzkin.
pub fn cone_contains(gens: &[RatVec], lineality: &[RatVec], x: &[Rat]) -> bool {
    let n = x.len();
    let g = gens.len();
    let mut cols: Vec<RatVec> = gens.to_vec();
    cols.extend(lineality.iter().cloned());
    let k = cols.len();
    let mut aug = columns_to_matrix(&cols, n);
    for (row, xi) in aug.iter_mut().zip(x) {
        row.push(xi.clone());
    }
    let (r, pivots) = rref(aug);
    if pivots.contains(&k) {
        return false;
    }
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..k).filter(|c| !pivot_set.contains(c)).collect();
    let mut ineqs = Vec::new();
    // pivot variable = r[row][k] - sum_f r[row][f] * y_f ; need >= 0 when it is a generator
    for (row, &pc) in pivots.iter().enumerate() {
        if pc < g {
            let a: RatVec = free.iter().map(|&f| r[row][f].clone()).collect();
            ineqs.push((a, r[row][k].clone()));
        }
    }
    for (idx, &f) in free.iter().enumerate() {
        if f < g {
            let mut a = vec![Rat::zero(); free.len()];
            a[idx] = -Rat::one();
            ineqs.push((a, Rat::zero()));
        }
    }
    fm_feasible(ineqs, free.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int, ints};

    #[test]
    fn solve_identity_and_singular() {
        let id = vec![ints(&[1, 0]), ints(&[0, 1])];
        assert_eq!(solve_square(&id, &ints(&[3, 4])), Some(ints(&[3, 4])));
        let sing = vec![ints(&[1, 0]), ints(&[1, 0])];
        assert_eq!(solve_square(&sing, &ints(&[1, 2])), None);
    }

    #[test]
    fn solve_worked_vertex() {
        let a = vec![ints(&[-1, 0]), ints(&[0, 1])];
        assert_eq!(solve_square(&a, &ints(&[1, 2])), Some(ints(&[-1, 2])));
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = vec![ints(&[1, 1, 1])];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert_eq!(crate::rat::sum(&v), int(0));
        }
    }

    #[test]
    fn fm_detects_infeasible() {
        // y <= 1, -y <= -2
        let rows = vec![(ints(&[1]), int(1)), (ints(&[-1]), int(-2))];
        assert!(!fm_feasible(rows, 1));
        let rows = vec![(ints(&[1, 1]), int(1)), (ints(&[-1, 0]), int(0)), (ints(&[0, -1]), frac(-1, 2))];
        assert!(fm_feasible(rows, 2));
    }

    #[test]
    fn cone_membership_non_simplicial() {
        let gens = vec![ints(&[1, 0]), ints(&[0, 1]), ints(&[1, 1])];
        assert!(cone_contains(&gens, &[], &ints(&[2, 3])));
        assert!(!cone_contains(&gens, &[], &ints(&[-1, 3])));
        assert!(cone_contains(&gens, &[ints(&[1, 0])], &ints(&[-1, 3])));
    }
}
