//! Exact feasibility of `{a >= 0 : A a = b}` by a phase-one simplex with
//! Bland's rule. Used for vertex extraction and as the convex-combination
//! membership oracle.

use num_traits::{Signed, Zero};

use crate::exact::{rat, QVector, Rational};

/// Returns a nonnegative solution of `A a = b`, or `None` when none exists.
///
/// `a` is given row-major with `b.len()` rows.
pub fn nonnegative_solution(a: &[QVector], b: &[Rational]) -> Option<QVector> {
    let m = b.len();
    let k = a.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(vec![rat(0); k]);
    }
    let width = k + m + 1;
    let rhs = width - 1;

    let mut tab: Vec<QVector> = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut r = vec![rat(0); width];
        for j in 0..k {
            r[j] = if flip {
                -row[j].clone()
            } else {
                row[j].clone()
            };
        }
        r[k + i] = rat(1);
        r[rhs] = if flip { -bi.clone() } else { bi.clone() };
        tab.push(r);
    }
    let mut basis: Vec<usize> = (k..k + m).collect();

    let mut obj = vec![rat(0); width];
    for r in &tab {
        for j in 0..k {
            obj[j] -= &r[j];
        }
        obj[rhs] -= &r[rhs];
    }

    while let Some(enter) = (0..k + m).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, r) in tab.iter().enumerate() {
            if !r[enter].is_positive() {
                continue;
            }
            let ratio = &r[rhs] / &r[enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so an entering column always
        // has a positive entry.
        let (row, _) = leave?;
        pivot(&mut tab, &mut obj, row, enter);
        basis[row] = enter;
    }

    if !obj[rhs].is_zero() {
        return None;
    }
    let mut x = vec![rat(0); k];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < k {
            x[bv] = tab[i][rhs].clone();
        }
    }
    Some(x)
}

fn pivot(tab: &mut [QVector], obj: &mut QVector, row: usize, col: usize) {
    let inv = tab[row][col].recip();
    for v in tab[row].iter_mut() {
        *v *= &inv;
    }
    let pivot_row = tab[row].clone();
    for (i, r) in tab.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let f = r[col].clone();
        for (v, p) in r.iter_mut().zip(&pivot_row) {
            *v -= &f * p;
        }
    }
    if !obj[col].is_zero() {
        let f = obj[col].clone();
        for (v, p) in obj.iter_mut().zip(&pivot_row) {
            *v -= &f * p;
        }
    }
}

/// Weights `a >= 0`, `sum a = 1` with `sum a_j points[j] = x`, if any.
pub fn convex_combination(points: &[QVector], x: &[Rational]) -> Option<QVector> {
    let n = x.len();
    let mut rows: Vec<QVector> = (0..n)
        .map(|c| points.iter().map(|p| p[c].clone()).collect())
        .collect();
    rows.push(vec![rat(1); points.len()]);
    let mut b: QVector = x.to_vec();
    b.push(rat(1));
    nonnegative_solution(&rows, &b)
}
