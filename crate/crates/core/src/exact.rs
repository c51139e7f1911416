//! Exact rational scalars, vectors and matrices.
//!
//! Everything outside [`crate::solid_angle`] is computed over `Q` with
//! arbitrary-precision integers. Elimination picks the first nonzero pivot in
//! column order; over an exact field no magnitude heuristics are needed.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// A point or direction in `Q^n`.
pub type QVector = Vec<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(coords: &[i64]) -> QVector {
    coords.iter().map(|&c| rat(c)).collect()
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(token: &str) -> Result<Rational> {
    let bad = || Error::MalformedRational(token.to_string());
    let s = token.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Serializes as `"p/q"`, or `"p"` when `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Rational], b: &[Rational]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> QVector {
    a.iter().map(|x| x * s).collect()
}

pub fn is_integral(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_integer())
}

/// Least common multiple of the denominators of `v` (1 for an empty slice).
pub fn denominator_lcm<'a, I>(values: I) -> BigInt
where
    I: IntoIterator<Item = &'a Rational>,
{
    values
        .into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales `v` to a primitive integer vector: clears denominators, divides by
/// the gcd of the entries. The sign is left unchanged. Zero stays zero.
pub fn primitive_integer(v: &[Rational]) -> QVector {
    let l = denominator_lcm(v);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &g))
        .collect()
}

/// Binomial coefficient `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Signed variant used by the alternating-sum identities.
pub fn binomial_signed(n: u64, k: i64) -> BigInt {
    BigInt::from(binomial(n, k))
}

pub fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128().ok_or(Error::EnumerationOverflow)
}

/// Dense rectangular matrix over `Q`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QMatrix {
    rows: Vec<QVector>,
    cols: usize,
}

impl QMatrix {
    pub fn new(rows: Vec<QVector>, cols: usize) -> Result<Self> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Ok(Self { rows, cols })
    }

    /// Builds a matrix from rows, taking the column count from the first row.
    pub fn from_rows(rows: Vec<QVector>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::new(rows, cols)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| qvec(r)).collect())
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { rat(1) } else { rat(0) })
                    .collect()
            })
            .collect();
        Self { rows, cols: n }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[QVector] {
        &self.rows
    }

    pub fn mul_vec(&self, x: &[Rational]) -> QVector {
        self.rows.iter().map(|r| dot(r, x)).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        QMatrix {
            rows,
            cols: self.rows.len(),
        }
    }

    pub fn rank(&self) -> usize {
        rref(self.rows.clone(), self.cols).pivots.len()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<QVector> {
        let r = rref(self.rows.clone(), self.cols);
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !r.pivots.contains(c)) {
            let mut v = vec![rat(0); self.cols];
            v[free] = rat(1);
            for (row, &p) in r.pivots.iter().enumerate() {
                v[p] = -r.rows[row][free].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Result<Rational> {
        if self.nrows() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: self.nrows(),
            });
        }
        let n = self.cols;
        let mut m = self.rows.clone();
        let mut det = rat(1);
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Ok(rat(0));
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            let pivot = m[col][col].clone();
            det *= &pivot;
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = &m[r][col] / &pivot;
                let (upper, lower) = m.split_at_mut(r);
                for (dst, src) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                    *dst -= &f * src;
                }
            }
        }
        Ok(det)
    }
}

/// Result of [`solve_linear`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolution {
    /// One exact solution, absent when the system is inconsistent.
    pub solution: Option<QVector>,
    pub rank: usize,
}

/// Solves `A x = b` exactly. Free variables are set to zero.
pub fn solve_linear(a: &QMatrix, b: &[Rational]) -> Result<LinearSolution> {
    if a.nrows() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: b.len(),
        });
    }
    let n = a.ncols();
    let augmented: Vec<QVector> = a
        .rows()
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    // Pivot only on coefficient columns; the last column is the right-hand side.
    let r = rref_limited(augmented, n + 1, n);
    let rank = r.pivots.len();
    let inconsistent = r.rows[rank..].iter().any(|row| !row[n].is_zero());
    if inconsistent {
        return Ok(LinearSolution {
            solution: None,
            rank,
        });
    }
    let mut x = vec![rat(0); n];
    for (row, &p) in r.pivots.iter().enumerate() {
        x[p] = r.rows[row][n].clone();
    }
    Ok(LinearSolution {
        solution: Some(x),
        rank,
    })
}

pub(crate) struct Rref {
    pub rows: Vec<QVector>,
    pub pivots: Vec<usize>,
}

pub(crate) fn rref(rows: Vec<QVector>, cols: usize) -> Rref {
    rref_limited(rows, cols, cols)
}

/// Reduced row echelon form, pivoting only within the first `pivot_cols` columns.
fn rref_limited(mut rows: Vec<QVector>, cols: usize, pivot_cols: usize) -> Rref {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..pivot_cols {
        if next == rows.len() {
            break;
        }
        let Some(p) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(p, next);
        let inv = rows[next][col].recip();
        for v in rows[next].iter_mut().take(cols) {
            *v *= &inv;
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row).take(cols) {
                *v -= &f * p;
            }
        }
        pivots.push(col);
        next += 1;
    }
    Rref { rows, pivots }
}

/// Rank of the affine span of `points` (0 for a single point).
pub fn affine_rank(points: &[QVector]) -> usize {
    match points.split_first() {
        None => 0,
        Some((first, rest)) => {
            let n = first.len();
            let diffs: Vec<QVector> = rest.iter().map(|p| sub(p, first)).collect();
            rref(diffs, n).pivots.len()
        }
    }
}

pub fn floor_i128(x: &Rational) -> Result<i128> {
    to_i128(&x.floor().to_integer())
}

pub fn ceil_i128(x: &Rational) -> Result<i128> {
    to_i128(&x.ceil().to_integer())
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_system() {
        let a = QMatrix::identity(2);
        let s = solve_linear(&a, &[frac(1, 2), rat(3)]).unwrap();
        assert_eq!(s.rank, 2);
        assert_eq!(s.solution, Some(vec![frac(1, 2), rat(3)]));
    }

    #[test]
    fn dependent_rows_inconsistent() {
        let a = QMatrix::from_i64(&[&[1, 1], &[2, 2]]).unwrap();
        let s = solve_linear(&a, &[rat(1), rat(3)]).unwrap();
        assert_eq!(s.rank, 1);
        assert_eq!(s.solution, None);
    }

    #[test]
    fn overdetermined_consistent() {
        let a = QMatrix::from_i64(&[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let b = [frac(1, 3), frac(2, 3), rat(1)];
        let s = solve_linear(&a, &b).unwrap();
        assert_eq!(s.rank, 2);
        let x = s.solution.unwrap();
        assert_eq!(x, vec![frac(1, 3), frac(2, 3)]);
        assert_eq!(a.mul_vec(&x), b.to_vec());
    }

    #[test]
    fn mismatched_rhs() {
        let a = QMatrix::identity(2);
        assert!(matches!(
            solve_linear(&a, &[rat(1)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn ragged_matrix_rejected() {
        assert!(QMatrix::from_rows(vec![qvec(&[1, 2]), qvec(&[1])]).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(5, 7), BigUint::zero());
        assert_eq!(binomial(5, -1), BigUint::zero());
        let s: BigUint = (0..=6).map(|k| binomial(k, 2)).sum();
        assert_eq!(s, BigUint::from(35u32));
        assert_eq!(s, binomial(7, 3));
        // beyond 64 bits
        assert_eq!(
            binomial(100, 50).to_string(),
            "100891344545564193334812497256"
        );
    }

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational("2/4").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("-3").unwrap(), rat(-3));
        assert_eq!(parse_rational(" 7/-2 ").unwrap(), frac(-7, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/2/3").is_err());
        assert_eq!(format_rational(&frac(-13, 6)), "-13/6");
        assert_eq!(format_rational(&rat(4)), "4");
    }

    #[test]
    fn determinant_and_nullspace() {
        let m = QMatrix::from_i64(&[&[2, 1], &[1, 3]]).unwrap();
        assert_eq!(m.determinant().unwrap(), rat(5));
        let m = QMatrix::from_i64(&[&[1, 1, 0]]).unwrap();
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![frac(1, 2), frac(-3, 4), rat(0)];
        assert_eq!(primitive_integer(&v), qvec(&[2, -3, 0]));
    }

    // Rank as the size of the largest nonzero minor, by brute force.
    fn minor_rank(rows: &[Vec<i64>]) -> usize {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        for k in (1..=m.min(n)).rev() {
            for rs in subsets(m, k) {
                for cs in subsets(n, k) {
                    let sub: Vec<QVector> = rs
                        .iter()
                        .map(|&r| cs.iter().map(|&c| rat(rows[r][c])).collect())
                        .collect();
                    if !QMatrix::from_rows(sub)
                        .unwrap()
                        .determinant()
                        .unwrap()
                        .is_zero()
                    {
                        return k;
                    }
                }
            }
        }
        0
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect()
    }

    proptest! {
        #[test]
        fn hockey_stick(t in 0u64..=30, i in 0u64..=30) {
            prop_assume!(i <= t);
            let lhs: BigUint = (0..=t).map(|k| binomial(k, i as i64)).sum();
            prop_assert_eq!(lhs, binomial(t + 1, i as i64 + 1));
        }

        #[test]
        fn rank_matches_minor_oracle(
            rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 4), 1..=4)
        ) {
            let m = QMatrix::from_rows(rows.iter().map(|r| qvec(r)).collect()).unwrap();
            prop_assert_eq!(m.rank(), minor_rank(&rows));
        }

        #[test]
        fn solutions_resubstitute(
            rows in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 3), 1..=4),
            x in proptest::collection::vec(-5i64..=5, 3),
            den in 1i64..=5,
        ) {
            let a = QMatrix::from_rows(rows.iter().map(|r| qvec(r)).collect()).unwrap();
            let truth: QVector = x.iter().map(|&v| frac(v, den)).collect();
            let b = a.mul_vec(&truth);
            let s = solve_linear(&a, &b).unwrap();
            let sol = s.solution.expect("consistent by construction");
            prop_assert_eq!(a.mul_vec(&sol), b);
            for v in &sol {
                prop_assert!(v.denom() > &BigInt::zero());
                prop_assert!(v.numer().gcd(v.denom()).is_one());
            }
        }
    }
}
