//! Lattice points in dilates.
//!
//! Three independent counting paths:
//!
//! * bounding box: scan the integer box of `tP` and test the facet
//!   inequalities (after solving the affine hull equations for pivot
//!   coordinates, so a segment in `Z^3` costs a 1-D scan);
//! * simplex barycentric: for a simplex, recover barycentric coordinates of
//!   each candidate by an integer adjugate and test their signs;
//! * triangulation: sum relative-interior counts of the faces of a
//!   triangulation, each counted barycentrically.
//!
//! Constraints are scaled to integers once per `(P, t)` and the scan itself
//! runs in `i128`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::{self, rat, rref, to_i128, QMatrix, QVector, Rational};
use crate::polytope::{Hyperplane, Polytope, Region};
use crate::triangulation::Triangulation;

pub type LatticePoint = Vec<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountMethod {
    BoundingBox,
    SimplexBarycentric,
    TriangulationIe,
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountMethod::BoundingBox => "bounding_box",
            CountMethod::SimplexBarycentric => "simplex_barycentric",
            CountMethod::TriangulationIe => "triangulation_ie",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub t: i64,
    pub closed: u64,
    pub interior: u64,
    pub boundary: u64,
    pub method: CountMethod,
}

/// Integer form of `a·x <= b` (or `<`, or `=`).
#[derive(Debug, Clone)]
struct IntRow {
    coeffs: Vec<i128>,
    rhs: i128,
}

fn int_row(h: &Hyperplane, t: i64) -> Result<IntRow> {
    let rhs = &h.offset * rat(t);
    let l = exact::denominator_lcm(h.normal.iter().chain(std::iter::once(&rhs)));
    let coeffs = h
        .normal
        .iter()
        .map(|a| to_i128(&(a * Rational::from_integer(l.clone())).to_integer()))
        .collect::<Result<Vec<_>>>()?;
    let rhs = to_i128(&(rhs * Rational::from_integer(l)).to_integer())?;
    Ok(IntRow { coeffs, rhs })
}

/// A pivot coordinate expressed through the free ones:
/// `scale * x[pivot] = rhs - sum coeffs[k] * x[free[k]]`.
#[derive(Debug, Clone)]
struct PivotRow {
    pivot: usize,
    scale: i128,
    rhs: i128,
    coeffs: Vec<i128>,
}

/// Enumerates lattice points of `tP` (or its relative interior).
struct BoxScan {
    n: usize,
    bounds: Vec<(i128, i128)>,
    free: Vec<usize>,
    pivots: Vec<PivotRow>,
    inequalities: Vec<IntRow>,
    strict: bool,
}

impl BoxScan {
    fn new(p: &Polytope, t: i64, region: Region) -> Result<Self> {
        if t <= 0 {
            return Err(Error::NonPositiveDilation(t));
        }
        let n = p.ambient_dim();
        let bounds = p.dilate(t)?.integer_bounds()?;

        let inequalities = p
            .facets()
            .iter()
            .map(|f| int_row(&f.inequality, t))
            .collect::<Result<Vec<_>>>()?;

        // Solve the hull equations for pivot coordinates.
        let eq_rows: Vec<QVector> = p
            .equations()
            .iter()
            .map(|e| {
                let mut row = e.normal.clone();
                row.push(&e.offset * rat(t));
                row
            })
            .collect();
        let r = rref(eq_rows, n + 1);
        let free: Vec<usize> = (0..n).filter(|c| !r.pivots.contains(c)).collect();
        let mut pivots = Vec::new();
        for (row, &pc) in r.rows.iter().zip(&r.pivots) {
            let l = exact::denominator_lcm(row.iter());
            let li = Rational::from_integer(l.clone());
            let scaled = |x: &Rational| to_i128(&(x * &li).to_integer());
            pivots.push(PivotRow {
                pivot: pc,
                scale: to_i128(&l)?,
                rhs: scaled(&row[n])?,
                coeffs: free
                    .iter()
                    .map(|&f| scaled(&row[f]))
                    .collect::<Result<_>>()?,
            });
        }
        Ok(Self {
            n,
            bounds,
            free,
            pivots,
            inequalities,
            strict: region == Region::RelativeInterior,
        })
    }

    fn satisfies(&self, x: &[i128]) -> bool {
        self.inequalities.iter().all(|h| {
            let v: i128 = h.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
            if self.strict {
                v < h.rhs
            } else {
                v <= h.rhs
            }
        })
    }

    /// Completes the pivot coordinates of `x` from its free ones.
    fn complete(&self, x: &mut [i128]) -> bool {
        for p in &self.pivots {
            let mut v = p.rhs;
            for (k, &f) in self.free.iter().enumerate() {
                v -= p.coeffs[k] * x[f];
            }
            if v % p.scale != 0 {
                return false;
            }
            let val = v / p.scale;
            let (lo, hi) = self.bounds[p.pivot];
            if val < lo || val > hi {
                return false;
            }
            x[p.pivot] = val;
        }
        true
    }

    fn visit(&self, mut f: impl FnMut(&[i128])) {
        let mut x = vec![0i128; self.n];
        if self.bounds.iter().any(|(lo, hi)| lo > hi) {
            return;
        }
        for &c in &self.free {
            x[c] = self.bounds[c].0;
        }
        loop {
            if self.complete(&mut x) && self.satisfies(&x) {
                f(&x);
            }
            // odometer over free coordinates
            let mut k = self.free.len();
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                let c = self.free[k];
                if x[c] < self.bounds[c].1 {
                    x[c] += 1;
                    break;
                }
                x[c] = self.bounds[c].0;
            }
        }
    }

    /// Number of points; full-dimensional scans solve the last coordinate as
    /// an interval instead of stepping through it.
    fn count(&self) -> u64 {
        if !self.pivots.is_empty() || self.n == 0 {
            let mut c = 0u64;
            self.visit(|_| c += 1);
            return c;
        }
        if self.bounds.iter().any(|(lo, hi)| lo > hi) {
            return 0;
        }
        let last = self.n - 1;
        let mut x = vec![0i128; self.n];
        for (xc, (lo, _)) in x.iter_mut().zip(&self.bounds).take(last) {
            *xc = *lo;
        }
        let mut total = 0u64;
        loop {
            let (mut lo, mut hi) = self.bounds[last];
            for h in &self.inequalities {
                let partial: i128 = (0..last).map(|c| h.coeffs[c] * x[c]).sum();
                let a = h.coeffs[last];
                let r = h.rhs - partial;
                if a == 0 {
                    if (self.strict && r <= 0) || (!self.strict && r < 0) {
                        hi = lo - 1;
                    }
                } else if a > 0 {
                    let bound = if self.strict {
                        Integer::div_ceil(&r, &a) - 1
                    } else {
                        Integer::div_floor(&r, &a)
                    };
                    hi = hi.min(bound);
                } else {
                    let bound = if self.strict {
                        Integer::div_floor(&r, &a) + 1
                    } else {
                        Integer::div_ceil(&r, &a)
                    };
                    lo = lo.max(bound);
                }
                if lo > hi {
                    break;
                }
            }
            if hi >= lo {
                total += (hi - lo + 1) as u64;
            }
            let mut k = last;
            loop {
                if k == 0 {
                    return total;
                }
                k -= 1;
                if x[k] < self.bounds[k].1 {
                    x[k] += 1;
                    break;
                }
                x[k] = self.bounds[k].0;
            }
        }
    }
}

fn to_point(x: &[i128]) -> LatticePoint {
    x.iter().map(|&v| v as i64).collect()
}

/// `#(tP ∩ Z^n)` or `#(tP° ∩ Z^n)` by bounding-box enumeration, `t >= 1`.
pub fn count(p: &Polytope, t: i64, region: Region) -> Result<u64> {
    Ok(BoxScan::new(p, t, region)?.count())
}

/// The lattice points themselves, in lexicographic order of the free
/// coordinates.
pub fn lattice_points(p: &Polytope, t: i64, region: Region) -> Result<Vec<LatticePoint>> {
    let scan = BoxScan::new(p, t, region)?;
    let mut out = Vec::new();
    scan.visit(|x| out.push(to_point(x)));
    Ok(out)
}

/// Barycentric membership for a simplex, in integer arithmetic.
///
/// With `w_i = D v_i` (`D` the denominator), `x ∈ tS` iff `D x = Σ a_i w_i`
/// with `a_i >= 0` and `Σ a_i = t`. Coordinates are recovered from a
/// `d × d` invertible block of the edge matrix via its adjugate.
struct BarycentricScan {
    n: usize,
    d: usize,
    denom: i128,
    det: i128,
    /// Selected coordinates forming the invertible block.
    chosen: Vec<usize>,
    /// `det · E_R^{-1}`, integer.
    adj: Vec<Vec<i128>>,
    w: Vec<Vec<i128>>,
}

impl BarycentricScan {
    fn new(s: &Polytope) -> Result<Self> {
        if !s.is_simplex() {
            return Err(Error::NotASimplex {
                vertices: s.vertices().len(),
                dim: s.dim(),
            });
        }
        let n = s.ambient_dim();
        let d = s.dim();
        let denom_big = s.denominator().clone();
        let dr = Rational::from_integer(denom_big.clone());
        let w: Vec<Vec<i128>> = s
            .vertices()
            .iter()
            .map(|v| v.iter().map(|c| to_i128(&(c * &dr).to_integer())).collect())
            .collect::<Result<_>>()?;
        let edges: Vec<QVector> = (1..=d)
            .map(|i| (0..n).map(|c| rat((w[i][c] - w[0][c]) as i64)).collect())
            .collect();
        // pivot columns of E^T are rows of E with an invertible block
        let chosen = rref(edges.clone(), n).pivots;
        let block: Vec<QVector> = chosen
            .iter()
            .map(|&c| edges.iter().map(|e| e[c].clone()).collect())
            .collect();
        let block = QMatrix::new(block, d)?;
        let det_q = block.determinant()?;
        let det = to_i128(&det_q.to_integer())?;
        let inv: Vec<QVector> = (0..d)
            .map(|j| {
                let mut e = vec![rat(0); d];
                e[j] = rat(1);
                exact::solve_linear(&block, &e).map(|s| s.solution.expect("invertible block"))
            })
            .collect::<Result<_>>()?;
        // inv[j] is column j of the inverse
        let adj = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| to_i128(&(&inv[j][i] * &det_q).to_integer()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            n,
            d,
            denom: to_i128(&denom_big)?,
            det,
            chosen,
            adj,
            w,
        })
    }

    /// `det · (a_0, …, a_d)` for the candidate whose chosen coordinates are
    /// `xr`, plus the reconstructed full point when it is a lattice point.
    fn coordinates(&self, t: i64, xr: &[i128]) -> Option<(Vec<i128>, Vec<i128>)> {
        let t = t as i128;
        let rel: Vec<i128> = self
            .chosen
            .iter()
            .zip(xr)
            .map(|(&c, &x)| self.denom * x - t * self.w[0][c])
            .collect();
        let alpha: Vec<i128> = self
            .adj
            .iter()
            .map(|row| row.iter().zip(&rel).map(|(a, b)| a * b).sum())
            .collect();
        let a0 = t * self.det - alpha.iter().sum::<i128>();
        let mut x = vec![0i128; self.n];
        for (c, xc) in x.iter_mut().enumerate() {
            let num: i128 = t * self.w[0][c] * self.det
                + (1..=self.d)
                    .map(|i| alpha[i - 1] * (self.w[i][c] - self.w[0][c]))
                    .sum::<i128>();
            let q = self.denom * self.det;
            if num % q != 0 {
                return None;
            }
            *xc = num / q;
        }
        let mut coords = vec![a0];
        coords.extend(alpha);
        Some((coords, x))
    }

    fn visit(
        &self,
        p: &Polytope,
        t: i64,
        region: Region,
        mut f: impl FnMut(&[i128]),
    ) -> Result<()> {
        let bounds = p.dilate(t)?.integer_bounds()?;
        let ranges: Vec<(i128, i128)> = self.chosen.iter().map(|&c| bounds[c]).collect();
        if ranges.iter().any(|(lo, hi)| lo > hi) {
            return Ok(());
        }
        let sign = self.det.signum();
        let mut xr: Vec<i128> = ranges.iter().map(|r| r.0).collect();
        loop {
            if let Some((coords, x)) = self.coordinates(t, &xr) {
                let ok = coords.iter().all(|&a| match region {
                    Region::Closed => a * sign >= 0,
                    Region::RelativeInterior => a * sign > 0,
                });
                if ok {
                    f(&x);
                }
            }
            let mut k = xr.len();
            loop {
                if k == 0 {
                    return Ok(());
                }
                k -= 1;
                if xr[k] < ranges[k].1 {
                    xr[k] += 1;
                    break;
                }
                xr[k] = ranges[k].0;
            }
        }
    }
}

/// Counts lattice points of `tS` for a simplex `S` through barycentric
/// coordinates, without using its facet description.
pub fn count_barycentric(s: &Polytope, t: i64, region: Region) -> Result<u64> {
    if t <= 0 {
        return Err(Error::NonPositiveDilation(t));
    }
    let scan = BarycentricScan::new(s)?;
    let mut c = 0u64;
    scan.visit(s, t, region, |_| c += 1)?;
    Ok(c)
}

/// Counts through a triangulation: every lattice point of `tP` lies in the
/// relative interior of exactly one face, and the interior of `tP` is the
/// union of the relative interiors of the faces not on `∂P`.
pub fn count_via_triangulation(tri: &Triangulation, t: i64, region: Region) -> Result<u64> {
    let mut total = 0;
    for face in tri.faces() {
        if region == Region::RelativeInterior && face.on_boundary {
            continue;
        }
        let fp = tri.face_polytope(&face.simplex)?;
        total += count_barycentric(&fp, t, Region::RelativeInterior)?;
    }
    Ok(total)
}

pub fn count_report(p: &Polytope, t: i64, method: CountMethod) -> Result<CountReport> {
    let (closed, interior) = match method {
        CountMethod::BoundingBox => (
            count(p, t, Region::Closed)?,
            count(p, t, Region::RelativeInterior)?,
        ),
        CountMethod::SimplexBarycentric => (
            count_barycentric(p, t, Region::Closed)?,
            count_barycentric(p, t, Region::RelativeInterior)?,
        ),
        CountMethod::TriangulationIe => {
            let tri = Triangulation::pulling(p)?;
            (
                count_via_triangulation(&tri, t, Region::Closed)?,
                count_via_triangulation(&tri, t, Region::RelativeInterior)?,
            )
        }
    };
    Ok(CountReport {
        t,
        closed,
        interior,
        boundary: closed - interior,
        method,
    })
}

/// The signed counting function: `#(tP ∩ Z^n)` for `t > 0`, `1` at zero,
/// `(-1)^dim #(tP° ∩ Z^n)` for `t < 0`.
///
/// Negative dilates are never built; `#(tP° ∩ Z^n) = #(|t|P° ∩ Z^n)` by the
/// central symmetry of `Z^n`.
pub fn ell(p: &Polytope, t: i64) -> Result<i64> {
    Ok(match t {
        0 => 1,
        t if t > 0 => count(p, t, Region::Closed)? as i64,
        t => {
            let c = count(p, -t, Region::RelativeInterior)? as i64;
            if p.dim().is_multiple_of(2) {
                c
            } else {
                -c
            }
        }
    })
}

/// `#(∂(tP) ∩ Z^n)`.
pub fn boundary_count(p: &Polytope, t: i64) -> Result<u64> {
    Ok(count(p, t, Region::Closed)? - count(p, t, Region::RelativeInterior)?)
}

/// Outcome of checking the simplex covering construction at one `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringReport {
    pub t: i64,
    pub dim: usize,
    /// Lattice points of the big dilate covered by the translated copies.
    pub q_union_count: u64,
    /// The same count predicted by inclusion-exclusion over `ℓ`.
    pub inclusion_exclusion: i64,
    /// Every k-fold intersection holds as many points as the predicted dilate.
    pub intersections_match: bool,
    /// Lattice points of the big dilate missed by the covering.
    pub deficiency_points: Vec<LatticePoint>,
    /// The deficiency equals its independent description.
    pub deficiency_matches: bool,
    pub recurrence_lhs: i64,
    pub recurrence_rhs: i64,
}

impl CoveringReport {
    /// In the open regime the big dilate is `N S°`, which is not the
    /// left-hand side of the recurrence, so the decomposition check is skipped.
    pub fn holds(&self) -> bool {
        let decomposes = self.t < -(self.dim as i64)
            || self.recurrence_lhs
                == self.q_union_count as i64 + self.deficiency_points.len() as i64;
        self.intersections_match
            && self.deficiency_matches
            && self.q_union_count as i64 == self.inclusion_exclusion
            && self.recurrence_lhs == self.recurrence_rhs
            && decomposes
    }
}

fn sign(k: i64) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn binom(n: usize, k: usize) -> i64 {
    exact::binomial(n as u64, k as i64)
        .to_i64()
        .expect("small binomial")
}

/// `Σ_{k=0}^{d} (-1)^{d-k} C(d+1, k) ℓ(t+k)`.
pub fn recurrence_rhs(p: &Polytope, t: i64) -> Result<i64> {
    let d = p.dim();
    let mut acc = 0;
    for k in 0..=d {
        acc += sign((d - k) as i64) * binom(d + 1, k) * ell(p, t + k as i64)?;
    }
    Ok(acc)
}

/// Points of `m·S` (closed or open), with `0·S = {0}` closed and empty open.
fn dilate_points(s: &Polytope, m: i64, region: Region) -> Result<Vec<LatticePoint>> {
    if m == 0 {
        return Ok(match region {
            Region::Closed => vec![vec![0; s.ambient_dim()]],
            Region::RelativeInterior => Vec::new(),
        });
    }
    lattice_points(s, m, region)
}

fn in_translate(dil: &Option<Polytope>, x: &[i64], shift: &[i64], region: Region) -> Result<bool> {
    let y: Vec<i64> = x.iter().zip(shift).map(|(a, b)| a - b).collect();
    match dil {
        None => Ok(region == Region::Closed && y.iter().all(|&c| c == 0)),
        Some(q) => q.contains(&exact::qvec(&y), region),
    }
}

/// Verifies the covering of `(t+d+1)S` by `Q_i = (t+d)S + v_i` for an
/// integral simplex `S`.
///
/// * `t >= 0`: the copies cover every lattice point.
/// * `-d-1 < t < 0`: the uncovered points are exactly `P' \ Q'` with
///   `P' = tS° + Σ v_i` and `Q'_j = (t+1)S° + Σ_{i≠j} v_i`.
/// * `t <= -d-1`: the open version, `N S°` covered by `(N-1)S° + v_j` with
///   `N = -t`, missing only `Σ v_i` when `N = d+1`.
///
/// In every case the `k`-fold intersections are counted pointwise and the
/// recurrence `ℓ(t+d+1) = Σ_{k=0}^{d} (-1)^{d-k} C(d+1,k) ℓ(t+k)` is evaluated.
pub fn verify_covering(s: &Polytope, t: i64) -> Result<CoveringReport> {
    if !s.is_simplex() {
        return Err(Error::NotASimplex {
            vertices: s.vertices().len(),
            dim: s.dim(),
        });
    }
    if !s.is_integral() {
        return Err(Error::NotIntegral(s.denominator().to_string()));
    }
    let d = s.dim() as i64;
    let verts: Vec<LatticePoint> = s
        .vertices()
        .iter()
        .map(|v| {
            v.iter()
                .map(|c| c.to_integer().to_i64().expect("small"))
                .collect()
        })
        .collect();
    let n = s.ambient_dim();
    let vsum: LatticePoint = (0..n).map(|c| verts.iter().map(|v| v[c]).sum()).collect();

    let open = t < -d;
    let (region, big, piece) = if open {
        (Region::RelativeInterior, -t, -t - 1)
    } else {
        (Region::Closed, t + d + 1, t + d)
    };
    let points = dilate_points(s, big, region)?;
    let piece_poly = if piece > 0 {
        Some(s.dilate(piece)?)
    } else {
        None
    };

    let masks: Vec<u32> = points
        .iter()
        .map(|x| {
            let mut m = 0u32;
            for (i, v) in verts.iter().enumerate() {
                if in_translate(&piece_poly, x, v, region)? {
                    m |= 1 << i;
                }
            }
            Ok(m)
        })
        .collect::<Result<_>>()?;

    let q_union_count = masks.iter().filter(|&&m| m != 0).count() as u64;
    let vcount = verts.len();
    let mut intersections_match = true;
    let mut inclusion_exclusion = 0i64;
    for subset in 1u32..(1 << vcount) {
        let k = subset.count_ones() as i64;
        let observed = masks.iter().filter(|&&m| m & subset == subset).count() as i64;
        let m = big - k;
        let expected = if m < 0 {
            0
        } else {
            dilate_points(s, m, region)?.len() as i64
        };
        if observed != expected {
            intersections_match = false;
        }
        inclusion_exclusion += sign(k + 1) * expected;
    }

    let deficiency_points: Vec<LatticePoint> = points
        .iter()
        .zip(&masks)
        .filter(|(_, &m)| m == 0)
        .map(|(x, _)| x.clone())
        .collect();

    let deficiency_matches = if open {
        let expected: Vec<LatticePoint> = if -t == d + 1 {
            vec![vsum.clone()]
        } else {
            vec![]
        };
        deficiency_points == expected
    } else if t >= 0 {
        deficiency_points.is_empty()
    } else {
        // P' \ Q' by direct enumeration of both sides
        let p_prime: BTreeSet<LatticePoint> = dilate_points(s, -t, Region::RelativeInterior)?
            .into_iter()
            .map(|y| vsum.iter().zip(&y).map(|(a, b)| a - b).collect())
            .collect();
        let mut q_prime: BTreeSet<LatticePoint> = BTreeSet::new();
        if t < -1 {
            for v in &verts {
                let base: LatticePoint = vsum.iter().zip(v).map(|(a, b)| a - b).collect();
                for y in dilate_points(s, -(t + 1), Region::RelativeInterior)? {
                    q_prime.insert(base.iter().zip(&y).map(|(a, b)| a - b).collect());
                }
            }
        }
        let expected: BTreeSet<LatticePoint> = p_prime.difference(&q_prime).cloned().collect();
        let found: BTreeSet<LatticePoint> = deficiency_points.iter().cloned().collect();
        expected == found
    };

    let recurrence_lhs = ell(s, t + d + 1)?;
    let recurrence_rhs = recurrence_rhs(s, t)?;
    Ok(CoveringReport {
        t,
        dim: s.dim(),
        q_union_count,
        inclusion_exclusion,
        intersections_match,
        deficiency_points,
        deficiency_matches,
        recurrence_lhs,
        recurrence_rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, qvec};
    use proptest::prelude::*;

    fn pick_triangle() -> Polytope {
        Polytope::from_i64(&[&[0, 0], &[2, 0], &[2, 1]]).unwrap()
    }

    fn reeve(h: i64) -> Polytope {
        Polytope::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, h]]).unwrap()
    }

    fn half_segment() -> Polytope {
        Polytope::new(vec![vec![rat(0)], vec![frac(1, 2)]]).unwrap()
    }

    // Independent oracle: test every point of a generous box with the
    // rational membership routine.
    fn naive(p: &Polytope, t: i64, region: Region) -> u64 {
        let q = p.dilate(t).unwrap();
        let bounds = q.integer_bounds().unwrap();
        let mut c = 0;
        let mut x: Vec<i64> = bounds.iter().map(|b| b.0 as i64 - 1).collect();
        loop {
            if q.contains(&qvec(&x), region).unwrap() {
                c += 1;
            }
            let mut k = x.len();
            loop {
                if k == 0 {
                    return c;
                }
                k -= 1;
                if x[k] < bounds[k].1 as i64 + 1 {
                    x[k] += 1;
                    break;
                }
                x[k] = bounds[k].0 as i64 - 1;
            }
        }
    }

    #[test]
    fn pick_triangle_counts() {
        let p = pick_triangle();
        let closed: Vec<u64> = (1..=3)
            .map(|t| count(&p, t, Region::Closed).unwrap())
            .collect();
        assert_eq!(closed, vec![4, 9, 16]);
        assert_eq!(count(&p, 2, Region::RelativeInterior).unwrap(), 1);
        assert_eq!(
            lattice_points(&p, 2, Region::RelativeInterior).unwrap(),
            vec![vec![3, 1]]
        );
        assert_eq!(boundary_count(&p, 1).unwrap(), 4);
        assert_eq!(boundary_count(&p, 3).unwrap(), 12);
    }

    #[test]
    fn reeve_has_four_points() {
        for h in 1..=13 {
            assert_eq!(count(&reeve(h), 1, Region::Closed).unwrap(), 4);
        }
    }

    #[test]
    fn half_segment_counts() {
        assert_eq!(count(&half_segment(), 3, Region::Closed).unwrap(), 2);
        for t in 1..=9 {
            assert_eq!(
                count(&half_segment(), t, Region::Closed).unwrap(),
                (t / 2 + 1) as u64
            );
        }
    }

    #[test]
    fn ell_signed() {
        let p = pick_triangle();
        assert_eq!(ell(&p, -1).unwrap(), 0);
        assert_eq!(ell(&p, 0).unwrap(), 1);
        assert_eq!(ell(&reeve(5), 0).unwrap(), 1);
        let seg = Polytope::from_i64(&[&[0], &[1]]).unwrap();
        assert_eq!(ell(&seg, -2).unwrap(), -1);
        assert!(matches!(
            count(&p, 0, Region::Closed),
            Err(Error::NonPositiveDilation(0))
        ));
    }

    #[test]
    fn unit_square_boundary() {
        let sq = Polytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert_eq!(boundary_count(&sq, 1).unwrap(), 4);
    }

    #[test]
    fn lower_dimensional_scans() {
        let seg = Polytope::from_i64(&[&[0, 0, 0], &[3, 6, 9]]).unwrap();
        for t in 1..=4 {
            assert_eq!(count(&seg, t, Region::Closed).unwrap(), (3 * t + 1) as u64);
            assert_eq!(
                count(&seg, t, Region::RelativeInterior).unwrap(),
                (3 * t - 1) as u64
            );
        }
        let tri = Polytope::from_i64(&[&[0, 0, 0], &[2, 2, 0], &[0, 2, 2]]).unwrap();
        for t in 1..=3 {
            for r in [Region::Closed, Region::RelativeInterior] {
                assert_eq!(count(&tri, t, r).unwrap(), naive(&tri, t, r));
                assert_eq!(count_barycentric(&tri, t, r).unwrap(), naive(&tri, t, r));
            }
        }
        let pt = Polytope::new(vec![vec![frac(1, 2), rat(1)]]).unwrap();
        assert_eq!(count(&pt, 1, Region::Closed).unwrap(), 0);
        assert_eq!(count(&pt, 2, Region::Closed).unwrap(), 1);
        assert_eq!(count(&pt, 2, Region::RelativeInterior).unwrap(), 1);
    }

    #[test]
    fn barycentric_rejects_non_simplex() {
        let sq = Polytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert!(matches!(
            count_barycentric(&sq, 1, Region::Closed),
            Err(Error::NotASimplex { .. })
        ));
    }

    #[test]
    fn reports_record_method() {
        let p = pick_triangle();
        for m in [
            CountMethod::BoundingBox,
            CountMethod::SimplexBarycentric,
            CountMethod::TriangulationIe,
        ] {
            let r = count_report(&p, 2, m).unwrap();
            assert_eq!((r.closed, r.interior, r.boundary), (9, 1, 8));
            assert_eq!(r.method, m);
        }
        assert_eq!(CountMethod::TriangulationIe.to_string(), "triangulation_ie");
    }

    #[test]
    fn covering_pick_triangle() {
        let p = pick_triangle();
        let r = verify_covering(&p, 0).unwrap();
        assert_eq!((r.recurrence_lhs, r.recurrence_rhs), (16, 16));
        assert_eq!(r.q_union_count, 16);
        assert!(r.deficiency_points.is_empty());
        assert!(r.holds(), "{r:?}");

        let r = verify_covering(&p, -1).unwrap();
        assert_eq!((r.recurrence_lhs, r.recurrence_rhs), (9, 9));
        assert!(r.deficiency_points.is_empty());
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn covering_unit_segment() {
        let seg = Polytope::from_i64(&[&[0], &[1]]).unwrap();
        let r = verify_covering(&seg, 0).unwrap();
        assert_eq!((r.recurrence_lhs, r.recurrence_rhs), (3, 3));
        assert!(r.holds());
    }

    #[test]
    fn covering_all_regimes() {
        let simplices = vec![
            pick_triangle(),
            reeve(2),
            Polytope::from_i64(&[&[0, 0], &[3, 1], &[1, 2]]).unwrap(),
            Polytope::from_i64(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]).unwrap(),
            Polytope::from_i64(&[&[1, 0, 0], &[0, 2, 1], &[3, 1, 1]]).unwrap(),
        ];
        for s in &simplices {
            let d = s.dim() as i64;
            for t in -(d + 3)..=4 {
                let r = verify_covering(s, t).unwrap();
                assert!(r.holds(), "t={t} {r:?}");
                if t >= 0 {
                    assert!(r.deficiency_points.is_empty());
                }
            }
        }
    }

    #[test]
    fn covering_deficiency_nonempty() {
        // a fat triangle has interior points, so the hole at t = -1 is
        // occupied
        let s = Polytope::from_i64(&[&[0, 0], &[3, 0], &[0, 3]]).unwrap();
        let r = verify_covering(&s, -1).unwrap();
        assert_eq!(r.deficiency_points.len(), 1);
        assert!(r.holds());
        let r = verify_covering(&s, -3).unwrap();
        assert_eq!(r.deficiency_points, vec![vec![3, 3]]);
        assert!(r.holds());
    }

    #[test]
    fn covering_rejects_bad_input() {
        let sq = Polytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert!(matches!(
            verify_covering(&sq, 0),
            Err(Error::NotASimplex { .. })
        ));
        assert!(matches!(
            verify_covering(&half_segment(), 0),
            Err(Error::NotIntegral(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn three_paths_agree(
            pts in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 2), 3..=6),
            t in 1i64..=4,
        ) {
            let p = Polytope::new(pts.iter().map(|v| qvec(v)).collect()).unwrap();
            let tri = Triangulation::pulling(&p).unwrap();
            for r in [Region::Closed, Region::RelativeInterior] {
                let bb = count(&p, t, r).unwrap();
                prop_assert_eq!(bb, naive(&p, t, r));
                prop_assert_eq!(bb, count_via_triangulation(&tri, t, r).unwrap());
                if p.is_simplex() {
                    prop_assert_eq!(bb, count_barycentric(&p, t, r).unwrap());
                }
            }
        }

        #[test]
        fn monotone_in_t(
            pts in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 3), 4..=6),
        ) {
            let p = Polytope::new(pts.iter().map(|v| qvec(v)).collect()).unwrap();
            prop_assume!(p.is_full_dimensional());
            for t in 1..4 {
                prop_assert!(count(&p, t, Region::Closed).unwrap() <= count(&p, t + 1, Region::Closed).unwrap());
                prop_assert!(
                    count(&p, t, Region::RelativeInterior).unwrap()
                        <= count(&p, t + 1, Region::RelativeInterior).unwrap()
                );
            }
        }
    }
}
