//! Ehrhart polynomials and quasi-polynomials from exact counts.
//!
//! A polynomial is recovered by Lagrange interpolation of `ℓ_P` at
//! `t = 0..=d` and then checked against fresh counts beyond the nodes. The
//! same machinery, run per residue class, gives the constituents of the
//! quasi-polynomial of a rational polytope.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial_signed, format_rational, rat, Rational};
use crate::lattice::{self, boundary_count, ell};
use crate::polytope::{Polytope, Region};

/// Dense polynomial over `Q`, constant term first, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Rational {
        self.coeff(self.degree())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, t: i64) -> Rational {
        self.eval(&rat(t))
    }

    /// Coefficients as `"p/q"` strings, constant term first.
    pub fn to_strings(&self) -> Vec<String> {
        if self.coeffs.is_empty() {
            return vec!["0".to_string()];
        }
        self.coeffs.iter().map(format_rational).collect()
    }

    /// The unique polynomial of degree `< nodes.len()` through `nodes`.
    ///
    /// Abscissae must be distinct.
    pub fn interpolate(nodes: &[(Rational, Rational)]) -> Self {
        let mut acc = vec![Rational::zero(); nodes.len()];
        for (i, (xi, yi)) in nodes.iter().enumerate() {
            // basis = prod_{j != i} (t - x_j) / (x_i - x_j)
            let mut basis = vec![Rational::one()];
            let mut denom = Rational::one();
            for (j, (xj, _)) in nodes.iter().enumerate() {
                if i == j {
                    continue;
                }
                let mut next = vec![Rational::zero(); basis.len() + 1];
                for (k, b) in basis.iter().enumerate() {
                    next[k + 1] += b;
                    next[k] -= b * xj;
                }
                basis = next;
                denom *= xi - xj;
            }
            let factor = yi / denom;
            for (k, b) in basis.iter().enumerate() {
                acc[k] += b * &factor;
            }
        }
        Self::new(acc)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let shown = format_rational(&mag);
            match i {
                0 => f.write_str(&shown)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{shown}")?;
                        f.write_str("*")?;
                    }
                    f.write_str("t")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// `p(t) = constituents[t mod period](t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPolynomial {
    pub period: u64,
    pub constituents: Vec<Polynomial>,
    /// Smallest divisor `m` of `period` with `p_j = p_{j mod m}` for all `j`.
    pub minimal_period: u64,
}

impl QuasiPolynomial {
    pub fn constituent(&self, t: i64) -> &Polynomial {
        &self.constituents[t.rem_euclid(self.period as i64) as usize]
    }

    pub fn eval(&self, t: i64) -> Rational {
        self.constituent(t).eval_int(t)
    }

    pub fn degree(&self) -> usize {
        self.constituents
            .iter()
            .map(Polynomial::degree)
            .max()
            .unwrap_or(0)
    }
}

/// Numerator `h*_0 + h*_1 z + … + h*_d z^d` of `Σ_{t>=0} L(t) z^t = h*(z)/(1-z)^{d+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HStarNumerator {
    pub coeffs: Vec<BigInt>,
}

impl HStarNumerator {
    pub fn sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

fn counted(p: &Polytope, t: i64) -> Result<Rational> {
    Ok(rat(ell(p, t)?))
}

fn check_holdout(poly: &Polynomial, p: &Polytope, t: i64) -> Result<()> {
    let predicted = poly.eval_int(t);
    let actual = counted(p, t)?;
    if predicted != actual {
        return Err(Error::HoldoutMismatch {
            t,
            predicted: format_rational(&predicted),
            counted: format_rational(&actual),
        });
    }
    Ok(())
}

fn require_integral(p: &Polytope) -> Result<()> {
    if p.is_integral() {
        Ok(())
    } else {
        Err(Error::NotIntegral(p.denominator().to_string()))
    }
}

/// Ehrhart polynomial of an integral polytope.
///
/// Interpolates at `t = 0..=d`, then re-counts at `t = d+1..=2d+2`; any
/// disagreement is an error, never a silently wrong polynomial.
pub fn ehrhart_polynomial(p: &Polytope) -> Result<Polynomial> {
    require_integral(p)?;
    let d = p.dim() as i64;
    let nodes = (0..=d)
        .map(|t| Ok((rat(t), counted(p, t)?)))
        .collect::<Result<Vec<_>>>()?;
    let poly = Polynomial::interpolate(&nodes);
    for t in d + 1..=2 * d + 2 {
        check_holdout(&poly, p, t)?;
    }
    if poly.is_zero() || poly.degree() != p.dim() {
        return Err(Error::DegreeMismatch {
            expected: p.dim(),
            found: poly.degree(),
        });
    }
    Ok(poly)
}

/// Whether `Σ_{k=0}^{d+1} (-1)^{d+1-k} C(d+1,k) f(t+k) = 0` for every
/// window of `f` (indexed from zero).
pub fn recurrence_check(f: &[BigInt], d: usize) -> Result<bool> {
    if f.len() < d + 2 {
        return Err(Error::InsufficientData {
            needed: d + 2,
            got: f.len(),
        });
    }
    let weights: Vec<BigInt> = (0..=d + 1)
        .map(|k| {
            let w = binomial_signed(d as u64 + 1, k as i64);
            if (d + 1 - k).is_multiple_of(2) {
                w
            } else {
                -w
            }
        })
        .collect();
    Ok(f.windows(d + 2).all(|win| {
        win.iter()
            .zip(&weights)
            .map(|(v, w)| v * w)
            .sum::<BigInt>()
            .is_zero()
    }))
}

/// `ℓ_P(t)` for `t` in `lo..=hi`, as a sequence for [`recurrence_check`].
pub fn signed_sequence(p: &Polytope, lo: i64, hi: i64) -> Result<Vec<BigInt>> {
    (lo..=hi).map(|t| Ok(BigInt::from(ell(p, t)?))).collect()
}

/// `h*_k = Σ_{j=0}^{k} (-1)^j C(d+1, j) L(k-j)` for `k = 0..=d`, with
/// `d = deg L`.
pub fn hstar_numerator(l: &Polynomial) -> Result<HStarNumerator> {
    let d = l.degree();
    let term = |k: usize| -> Rational {
        (0..=k)
            .map(|j| {
                let w = Rational::from_integer(binomial_signed(d as u64 + 1, j as i64));
                let v = l.eval_int((k - j) as i64) * w;
                if j % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum()
    };
    let mut coeffs = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let c = term(k);
        if !c.is_integer() {
            return Err(Error::NonIntegralCoefficient {
                index: k,
                value: format_rational(&c),
            });
        }
        coeffs.push(c.to_integer());
    }
    // the z^{d+1} coefficient is the (d+1)-st difference, zero for deg <= d
    let overflow = term(d + 1);
    if !overflow.is_zero() {
        return Err(Error::DegreeMismatch {
            expected: d,
            found: d + 1,
        });
    }
    Ok(HStarNumerator { coeffs })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReciprocityRow {
    pub t: i64,
    /// `L(-t)`, or the matching quasi-polynomial constituent value.
    pub value_at_minus_t: Rational,
    /// `#(tP° ∩ Z^n)` by enumeration.
    pub interior: u64,
    pub matches: bool,
}

fn reciprocity_rows(
    p: &Polytope,
    t_max: i64,
    at_minus: impl Fn(i64) -> Rational,
) -> Result<Vec<ReciprocityRow>> {
    (1..=t_max)
        .map(|t| {
            let v = at_minus(t);
            let signed = if p.dim().is_multiple_of(2) {
                v.clone()
            } else {
                -v.clone()
            };
            let interior = lattice::count(p, t, Region::RelativeInterior)?;
            Ok(ReciprocityRow {
                t,
                value_at_minus_t: v,
                interior,
                matches: signed == rat(interior as i64),
            })
        })
        .collect()
}

/// `(-1)^d L_P(-t)` against enumerated interior counts for `1 <= t <= t_max`.
pub fn reciprocity_check(p: &Polytope, t_max: i64) -> Result<Vec<ReciprocityRow>> {
    let l = ehrhart_polynomial(p)?;
    reciprocity_rows(p, t_max, |t| l.eval_int(-t))
}

/// Reciprocity for a rational polytope through its quasi-polynomial.
pub fn quasi_reciprocity_check(
    p: &Polytope,
    q: &QuasiPolynomial,
    t_max: i64,
) -> Result<Vec<ReciprocityRow>> {
    reciprocity_rows(p, t_max, |t| q.eval(-t))
}

/// Ehrhart quasi-polynomial with period equal to the denominator.
///
/// Constituent `p_j` interpolates counts at `t = j, j+s, …, j+ds` (the value
/// `ℓ(0) = 1` only enters residue 0) and is validated at `t = j+(d+1)s`.
pub fn quasi_polynomial(p: &Polytope) -> Result<QuasiPolynomial> {
    let s = p
        .denominator()
        .to_u64()
        .filter(|&s| s <= i64::MAX as u64)
        .ok_or(Error::EnumerationOverflow)?;
    let d = p.dim() as i64;
    let si = s as i64;
    let mut constituents = Vec::with_capacity(s as usize);
    for j in 0..si {
        let nodes = (0..=d)
            .map(|k| {
                let t = j + k * si;
                Ok((rat(t), counted(p, t)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let poly = Polynomial::interpolate(&nodes);
        check_holdout(&poly, p, j + (d + 1) * si)?;
        constituents.push(poly);
    }
    let minimal_period = (1..=s)
        .filter(|m| s % m == 0)
        .find(|&m| (0..s).all(|j| constituents[j as usize] == constituents[(j % m) as usize]))
        .unwrap_or(s);
    let q = QuasiPolynomial {
        period: s,
        constituents,
        minimal_period,
    };
    if let Some(bad) = quasi_reciprocity_check(p, &q, d + 1)?
        .iter()
        .find(|r| !r.matches)
    {
        return Err(Error::IdentityViolated(format!(
            "quasi-polynomial reciprocity at t = {}: value {}, interior count {}",
            bad.t,
            format_rational(&bad.value_at_minus_t),
            bad.interior
        )));
    }
    Ok(q)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PickReport {
    pub area: Rational,
    pub boundary: u64,
    pub interior: u64,
    /// `A = I + B/2 - 1`.
    pub pick_holds: bool,
    /// `L_P(t) = A t^2 + (B/2) t + 1` coefficientwise.
    pub polynomial_matches: bool,
}

/// Twice the signed shoelace area of a polygon in boundary order.
fn shoelace2(p: &Polytope, cycle: &[usize]) -> Rational {
    let v = p.vertices();
    (0..cycle.len())
        .map(|i| {
            let a = &v[cycle[i]];
            let b = &v[cycle[(i + 1) % cycle.len()]];
            &a[0] * &b[1] - &b[0] * &a[1]
        })
        .sum()
}

/// Area of a 2-dimensional polygon in the plane.
pub fn polygon_area(p: &Polytope) -> Result<Rational> {
    if p.dim() != 2 || p.ambient_dim() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            dim: p.dim(),
            ambient: p.ambient_dim(),
        });
    }
    let cycle = p.polygon_cycle().expect("dimension checked");
    Ok(shoelace2(p, &cycle).abs() / rat(2))
}

pub fn pick_report(p: &Polytope) -> Result<PickReport> {
    let area = polygon_area(p)?;
    require_integral(p)?;
    let boundary = boundary_count(p, 1)?;
    let interior = lattice::count(p, 1, Region::RelativeInterior)?;
    let b = rat(boundary as i64);
    let pick_holds = area == rat(interior as i64) + &b / rat(2) - rat(1);
    let l = ehrhart_polynomial(p)?;
    let polynomial_matches = l == Polynomial::new(vec![rat(1), b / rat(2), area.clone()]);
    Ok(PickReport {
        area,
        boundary,
        interior,
        pick_holds,
        polynomial_matches,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientReport {
    /// Leading coefficient `c_d`.
    pub relative_volume: Rational,
    /// `c_{d-1}` (zero for a point).
    pub half_surface: Rational,
    pub constant: Rational,
    /// `#(∂P ∩ Z^n)` by enumeration; equals `L(1) - (-1)^d L(-1)`.
    pub boundary_points: u64,
}

/// Reads off `c_d`, `c_{d-1}` and `c_0`, insisting on `c_0 = 1` and on
/// `#(∂P ∩ Z^n) = L(1) - (-1)^d L(-1)`.
pub fn coefficient_report(p: &Polytope) -> Result<CoefficientReport> {
    let l = ehrhart_polynomial(p)?;
    let d = p.dim();
    let constant = l.coeff(0);
    if !constant.is_one() {
        return Err(Error::IdentityViolated(format!(
            "constant coefficient is {}, expected 1",
            format_rational(&constant)
        )));
    }
    let boundary_points = boundary_count(p, 1)?;
    let at_minus_one = l.eval_int(-1);
    let predicted = l.eval_int(1)
        - if d.is_multiple_of(2) {
            at_minus_one
        } else {
            -at_minus_one
        };
    if predicted != rat(boundary_points as i64) {
        return Err(Error::IdentityViolated(format!(
            "boundary identity: L(1) - (-1)^d L(-1) = {}, enumerated {}",
            format_rational(&predicted),
            boundary_points
        )));
    }
    Ok(CoefficientReport {
        relative_volume: l.coeff(d),
        half_surface: if d == 0 {
            Rational::zero()
        } else {
            l.coeff(d - 1)
        },
        constant,
        boundary_points,
    })
}
