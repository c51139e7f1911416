//! Solid angles of lattice polygons and the solid-angle enumerator
//! `a_P(t) = Σ_x ω_{tP}(x)`.
//!
//! Points are classified exactly (interior, edge, vertex, outside); only the
//! angle at a vertex is computed in floating point.

use std::f64::consts::TAU;

use num_traits::ToPrimitive;

use crate::ehrhart::polygon_area;
use crate::error::{Error, Result};
use crate::exact::{rat, sub, Rational};
use crate::polytope::{Polytope, Region};

/// Tolerance for a single enumerator value against `A t²`.
pub const REPORT_TOLERANCE: f64 = 1e-9;
/// Tolerance for coefficients and extrapolations of the fitted polynomial.
pub const FIT_TOLERANCE: f64 = 1e-6;

fn require_polygon(p: &Polytope) -> Result<()> {
    if p.dim() == 2 && p.ambient_dim() == 2 {
        Ok(())
    } else {
        Err(Error::WrongDimension {
            expected: 2,
            dim: p.dim(),
            ambient: p.ambient_dim(),
        })
    }
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Interior angle at vertex `i` divided by `2π`.
fn vertex_fraction(p: &Polytope, i: usize) -> f64 {
    let mut ends = p.facets().iter().filter_map(|f| match f.vertex_ids[..] {
        [a, b] if a == i => Some(b),
        [a, b] if b == i => Some(a),
        _ => None,
    });
    let (a, b) = (
        ends.next().expect("polygon vertex"),
        ends.next().expect("polygon vertex"),
    );
    let x = &p.vertices()[i];
    let u = sub(&p.vertices()[a], x);
    let w = sub(&p.vertices()[b], x);
    let (ux, uy, wx, wy) = (to_f64(&u[0]), to_f64(&u[1]), to_f64(&w[0]), to_f64(&w[1]));
    let angle = (ux * wy - uy * wx).abs().atan2(ux * wx + uy * wy);
    angle / TAU
}

/// `ω_P(x)`: the fraction of a small disc around `x` lying in `P`.
pub fn solid_angle(p: &Polytope, x: &[Rational]) -> Result<f64> {
    require_polygon(p)?;
    if !p.contains(x, Region::Closed)? {
        return Ok(0.0);
    }
    Ok(match p.tight_facets(x).len() {
        0 => 1.0,
        1 => 0.5,
        _ => {
            let i = p
                .vertices()
                .iter()
                .position(|v| v[..] == x[..])
                .expect("a point on two edges of a polygon is a vertex");
            vertex_fraction(p, i)
        }
    })
}

/// Interior angles (radians) of a polygon, in vertex order.
pub fn interior_angles(p: &Polytope) -> Result<Vec<f64>> {
    require_polygon(p)?;
    Ok((0..p.vertices().len())
        .map(|i| vertex_fraction(p, i) * TAU)
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolidAngleReport {
    pub t: i64,
    pub weighted_sum: f64,
    /// `A t²` with the exact area converted at the end.
    pub expected: f64,
    pub abs_error: f64,
}

impl SolidAngleReport {
    pub fn within(&self, tol: f64) -> bool {
        self.abs_error < tol
    }
}

/// Sum of `ω_Q` over the lattice points of the bounding box of `Q`, in
/// row-major order so the floating-point result is reproducible.
fn weighted_sum(q: &Polytope) -> Result<f64> {
    let b = q.integer_bounds()?;
    let mut total = 0.0;
    for x in b[0].0..=b[0].1 {
        for y in b[1].0..=b[1].1 {
            let pt = [rat(x as i64), rat(y as i64)];
            total += solid_angle(q, &pt)?;
        }
    }
    Ok(total)
}

/// `a_P(t)` extended to all integers: `a_P(0) = 0` and, in the plane,
/// `a_P(-t) = Σ_x ω_{t(-P)}(x)`.
pub fn solid_angle_enumerator(p: &Polytope, t: i64) -> Result<f64> {
    require_polygon(p)?;
    match t {
        0 => Ok(0.0),
        t if t > 0 => weighted_sum(&p.dilate(t)?),
        t => weighted_sum(&p.negated()?.dilate(-t)?),
    }
}

pub fn solid_angle_sum(p: &Polytope, t: i64) -> Result<SolidAngleReport> {
    let area = polygon_area(p)?;
    let weighted_sum = solid_angle_enumerator(p, t)?;
    let expected = to_f64(&(area * rat(t) * rat(t)));
    Ok(SolidAngleReport {
        t,
        weighted_sum,
        expected,
        abs_error: (weighted_sum - expected).abs(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParityReport {
    /// Quadratic through `a_P(1), a_P(2), a_P(3)`, constant term first.
    pub fit: [f64; 3],
    /// Largest `|fit(t) - a_P(t)|` over `1 <= |t| <= t_max`.
    pub max_extrapolation_error: f64,
    pub holds: bool,
}

impl ParityReport {
    pub fn eval(&self, t: f64) -> f64 {
        self.fit[0] + t * (self.fit[1] + t * self.fit[2])
    }
}

/// Fits a quadratic to `a_P(1..=3)` and checks that it is even and that it
/// reproduces `a_P(±t)` for `1 <= t <= t_max`.
///
/// The fitted constant term is reported but not required to vanish.
pub fn solid_angle_parity_check(p: &Polytope, t_max: i64) -> Result<ParityReport> {
    let a: Vec<f64> = (1..=3)
        .map(|t| solid_angle_enumerator(p, t))
        .collect::<Result<_>>()?;
    // Newton form through t = 1, 2, 3
    let d1 = a[1] - a[0];
    let d2 = (a[2] - a[1]) - d1;
    let c2 = d2 / 2.0;
    let c1 = d1 - 3.0 * c2;
    let c0 = a[0] - c1 - c2;
    let mut report = ParityReport {
        fit: [c0, c1, c2],
        max_extrapolation_error: 0.0,
        holds: false,
    };
    for t in (1..=t_max).flat_map(|t| [t, -t]) {
        let err = (report.eval(t as f64) - solid_angle_enumerator(p, t)?).abs();
        report.max_extrapolation_error = report.max_extrapolation_error.max(err);
    }
    report.holds = c1.abs() < FIT_TOLERANCE && report.max_extrapolation_error < FIT_TOLERANCE;
    Ok(report)
}
