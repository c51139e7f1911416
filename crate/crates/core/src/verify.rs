//! The full property suite over the built-in corpus.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::corpus::{self, Entry};
use crate::ehrhart::{
    coefficient_report, ehrhart_polynomial, hstar_numerator, pick_report, quasi_polynomial,
    quasi_reciprocity_check, reciprocity_check, recurrence_check, signed_sequence, Polynomial,
};
use crate::error::{Error, Result};
use crate::exact::{frac, rat, Rational};
use crate::lattice::{count, count_barycentric, count_via_triangulation, verify_covering};
use crate::polytope::{Polytope, Region};
use crate::solid_angle::{solid_angle_parity_check, solid_angle_sum, REPORT_TOLERANCE};
use crate::triangulation::{mobius_identity_check, Triangulation};

/// Random polygons appended to the fixed fixtures.
pub const RANDOM_POLYGONS: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::IdentityViolated(msg()))
    }
}

struct Suite {
    outcomes: Vec<CheckOutcome>,
}

impl Suite {
    fn check(&mut self, name: String, f: impl FnOnce() -> Result<()>) {
        let (passed, detail) = match f() {
            Ok(()) => (true, String::new()),
            Err(e) => (false, e.to_string()),
        };
        self.outcomes.push(CheckOutcome {
            name,
            passed,
            detail,
        });
    }
}

fn max_t(p: &Polytope) -> i64 {
    if p.dim() >= 4 {
        4
    } else {
        6
    }
}

fn oracles_agree(p: &Polytope) -> Result<()> {
    let tri = Triangulation::pulling(p)?;
    for t in 1..=max_t(p) {
        for region in [Region::Closed, Region::RelativeInterior] {
            let direct = count(p, t, region)?;
            let via = count_via_triangulation(&tri, t, region)?;
            ensure(direct == via, || {
                format!("t = {t}, {region:?}: box {direct}, triangulation {via}")
            })?;
            if p.is_simplex() {
                let bary = count_barycentric(p, t, region)?;
                ensure(direct == bary, || {
                    format!("t = {t}, {region:?}: box {direct}, barycentric {bary}")
                })?;
            }
        }
    }
    Ok(())
}

fn hstar_properties(l: &Polynomial) -> Result<()> {
    let h = hstar_numerator(l)?;
    let d = l.degree();
    ensure(h.coeffs.len() <= d + 1, || {
        format!("h* has {} entries", h.coeffs.len())
    })?;
    ensure(h.coeffs.first().is_some_and(One::is_one), || {
        "h*_0 != 1".into()
    })?;
    ensure(h.coeffs.iter().all(|c| !c.is_negative()), || {
        format!("negative h*: {:?}", h.coeffs)
    })?;
    let factorial: BigInt = (1..=d as u64).map(BigInt::from).product();
    ensure(
        Rational::from_integer(h.sum()) == Rational::from_integer(factorial) * l.leading(),
        || "sum of h* differs from d! c_d".into(),
    )
}

fn integral_checks(s: &mut Suite, e: &Entry) {
    let p = &e.polytope;
    s.check(format!("recurrence/{}", e.name), || {
        let d = p.dim() as i64;
        let f = signed_sequence(p, -(d + 3), d + 3)?;
        ensure(recurrence_check(&f, p.dim())?, || {
            "signed counts break the recurrence".into()
        })
    });
    s.check(format!("hstar/{}", e.name), || {
        hstar_properties(&ehrhart_polynomial(p)?)
    });
    s.check(format!("reciprocity/{}", e.name), || {
        let rows = reciprocity_check(p, 5)?;
        match rows.iter().find(|r| !r.matches) {
            Some(r) => ensure(false, || format!("t = {}: interior {}", r.t, r.interior)),
            None => Ok(()),
        }
    });
    s.check(format!("coefficients/{}", e.name), || {
        coefficient_report(p).map(drop)
    });
    if p.dim() == 2 && p.ambient_dim() == 2 {
        s.check(format!("pick/{}", e.name), || {
            let r = pick_report(p)?;
            ensure(r.pick_holds && r.polynomial_matches, || format!("{r:?}"))
        });
        s.check(format!("solid-angle/{}", e.name), || {
            for t in 1..=4 {
                let r = solid_angle_sum(p, t)?;
                ensure(r.within(REPORT_TOLERANCE), || format!("{r:?}"))?;
            }
            let parity = solid_angle_parity_check(p, 4)?;
            ensure(parity.holds, || format!("{parity:?}"))
        });
    }
}

fn rational_checks(s: &mut Suite, e: &Entry) {
    let p = &e.polytope;
    s.check(format!("quasi/{}", e.name), || {
        let q = quasi_polynomial(p)?;
        ensure(q.period % q.minimal_period == 0, || {
            "minimal period does not divide".into()
        })?;
        let rows = quasi_reciprocity_check(p, &q, 5)?;
        ensure(rows.iter().all(|r| r.matches), || {
            "quasi-reciprocity fails".into()
        })
    });
}

/// Runs every check; the result is a deterministic function of `seed`.
pub fn verify_all(seed: u64) -> Vec<CheckOutcome> {
    let mut s = Suite {
        outcomes: Vec::new(),
    };
    let entries = corpus::builtin(seed, RANDOM_POLYGONS);
    for e in &entries {
        s.check(format!("oracles/{}", e.name), || oracles_agree(&e.polytope));
        if e.polytope.is_integral() {
            integral_checks(&mut s, e);
        } else {
            rational_checks(&mut s, e);
        }
        if e.polytope.is_simplex() && e.polytope.is_integral() && e.polytope.dim() >= 1 {
            s.check(format!("covering/{}", e.name), || {
                let d = e.polytope.dim() as i64;
                for t in -d - 2..=2 {
                    let r = verify_covering(&e.polytope, t)?;
                    ensure(r.holds(), || format!("t = {t}: {r:?}"))?;
                }
                Ok(())
            });
        }
    }
    for h in [1, 2, 13] {
        s.check(format!("reeve-fixture/{h}"), || {
            let expect = Polynomial::new(vec![rat(1), rat(2) - frac(h, 6), rat(1), frac(h, 6)]);
            let got = ehrhart_polynomial(&corpus::reeve(h))?;
            ensure(got == expect, || format!("got {got}"))
        });
    }
    for (name, p) in [
        ("square", corpus::unit_cube(2)),
        ("octahedron", corpus::octahedron()),
    ] {
        s.check(format!("mobius/{name}"), || {
            let tri = Triangulation::pulling(&p)?;
            let rows = mobius_identity_check(&tri, &[1, 2, 3], count)?;
            ensure(rows.iter().all(|r| r.holds()), || format!("{rows:?}"))
        });
    }
    s.check("recurrence/geometric".into(), || {
        let f: Vec<BigInt> = [1, 2, 4, 8].into_iter().map(BigInt::from).collect();
        for d in 0..=2 {
            ensure(!recurrence_check(&f, d)?, || {
                format!("1,2,4,8 accepted for d = {d}")
            })?;
        }
        Ok(())
    });
    s.outcomes
}
