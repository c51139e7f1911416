//! Named fixtures and seeded random polytopes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{frac, qvec, rat, QVector};
use crate::polytope::Polytope;

#[derive(Debug, Clone)]
pub struct Entry {
    pub name: String,
    pub polytope: Polytope,
}

impl Entry {
    fn new(name: impl Into<String>, polytope: Polytope) -> Self {
        Self {
            name: name.into(),
            polytope,
        }
    }
}

fn build(points: Vec<QVector>) -> Polytope {
    Polytope::new(points).expect("fixture vertices are well formed")
}

/// `conv{(0,0), (2,0), (2,1)}`: one interior-free lattice triangle of area 1.
pub fn pick_triangle() -> Polytope {
    build(vec![qvec(&[0, 0]), qvec(&[2, 0]), qvec(&[2, 1])])
}

/// `[0,1]^d`.
pub fn unit_cube(d: usize) -> Polytope {
    build(
        (0u32..1 << d)
            .map(|m| (0..d).map(|i| rat((m >> i & 1) as i64)).collect())
            .collect(),
    )
}

/// `conv{0, e_1, …, e_d}`.
pub fn standard_simplex(d: usize) -> Polytope {
    let mut pts = vec![vec![rat(0); d]];
    for i in 0..d {
        let mut e = vec![rat(0); d];
        e[i] = rat(1);
        pts.push(e);
    }
    build(pts)
}

/// `conv{(0,0,0), (1,0,0), (0,1,0), (1,1,h)}`.
pub fn reeve(h: i64) -> Polytope {
    build(vec![
        qvec(&[0, 0, 0]),
        qvec(&[1, 0, 0]),
        qvec(&[0, 1, 0]),
        qvec(&[1, 1, h]),
    ])
}

/// `conv{±e_1, ±e_2, ±e_3}`.
pub fn octahedron() -> Polytope {
    let mut pts = Vec::new();
    for i in 0..3 {
        for s in [1, -1] {
            let mut e = vec![rat(0); 3];
            e[i] = rat(s);
            pts.push(e);
        }
    }
    build(pts)
}

/// `[0, 1/2]`.
pub fn half_segment() -> Polytope {
    build(vec![vec![rat(0)], vec![frac(1, 2)]])
}

/// `[-1/2, 1/2]^2`.
pub fn half_square() -> Polytope {
    let h = || [frac(-1, 2), frac(1, 2)];
    build(
        h().into_iter()
            .flat_map(|x| h().map(|y| vec![x.clone(), y]))
            .collect(),
    )
}

/// The segment from `(0,0)` to `(2,2)`, of lattice length 2.
pub fn diagonal_segment() -> Polytope {
    build(vec![qvec(&[0, 0]), qvec(&[2, 2])])
}

/// Convex hull of 3 to 8 random points of `[0, 8]^2`, redrawn until it has
/// positive area.
pub fn random_lattice_polygon<R: Rng>(rng: &mut R) -> Polytope {
    loop {
        let n = rng.gen_range(3..=8);
        let pts = (0..n)
            .map(|_| qvec(&[rng.gen_range(0..=8), rng.gen_range(0..=8)]))
            .collect();
        let p = build(pts);
        if p.dim() == 2 {
            return p;
        }
    }
}

/// A full-dimensional simplex of dimension `dim` whose vertices have
/// coordinates `k/D` with `|k| <= D` for one random `D <= max_denominator`.
pub fn random_rational_simplex<R: Rng>(rng: &mut R, dim: usize, max_denominator: i64) -> Polytope {
    loop {
        let den = rng.gen_range(1..=max_denominator);
        let pts = (0..=dim)
            .map(|_| {
                (0..dim)
                    .map(|_| frac(rng.gen_range(-den..=den), den))
                    .collect()
            })
            .collect();
        let p = build(pts);
        if p.dim() == dim && p.vertices().len() == dim + 1 {
            return p;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The fixed fixtures followed by `random_polygons` polygons drawn from `seed`.
pub fn builtin(seed: u64, random_polygons: usize) -> Vec<Entry> {
    let mut out = vec![
        Entry::new("pick-triangle", pick_triangle()),
        Entry::new("diagonal-segment", diagonal_segment()),
        Entry::new("octahedron", octahedron()),
        Entry::new("half-segment", half_segment()),
        Entry::new("half-square", half_square()),
    ];
    for d in 1..=4 {
        out.push(Entry::new(format!("cube-{d}"), unit_cube(d)));
        out.push(Entry::new(format!("simplex-{d}"), standard_simplex(d)));
    }
    for h in [1, 2, 13] {
        out.push(Entry::new(format!("reeve-{h}"), reeve(h)));
    }
    let mut r = rng(seed);
    for i in 0..random_polygons {
        out.push(Entry::new(
            format!("polygon-{i}"),
            random_lattice_polygon(&mut r),
        ));
    }
    out
}
