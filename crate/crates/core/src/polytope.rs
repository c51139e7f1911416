//! Rational polytopes given by vertex lists.
//!
//! [`Polytope::new`] reduces the input points to vertices, then derives the
//! affine hull, the facet inequalities and the denominator. Lower-dimensional
//! polytopes are handled throughout: membership always checks the affine
//! hull equations as well as the facets.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{self, dot, primitive_integer, rat, sub, QMatrix, QVector, Rational};
use crate::lp;

/// Closed polytope or its relative interior.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    Closed,
    RelativeInterior,
}

/// `normal · x = offset` (an equation) or `normal · x <= offset` (an inequality).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    pub normal: QVector,
    pub offset: Rational,
}

impl Hyperplane {
    pub fn value(&self, x: &[Rational]) -> Rational {
        dot(&self.normal, x)
    }

    fn scaled(&self, t: &Rational) -> Hyperplane {
        Hyperplane {
            normal: self.normal.clone(),
            offset: &self.offset * t,
        }
    }
}

/// A facet inequality together with the vertices it is tight on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub inequality: Hyperplane,
    /// Indices into [`Polytope::vertices`], ascending.
    pub vertex_ids: Vec<usize>,
}

/// Equations cutting out the affine hull plus one inequality per facet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfspaceDescription {
    pub equations: Vec<Hyperplane>,
    pub inequalities: Vec<Hyperplane>,
}

impl HalfspaceDescription {
    pub fn contains(&self, x: &[Rational], region: Region) -> bool {
        if !self.equations.iter().all(|e| e.value(x) == e.offset) {
            return false;
        }
        match region {
            Region::Closed => self.inequalities.iter().all(|h| h.value(x) <= h.offset),
            Region::RelativeInterior => self.inequalities.iter().all(|h| h.value(x) < h.offset),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    ambient_dim: usize,
    generators: Vec<QVector>,
    vertices: Vec<QVector>,
    dim: usize,
    equations: Vec<Hyperplane>,
    facets: Vec<Facet>,
    denominator: BigInt,
}

impl Polytope {
    /// Convex hull of `points`.
    pub fn new(points: Vec<QVector>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::EmptyInput);
        };
        let n = first.len();
        for (index, p) in points.iter().enumerate() {
            if p.len() != n {
                return Err(Error::RaggedInput {
                    index,
                    expected: n,
                    found: p.len(),
                });
            }
        }

        let unique: Vec<QVector> = points
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let vertices: Vec<QVector> = (0..unique.len())
            .filter(|&i| {
                let others: Vec<QVector> = unique
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, p)| p.clone())
                    .collect();
                others.is_empty() || lp::convex_combination(&others, &unique[i]).is_none()
            })
            .map(|i| unique[i].clone())
            .collect();

        let equations = affine_hull(&vertices, n);
        let dim = n - equations.len();
        let facets = enumerate_facets(&vertices, &equations, dim);
        let denominator = exact::denominator_lcm(vertices.iter().flatten());

        Ok(Self {
            ambient_dim: n,
            generators: points,
            vertices,
            dim,
            equations,
            facets,
            denominator,
        })
    }

    pub fn from_i64(points: &[&[i64]]) -> Result<Self> {
        Self::new(points.iter().map(|p| exact::qvec(p)).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[QVector] {
        &self.generators
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn equations(&self) -> &[Hyperplane] {
        &self.equations
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Smallest positive integer `D` with `D·P` integral.
    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn is_integral(&self) -> bool {
        self.denominator.is_one()
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim + 1
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim
    }

    pub fn halfspaces(&self) -> HalfspaceDescription {
        HalfspaceDescription {
            equations: self.equations.clone(),
            inequalities: self.facets.iter().map(|f| f.inequality.clone()).collect(),
        }
    }

    pub fn contains(&self, x: &[Rational], region: Region) -> Result<bool> {
        if x.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: x.len(),
            });
        }
        if !self.equations.iter().all(|e| e.value(x) == e.offset) {
            return Ok(false);
        }
        let facets = self.facets.iter().map(|f| &f.inequality);
        Ok(match region {
            Region::Closed => facets.into_iter().all(|h| h.value(x) <= h.offset),
            Region::RelativeInterior => facets.into_iter().all(|h| h.value(x) < h.offset),
        })
    }

    /// `tP` for a positive integer `t`.
    pub fn dilate(&self, t: i64) -> Result<Polytope> {
        if t <= 0 {
            return Err(Error::NonPositiveDilation(t));
        }
        let factor = rat(t);
        let scale_all = |ps: &[QVector]| -> Vec<QVector> {
            ps.iter().map(|p| exact::scale(p, &factor)).collect()
        };
        let vertices = scale_all(&self.vertices);
        let denominator = exact::denominator_lcm(vertices.iter().flatten());
        Ok(Polytope {
            ambient_dim: self.ambient_dim,
            generators: scale_all(&self.generators),
            dim: self.dim,
            equations: self.equations.iter().map(|e| e.scaled(&factor)).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Facet {
                    inequality: f.inequality.scaled(&factor),
                    vertex_ids: f.vertex_ids.clone(),
                })
                .collect(),
            vertices,
            denominator,
        })
    }

    /// `-P`.
    pub fn negated(&self) -> Result<Polytope> {
        Polytope::new(
            self.vertices
                .iter()
                .map(|v| v.iter().map(|c| -c).collect())
                .collect(),
        )
    }

    /// Integer bounding box `[ceil(min), floor(max)]` per coordinate.
    pub fn integer_bounds(&self) -> Result<Vec<(i128, i128)>> {
        (0..self.ambient_dim)
            .map(|c| {
                let lo = self.vertices.iter().map(|v| &v[c]).min().expect("nonempty");
                let hi = self.vertices.iter().map(|v| &v[c]).max().expect("nonempty");
                Ok((exact::ceil_i128(lo)?, exact::floor_i128(hi)?))
            })
            .collect()
    }

    /// Vertex indices of a 2-dimensional polytope in boundary order, walking
    /// edge to edge from vertex 0. `None` for other dimensions.
    pub fn polygon_cycle(&self) -> Option<Vec<usize>> {
        if self.dim != 2 {
            return None;
        }
        let k = self.vertices.len();
        let mut neighbours = vec![Vec::with_capacity(2); k];
        for f in &self.facets {
            let [a, b] = f.vertex_ids[..] else {
                return None;
            };
            neighbours[a].push(b);
            neighbours[b].push(a);
        }
        let mut cycle = vec![0];
        let mut prev = usize::MAX;
        let mut cur = 0;
        while cycle.len() < k {
            let next = *neighbours[cur].iter().find(|&&v| v != prev)?;
            cycle.push(next);
            prev = cur;
            cur = next;
        }
        Some(cycle)
    }

    /// Indices of facets tight at `x`.
    pub fn tight_facets(&self, x: &[Rational]) -> Vec<usize> {
        self.facets
            .iter()
            .enumerate()
            .filter(|(_, f)| f.inequality.value(x) == f.inequality.offset)
            .map(|(i, _)| i)
            .collect()
    }
}

fn normalize_sign(v: QVector) -> QVector {
    match v.iter().find(|c| !c.is_zero()) {
        Some(c) if c.is_negative() => v.iter().map(|x| -x).collect(),
        _ => v,
    }
}

fn affine_hull(vertices: &[QVector], n: usize) -> Vec<Hyperplane> {
    let base = &vertices[0];
    let diffs: Vec<QVector> = vertices[1..].iter().map(|v| sub(v, base)).collect();
    let m = QMatrix::new(diffs, n).expect("vertices share a length");
    m.nullspace()
        .into_iter()
        .map(|a| {
            let normal = normalize_sign(primitive_integer(&a));
            let offset = dot(&normal, base);
            Hyperplane { normal, offset }
        })
        .collect()
}

/// Exhaustive facet search: every `dim`-subset of vertices spanning a
/// `(dim-1)`-flat inside the affine hull is a facet candidate; it is kept when
/// all vertices lie weakly on one side.
fn enumerate_facets(vertices: &[QVector], equations: &[Hyperplane], dim: usize) -> Vec<Facet> {
    if dim == 0 {
        return Vec::new();
    }
    let n = vertices[0].len();
    let mut facets: Vec<Facet> = Vec::new();
    for combo in combinations(vertices.len(), dim) {
        if facets
            .iter()
            .any(|f| combo.iter().all(|i| f.vertex_ids.contains(i)))
        {
            continue;
        }
        let base = &vertices[combo[0]];
        let mut rows: Vec<QVector> = combo[1..]
            .iter()
            .map(|&i| sub(&vertices[i], base))
            .collect();
        rows.extend(equations.iter().map(|e| e.normal.clone()));
        let m = QMatrix::new(rows, n).expect("uniform lengths");
        let ns = m.nullspace();
        if ns.len() != 1 {
            continue;
        }
        let normal = primitive_integer(&ns[0]);
        let offset = dot(&normal, base);
        let values: Vec<Rational> = vertices.iter().map(|v| dot(&normal, v)).collect();
        let (normal, offset) = if values.iter().all(|v| *v <= offset) {
            (normal, offset)
        } else if values.iter().all(|v| *v >= offset) {
            (normal.iter().map(|x| -x).collect(), -offset)
        } else {
            continue;
        };
        let vertex_ids = vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| dot(&normal, v) == offset)
            .map(|(i, _)| i)
            .collect();
        facets.push(Facet {
            inequality: Hyperplane { normal, offset },
            vertex_ids,
        });
    }
    facets
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
