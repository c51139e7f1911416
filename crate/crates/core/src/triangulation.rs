//! Pulling triangulations and their face posets.
//!
//! The lexicographically smallest vertex is pulled: every facet not
//! containing it is triangulated recursively (inside its own affine hull) and
//! each resulting cell is coned with the pulled vertex. Only vertices of `P`
//! are used, and since every face is triangulated by the same rule, cells
//! meet face to face.

use std::collections::BTreeSet;

use num_traits::Signed;

use crate::error::Result;
use crate::exact::{rat, sub, QMatrix, QVector, Rational};
use crate::polytope::{Polytope, Region};

/// Vertex indices into the parent polytope, ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    pub vertex_ids: Vec<usize>,
}

impl Simplex {
    pub fn dim(&self) -> usize {
        self.vertex_ids.len() - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub simplex: Simplex,
    /// Whether the face lies in `∂P`.
    pub on_boundary: bool,
}

#[derive(Debug, Clone)]
pub struct Triangulation {
    polytope: Polytope,
    cells: Vec<Simplex>,
    faces: Vec<Face>,
}

impl Triangulation {
    pub fn pulling(p: &Polytope) -> Result<Self> {
        let ids: Vec<usize> = (0..p.vertices().len()).collect();
        let cells: Vec<Simplex> = pull(p.vertices(), &ids)?
            .into_iter()
            .map(|mut v| {
                v.sort_unstable();
                Simplex { vertex_ids: v }
            })
            .collect();

        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for c in &cells {
            let k = c.vertex_ids.len();
            for mask in 1u32..(1 << k) {
                all.insert(
                    (0..k)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| c.vertex_ids[i])
                        .collect(),
                );
            }
        }
        let faces = all
            .into_iter()
            .map(|ids| {
                let on_boundary = p
                    .facets()
                    .iter()
                    .any(|f| ids.iter().all(|i| f.vertex_ids.contains(i)));
                Face {
                    simplex: Simplex { vertex_ids: ids },
                    on_boundary,
                }
            })
            .collect();
        Ok(Self {
            polytope: p.clone(),
            cells,
            faces,
        })
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    /// Top-dimensional simplices.
    pub fn cells(&self) -> &[Simplex] {
        &self.cells
    }

    /// All nonempty faces of all cells, deduplicated, ordered by vertex set.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Faces not contained in `∂P`.
    pub fn interior_faces(&self) -> Vec<&Face> {
        self.faces.iter().filter(|f| !f.on_boundary).collect()
    }

    pub fn points(&self, s: &Simplex) -> Vec<QVector> {
        s.vertex_ids
            .iter()
            .map(|&i| self.polytope.vertices()[i].clone())
            .collect()
    }

    pub fn face_polytope(&self, s: &Simplex) -> Result<Polytope> {
        Polytope::new(self.points(s))
    }

    /// Euclidean volume `|det(v_1 - v_0, …, v_d - v_0)| / d!` of a
    /// full-dimensional cell; `None` when the cell is not full-dimensional.
    pub fn cell_volume(&self, s: &Simplex) -> Option<Rational> {
        let n = self.polytope.ambient_dim();
        if s.dim() != n {
            return None;
        }
        let pts = self.points(s);
        let rows: Vec<QVector> = pts[1..].iter().map(|p| sub(p, &pts[0])).collect();
        let det = QMatrix::new(rows, n).ok()?.determinant().ok()?;
        let fact: i64 = (1..=n as i64).product();
        Some(det.abs() / rat(fact))
    }

    /// `Σ_F (-1)^{dim F}` over all nonempty faces.
    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .map(|f| if f.simplex.dim() % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// One cell per line as space-separated vertex indices.
    pub fn dump(&self) -> String {
        self.cells
            .iter()
            .map(|c| {
                c.vertex_ids
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Triangulates the face spanned by `ids` (all of which are its vertices).
fn pull(vertices: &[QVector], ids: &[usize]) -> Result<Vec<Vec<usize>>> {
    let face = Polytope::new(ids.iter().map(|&i| vertices[i].clone()).collect())?;
    if face.is_simplex() {
        return Ok(vec![ids.to_vec()]);
    }
    // local vertex index -> parent index
    let parent: Vec<usize> = face
        .vertices()
        .iter()
        .map(|v| {
            *ids.iter()
                .find(|&&i| &vertices[i] == v)
                .expect("face vertex")
        })
        .collect();
    let apex_local = (0..parent.len())
        .min_by_key(|&i| parent[i])
        .expect("nonempty face");
    let apex = parent[apex_local];
    let mut cells = Vec::new();
    for f in face.facets() {
        if f.vertex_ids.contains(&apex_local) {
            continue;
        }
        let sub_ids: Vec<usize> = f.vertex_ids.iter().map(|&i| parent[i]).collect();
        for cell in pull(vertices, &sub_ids)? {
            let mut c = vec![apex];
            c.extend(cell);
            cells.push(c);
        }
    }
    Ok(cells)
}

/// Values of both face-poset identities at one `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusRow {
    pub t: i64,
    /// `#(tP ∩ Z^n)`.
    pub closed: u64,
    /// `(-1)^d Σ_{F ∈ T°} (-1)^{dim F} #(tF ∩ Z^n)`.
    pub alternating_sum: i64,
    /// `Σ_F #(tF° ∩ Z^n)` over all faces.
    pub partition_sum: u64,
}

impl MobiusRow {
    pub fn holds(&self) -> bool {
        self.closed as i64 == self.alternating_sum && self.closed == self.partition_sum
    }
}

/// Checks the Möbius-inverted identity over interior faces and the partition
/// of `tP` into relative interiors of faces, using `counter` for every count.
pub fn mobius_identity_check<F>(
    tri: &Triangulation,
    t_values: &[i64],
    mut counter: F,
) -> Result<Vec<MobiusRow>>
where
    F: FnMut(&Polytope, i64, Region) -> Result<u64>,
{
    let d = tri.polytope().dim();
    let face_polys: Vec<(Polytope, bool)> = tri
        .faces()
        .iter()
        .map(|f| Ok((tri.face_polytope(&f.simplex)?, f.on_boundary)))
        .collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(t_values.len());
    for &t in t_values {
        let closed = counter(tri.polytope(), t, Region::Closed)?;
        let mut alt = 0i64;
        let mut partition = 0u64;
        for (fp, on_boundary) in &face_polys {
            partition += counter(fp, t, Region::RelativeInterior)?;
            if !on_boundary {
                let c = counter(fp, t, Region::Closed)? as i64;
                alt += if fp.dim() % 2 == 0 { c } else { -c };
            }
        }
        if d % 2 == 1 {
            alt = -alt;
        }
        rows.push(MobiusRow {
            t,
            closed,
            alternating_sum: alt,
            partition_sum: partition,
        });
    }
    Ok(rows)
}
