//! Exact Ehrhart theory for rational polytopes.
//!
//! Lattice-point counts of dilates, Ehrhart polynomials and quasi-polynomials,
//! the alternating-binomial recurrence that characterizes polynomial
//! sequences, the simplex covering construction behind it, reciprocity,
//! Pick's theorem and the planar solid-angle enumerator.
//!
//! ```
//! use ehrhart::{ehrhart::ehrhart_polynomial, Polytope};
//!
//! let reeve = Polytope::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 13]])?;
//! let l = ehrhart_polynomial(&reeve)?;
//! assert_eq!(l.to_string(), "13/6*t^3 + t^2 - 1/6*t + 1");
//! # Ok::<(), ehrhart::Error>(())
//! ```

pub mod corpus;
pub mod ehrhart;
pub mod error;
pub mod exact;
pub mod lattice;
pub mod lp;
pub mod polytope;
pub mod solid_angle;
pub mod triangulation;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{QMatrix, QVector, Rational};
pub use polytope::{Polytope, Region};
