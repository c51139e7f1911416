//! The JSON vertex-list file format:
//! `{"ambient_dim": 2, "vertices": [["0", "0"], ["2", "0"], ["2", "1"]]}`.
//!
//! Coordinates are strings `"p"` or `"p/q"` so rationals survive unchanged.

use std::fs;
use std::path::Path;

use ehrhart::exact::{format_rational, parse_rational};
use ehrhart::{Polytope, QVector};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub ambient_dim: usize,
    pub vertices: Vec<Vec<String>>,
}

impl PolytopeFile {
    pub fn from_polytope(p: &Polytope) -> Self {
        Self {
            ambient_dim: p.ambient_dim(),
            vertices: p
                .vertices()
                .iter()
                .map(|v| v.iter().map(format_rational).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    /// Parsed vertex coordinates, validated against `ambient_dim`.
    pub fn points(&self) -> Result<Vec<QVector>, CliError> {
        if self.vertices.is_empty() {
            return Err(CliError::EmptyVertexList);
        }
        self.vertices
            .iter()
            .enumerate()
            .map(|(row, coords)| {
                if coords.len() != self.ambient_dim {
                    return Err(CliError::RaggedRow {
                        row,
                        expected: self.ambient_dim,
                        found: coords.len(),
                    });
                }
                coords
                    .iter()
                    .enumerate()
                    .map(|(col, token)| {
                        parse_rational(token).map_err(|_| CliError::MalformedRational {
                            token: token.clone(),
                            row,
                            col,
                        })
                    })
                    .collect()
            })
            .collect()
    }

    pub fn polytope(&self) -> Result<Polytope, CliError> {
        Ok(Polytope::new(self.points()?)?)
    }
}

pub fn parse_polytope_str(text: &str) -> Result<Polytope, CliError> {
    let file: PolytopeFile =
        serde_json::from_str(text).map_err(|e| CliError::Json(e.to_string()))?;
    file.polytope()
}

pub fn parse_polytope_file(path: &Path) -> Result<Polytope, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_polytope_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_examples() {
        let tri =
            parse_polytope_str(r#"{"ambient_dim":2,"vertices":[["0","0"],["2","0"],["2","1"]]}"#)
                .unwrap();
        assert_eq!(tri.vertices().len(), 3);
        let half = parse_polytope_str(r#"{"ambient_dim":1,"vertices":[["0"],["1/2"]]}"#).unwrap();
        assert_eq!(half.denominator(), &2.into());
        let reeve = parse_polytope_str(
            r#"{"ambient_dim":3,"vertices":[["0","0","0"],["1","0","0"],["0","1","0"],["1","1","13"]]}"#,
        )
        .unwrap();
        assert!(reeve.is_simplex());
    }

    #[test]
    fn diagnostics_name_the_token() {
        let err = parse_polytope_str(r#"{"ambient_dim":2,"vertices":[["0","0"],["1/0","1"]]}"#)
            .unwrap_err();
        assert!(
            matches!(&err, CliError::MalformedRational { token, row: 1, col: 0 } if token == "1/0")
        );
        assert!(err.to_string().contains("\"1/0\""));

        let err =
            parse_polytope_str(r#"{"ambient_dim":2,"vertices":[["0","0"],["1"]]}"#).unwrap_err();
        assert!(matches!(
            err,
            CliError::RaggedRow {
                row: 1,
                expected: 2,
                found: 1
            }
        ));

        let err = parse_polytope_str(r#"{"ambient_dim":2,"vertices":[]}"#).unwrap_err();
        assert!(matches!(err, CliError::EmptyVertexList));

        let err = parse_polytope_str(r#"{"ambient_dim":2,"vertices":[[0,1]]}"#).unwrap_err();
        assert!(matches!(err, CliError::Json(_)));
    }

    #[test]
    fn round_trip() {
        let text =
            r#"{"ambient_dim":2,"vertices":[["1/2","0"],["0","0"],["2","3/4"],["1","1/3"]]}"#;
        let p = parse_polytope_str(text).unwrap();
        let again = parse_polytope_str(&PolytopeFile::from_polytope(&p).to_json()).unwrap();
        assert_eq!(p.vertices(), again.vertices());
    }
}
