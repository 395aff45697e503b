//! Coxeter matrices, the JSON matrix file format, and built-in presets.

use serde::{Deserialize, Serialize};

use crate::error::{CoxeterError, Result};

/// A bond `m(s,t)`; `None` stands for an infinite bond.
pub type Bond = Option<u32>;

/// Symmetric Coxeter matrix together with printable generator names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    bonds: Vec<Vec<Bond>>,
    names: Vec<String>,
}

/// On-disk form: `{"rank": n, "generators": [...], "m": [[...]]}` with `0` for an infinite bond.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rank: usize,
    pub generators: Vec<String>,
    pub m: Vec<Vec<u32>>,
}

impl CoxeterMatrix {
    pub fn new(bonds: Vec<Vec<Bond>>, names: Vec<String>) -> Result<Self> {
        let n = bonds.len();
        if n == 0 {
            return Err(CoxeterError::InvalidMatrix("rank must be positive".into()));
        }
        if names.len() != n {
            return Err(CoxeterError::InvalidMatrix(format!("{} generator names for rank {}", names.len(), n)));
        }
        for (i, row) in bonds.iter().enumerate() {
            if row.len() != n {
                return Err(CoxeterError::InvalidMatrix(format!("row {i} has length {}", row.len())));
            }
            for (j, &m) in row.iter().enumerate() {
                if m != bonds[j][i] {
                    return Err(CoxeterError::InvalidMatrix(format!("m[{i}][{j}] != m[{j}][{i}]")));
                }
                match (i == j, m) {
                    (true, Some(1)) => {}
                    (true, _) => {
                        return Err(CoxeterError::InvalidMatrix(format!("diagonal entry m[{i}][{i}] must be 1")))
                    }
                    (false, Some(k)) if k < 2 => {
                        return Err(CoxeterError::InvalidMatrix(format!(
                            "off-diagonal entry m[{i}][{j}] = {k} must be at least 2"
                        )))
                    }
                    _ => {}
                }
            }
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == ',') {
                return Err(CoxeterError::InvalidMatrix(format!("bad generator name `{name}`")));
            }
            if names[..i].contains(name) {
                return Err(CoxeterError::InvalidMatrix(format!("duplicate generator name `{name}`")));
            }
        }
        Ok(Self { bonds, names })
    }

    /// Builds a matrix from the file encoding (`0` = infinity).
    pub fn from_file(file: &MatrixFile) -> Result<Self> {
        if file.m.len() != file.rank {
            return Err(CoxeterError::InvalidMatrix(format!("rank {} but {} rows", file.rank, file.m.len())));
        }
        let bonds =
            file.m.iter().map(|row| row.iter().map(|&m| if m == 0 { None } else { Some(m) }).collect()).collect();
        Self::new(bonds, file.generators.clone())
    }

    pub fn to_file(&self) -> MatrixFile {
        MatrixFile {
            rank: self.rank(),
            generators: self.names.clone(),
            m: self.bonds.iter().map(|row| row.iter().map(|m| m.unwrap_or(0)).collect()).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: MatrixFile = serde_json::from_str(text).map_err(|e| CoxeterError::Parse(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("matrix serializes")
    }

    pub fn rank(&self) -> usize {
        self.bonds.len()
    }

    pub fn bond(&self, s: usize, t: usize) -> Bond {
        self.bonds[s][t]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Builds a matrix from a list of non-commuting pairs; every other pair commutes.
    fn from_edges(names: &[&str], edges: &[(usize, usize, Bond)]) -> Self {
        let n = names.len();
        let mut bonds = vec![vec![Some(2); n]; n];
        for (i, row) in bonds.iter_mut().enumerate() {
            row[i] = Some(1);
        }
        for &(a, b, m) in edges {
            bonds[a][b] = m;
            bonds[b][a] = m;
        }
        Self::new(bonds, names.iter().map(|s| s.to_string()).collect()).expect("preset is valid")
    }

    /// Built-in presets: `A1`..`A5`, `B3`, `B4`, `D4`, `H3`, `H4`, `F4`, `I2(m)`, `AINF`.
    pub fn preset(id: &str) -> Result<Self> {
        let key = id.trim().to_ascii_uppercase();
        let m = match key.as_str() {
            "A1" => Self::from_edges(&["s"], &[]),
            "A2" => Self::from_edges(&["s", "t"], &[(0, 1, Some(3))]),
            "A3" => Self::from_edges(&["r", "s", "t"], &[(0, 1, Some(3)), (1, 2, Some(3))]),
            "A4" => Self::from_edges(&["r", "s", "t", "u"], &[(0, 1, Some(3)), (1, 2, Some(3)), (2, 3, Some(3))]),
            "A5" => Self::from_edges(
                &["q", "r", "s", "t", "u"],
                &[(0, 1, Some(3)), (1, 2, Some(3)), (2, 3, Some(3)), (3, 4, Some(3))],
            ),
            "B3" => Self::from_edges(&["r", "s", "t"], &[(0, 1, Some(4)), (1, 2, Some(3))]),
            "B4" => Self::from_edges(&["r", "s", "t", "u"], &[(0, 1, Some(4)), (1, 2, Some(3)), (2, 3, Some(3))]),
            "D4" => Self::from_edges(&["r", "s", "t", "u"], &[(0, 1, Some(3)), (1, 2, Some(3)), (1, 3, Some(3))]),
            "H3" => Self::from_edges(&["r", "s", "t"], &[(0, 1, Some(5)), (1, 2, Some(3))]),
            "H4" => Self::from_edges(&["r", "s", "t", "u"], &[(0, 1, Some(5)), (1, 2, Some(3)), (2, 3, Some(3))]),
            "F4" => Self::from_edges(&["r", "s", "t", "u"], &[(0, 1, Some(3)), (1, 2, Some(4)), (2, 3, Some(3))]),
            "AINF" => Self::from_edges(&["s", "t"], &[(0, 1, None)]),
            _ => {
                let inner = key
                    .strip_prefix("I2(")
                    .and_then(|rest| rest.strip_suffix(')'))
                    .ok_or_else(|| CoxeterError::UnknownPreset(id.to_string()))?;
                let m: u32 = inner.parse().map_err(|_| CoxeterError::UnknownPreset(id.to_string()))?;
                if m < 2 {
                    return Err(CoxeterError::UnknownPreset(id.to_string()));
                }
                Self::from_edges(&["s", "t"], &[(0, 1, Some(m))])
            }
        };
        Ok(m)
    }

    /// Names of the presets that generate finite groups (dihedral groups excluded).
    pub fn finite_presets() -> &'static [&'static str] {
        &["A1", "A2", "A3", "A4", "A5", "B3", "B4", "D4", "H3", "H4", "F4"]
    }

    /// True when the matrix is the path diagram `s_1 - s_2 - ... - s_n` with all bonds 3.
    pub fn is_type_a(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let expected = if i == j {
                    1
                } else if i.abs_diff(j) == 1 {
                    3
                } else {
                    2
                };
                self.bonds[i][j] == Some(expected)
            })
        })
    }
}
