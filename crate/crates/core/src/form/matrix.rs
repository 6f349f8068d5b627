use std::fmt;
use std::str::FromStr;

use super::CanonicalBlock;
use crate::linalg::{GMatrix, Matrix};
use crate::scalar::{ParameterConstraint, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("row {row}, entry {entry}: {message}")]
pub struct ParseMatrixError {
    /// 1-based.
    pub row: usize,
    /// 1-based.
    pub entry: usize,
    pub message: String,
}

impl ParseMatrixError {
    /// 1-based line and column in `text` where the offending entry starts
    /// (its first non-blank character, or where it would be).
    pub fn locate(&self, text: &str) -> (usize, usize) {
        let (mut row, mut entry) = (1, 1);
        let (mut line, mut col) = (1, 1);
        for ch in text.chars() {
            if row == self.row && entry == self.entry && !ch.is_whitespace() {
                break;
            }
            match ch {
                ';' => {
                    row += 1;
                    entry = 1;
                }
                ',' => entry += 1,
                _ => {}
            }
            if ch == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }
}

/// The matrix of a bilinear form: square, entries in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormMatrix {
    matrix: Matrix,
    constraints: Vec<ParameterConstraint>,
}

impl FormMatrix {
    pub fn new(matrix: Matrix) -> Self {
        assert!(matrix.is_square(), "form matrix must be square");
        Self {
            matrix,
            constraints: Vec::new(),
        }
    }

    pub fn with_constraints(mut self, constraints: Vec<ParameterConstraint>) -> Self {
        for c in constraints {
            if !self.constraints.contains(&c) {
                self.constraints.push(c);
            }
        }
        self.constraints.sort_by(|a, b| a.param.cmp(&b.param));
        self
    }

    pub fn zero(size: usize) -> Self {
        Self::new(Matrix::zeros(size, size))
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::new(Matrix::from_ints(rows))
    }

    pub fn from_constant(m: &GMatrix) -> Self {
        Self::new(m.to_scalar())
    }

    /// Block-diagonal sum in the given order.
    pub fn direct_sum(blocks: &[CanonicalBlock]) -> Self {
        let mut m = Matrix::zeros(0, 0);
        let mut constraints = Vec::new();
        for b in blocks {
            m = m.direct_sum(&b.matrix());
            constraints.extend(b.constraints());
        }
        Self::new(m).with_constraints(constraints)
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn constraints(&self) -> &[ParameterConstraint] {
        &self.constraints
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        self.matrix.get(i, j)
    }

    pub fn is_constant(&self) -> bool {
        self.matrix.is_constant()
    }

    pub fn to_constant(&self) -> Option<GMatrix> {
        self.matrix.to_constant()
    }

    pub fn transpose(&self) -> Self {
        Self {
            matrix: self.matrix.transpose(),
            constraints: self.constraints.clone(),
        }
    }

    /// `Sᵀ · M · S`.
    pub fn congruent_by(&self, s: &Matrix) -> Self {
        Self {
            matrix: s.transpose().mul(&self.matrix).mul(s),
            constraints: self.constraints.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        self.matrix
            .to_rows()
            .iter()
            .map(|r| r.iter().map(Scalar::to_text).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Display for FormMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for FormMatrix {
    type Err = ParseMatrixError;

    /// Rows separated by `;`, entries by `,`: `0,1;c,0`. Surrounding
    /// whitespace and newlines are ignored; the empty string is the 0×0
    /// matrix.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::zero(0));
        }
        let mut rows = Vec::new();
        for (r, line) in s.split(';').enumerate() {
            let mut row = Vec::new();
            for (e, text) in line.split(',').enumerate() {
                let v = text.trim().parse::<Scalar>().map_err(|err| ParseMatrixError {
                    row: r + 1,
                    entry: e + 1,
                    message: err.to_string(),
                })?;
                row.push(v);
            }
            rows.push(row);
        }
        let n = rows.len();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(ParseMatrixError {
                    row: r + 1,
                    entry: row.len(),
                    message: format!("expected {n} entries per row for a square matrix"),
                });
            }
        }
        Ok(Self::new(Matrix::from_rows(rows)))
    }
}
