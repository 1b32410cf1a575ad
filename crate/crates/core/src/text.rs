//! The plain-text matrix format.
//!
//! ```text
//! f2 4 3
//! 1 1 0 0 1 0 1
//! ...
//! ```
//!
//! The header names the field (`f2`, `fp:<p>` or `q`) and the split `m n`;
//! then come `m + n` rows of `m + n` whitespace-separated entries. Blank
//! lines and lines starting with `#` are ignored.

use crate::decompose::BlockedMatrix;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::matrix::Matrix;

/// A parsed but not yet typed matrix file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixText {
    pub field: FieldSpec,
    pub m: usize,
    pub n: usize,
    /// `(line number, entries)` for each row.
    rows: Vec<(usize, Vec<String>)>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

impl MatrixText {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
        let tokens: Vec<&str> = header.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(parse_err(hline, "header must be `field m n`"));
        }
        let field = FieldSpec::parse(tokens[0]).map_err(|e| match e {
            Error::Parse { msg, .. } => parse_err(hline, msg),
            other => parse_err(hline, other.to_string()),
        })?;
        let dim = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| parse_err(hline, format!("`{t}` is not a dimension")))
        };
        let (m, n) = (dim(tokens[1])?, dim(tokens[2])?);
        let k = m + n;
        let rows: Vec<(usize, Vec<String>)> = lines
            .map(|(i, l)| (i, l.split_whitespace().map(str::to_string).collect()))
            .collect();
        if rows.len() != k {
            return Err(parse_err(
                rows.get(k).map_or(hline, |r| r.0),
                format!("expected {k} rows, found {}", rows.len()),
            ));
        }
        if let Some((line, r)) = rows.iter().find(|(_, r)| r.len() != k) {
            return Err(parse_err(*line, format!("expected {k} entries, found {}", r.len())));
        }
        Ok(MatrixText { field, m, n, rows })
    }

    /// Entries parsed in `field`, which must match the header.
    pub fn to_matrix<F: Field>(&self, field: F) -> Result<Matrix<F>> {
        if field.spec() != self.field {
            return Err(Error::FieldMismatch);
        }
        let k = self.m + self.n;
        let mut data = Vec::with_capacity(k * k);
        for (line, r) in &self.rows {
            for e in r {
                data.push(field.parse_elem(e).map_err(|err| parse_err(*line, err.to_string()))?);
            }
        }
        Matrix::new(field, k, k, data)
    }

    pub fn to_blocked<F: Field>(&self, field: F) -> Result<BlockedMatrix<F>> {
        BlockedMatrix::new(self.to_matrix(field)?, self.m)
    }
}

pub fn format_matrix_text<F: Field>(bm: &BlockedMatrix<F>) -> String {
    let mut out = format!("{} {} {}\n", bm.field().spec(), bm.m(), bm.n());
    out.push_str(&bm.matrix().to_string());
    out
}

/// A permutation table as text: whitespace-separated images `mapping[0] mapping[1] ...`.
pub fn parse_permutation(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        for t in line.split_whitespace() {
            out.push(
                t.parse::<usize>()
                    .map_err(|_| parse_err(i + 1, format!("`{t}` is not an index")))?,
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, Rationals};

    #[test]
    fn round_trip() {
        let text = "f2 1 2\n1 0 0\n0 0 1\n0 1 0\n";
        let mt = MatrixText::parse(text).unwrap();
        assert_eq!((mt.field, mt.m, mt.n), (FieldSpec::Gf2, 1, 2));
        let bm = mt.to_blocked(Gf2).unwrap();
        assert_eq!(format_matrix_text(&bm), text);
    }

    #[test]
    fn comments_and_rationals() {
        let text = "# a rational matrix\nq 1 1\n\n1/2 0\n-3 1\n";
        let bm = MatrixText::parse(text).unwrap().to_blocked(Rationals).unwrap();
        assert_eq!(bm.matrix().to_row_strings(), vec!["1/2 0", "-3 1"]);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let short_row = MatrixText::parse("f2 1 1\n1 0\n1\n");
        assert_eq!(short_row.unwrap_err(), parse_err(3, "expected 2 entries, found 1"));
        assert!(MatrixText::parse("f3 1 1\n1 0\n0 1\n").unwrap_err().is_parse());
        assert!(MatrixText::parse("f2 1\n").unwrap_err().is_parse());
        assert!(MatrixText::parse("fp:4 1 1\n1 0\n0 1\n").unwrap_err().is_parse());
        assert!(MatrixText::parse("f2 1 1\n1 0\n").unwrap_err().is_parse());
        let bad_entry = MatrixText::parse("f2 1 1\n1 2\n0 1\n").unwrap().to_matrix(Gf2);
        assert!(matches!(bad_entry, Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn singular_is_not_a_parse_error() {
        let mt = MatrixText::parse("f2 1 1\n1 1\n1 1\n").unwrap();
        assert_eq!(mt.to_blocked(Gf2).unwrap_err(), Error::SingularMatrix);
    }
}
