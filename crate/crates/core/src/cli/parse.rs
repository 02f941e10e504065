//! Plain-text matrix files: one row per line, tokens separated by
//! whitespace and/or commas. Blank lines and `#` comments are skipped.
//! Integers, decimals and exponents are accepted on both backends, `p/q`
//! literals only on the exact one.

use std::fmt::Write as _;
use std::path::Path;

use crate::matrix::Matrix;
use crate::scalar::Scalar;

use super::CliError;

/// Reads and parses a matrix file.
pub fn read_matrix<S: Scalar>(path: &Path) -> Result<Matrix<S>, CliError> {
    let text = read_file(path)?;
    parse_matrix(&text, &path.display().to_string())
}

/// Reads a right-hand side: a single row or a single column.
pub fn read_vector<S: Scalar>(path: &Path) -> Result<Vec<S>, CliError> {
    let m = read_matrix::<S>(path)?;
    if m.rows() == 1 || m.cols() == 1 {
        Ok(m.row_iter().flatten().cloned().collect())
    } else {
        Err(CliError::Shape(format!(
            "{}: expected a single row or column, found {}x{}",
            path.display(),
            m.rows(),
            m.cols()
        )))
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => CliError::FileNotFound(path.to_path_buf()),
        _ => CliError::Io {
            path: path.to_path_buf(),
            source: e,
        },
    })
}

/// Parses matrix text. `source` names the input in error messages.
pub fn parse_matrix<S: Scalar>(text: &str, source: &str) -> Result<Matrix<S>, CliError> {
    let mut rows: Vec<Vec<S>> = Vec::new();
    let mut first_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut row = Vec::new();
        for (column, token) in tokens(content) {
            let value = S::parse_literal(token).map_err(|e| CliError::Parse {
                file: source.to_string(),
                line: line_no,
                column,
                message: e.to_string(),
            })?;
            row.push(value);
        }
        if row.is_empty() {
            continue;
        }
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(CliError::Shape(format!(
                    "{source}:{line_no}: row has {} entries, line {first_line} has {}",
                    row.len(),
                    first.len()
                )));
            }
        } else {
            first_line = line_no;
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::Shape(format!("{source}: no matrix rows")));
    }
    Ok(Matrix::from_rows(rows)?)
}

/// Tokens with their 1-based character column.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (pos, (byte, ch)) in line.char_indices().enumerate() {
        let sep = ch.is_whitespace() || ch == ',';
        match (sep, start) {
            (false, None) => start = Some((pos + 1, byte)),
            (true, Some((col, b))) => {
                out.push((col, &line[b..byte]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((col, b)) = start {
        out.push((col, &line[b..]));
    }
    out.into_iter()
}

/// Writes a matrix in the format [`parse_matrix`] reads. Float entries
/// use the shortest representation that round-trips; rationals use `p/q`.
pub fn write_matrix<S: Scalar>(m: &Matrix<S>) -> String {
    let mut out = String::new();
    for row in m.row_iter() {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn separators_and_comments() {
        let m: Matrix<f64> = parse_matrix("# header\n1, 2 3\n\n4,5,6  # trailing\n", "t").unwrap();
        assert_eq!(m.to_rows(), vec![vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]]);
    }

    #[test]
    fn rationals_need_exact() {
        let m: Matrix<Rational> = parse_matrix("1/2 0.25\n-3 1e2\n", "t").unwrap();
        assert_eq!(m[(0, 0)], Rational::new(1.into(), 2.into()));
        assert_eq!(m[(0, 1)], Rational::new(1.into(), 4.into()));
        assert_eq!(m[(1, 1)], Rational::from_i64(100));
        let err = parse_matrix::<f64>("1 2\n3 1/2\n", "t").unwrap_err();
        match err {
            CliError::Parse { line, column, .. } => assert_eq!((line, column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_token_position() {
        let err = parse_matrix::<Rational>("1 2\n  3,x\n", "m.txt").unwrap_err();
        assert_eq!(err.to_string(), "m.txt:2:5: not a number: 'x'");
    }

    #[test]
    fn ragged_is_shape_error() {
        assert!(matches!(
            parse_matrix::<f64>("1 2\n3\n", "t"),
            Err(CliError::Shape(_))
        ));
        assert!(matches!(
            parse_matrix::<f64>("# nothing\n", "t"),
            Err(CliError::Shape(_))
        ));
    }

    #[test]
    fn round_trip_float() {
        let m = Matrix::from_rows(vec![
            vec![0.1, -2.5e-300, 1.0 / 3.0],
            vec![1e300, 0.0, -7.0],
        ])
        .unwrap();
        let back: Matrix<f64> = parse_matrix(&write_matrix(&m), "t").unwrap();
        assert_eq!(back, m);
    }

    proptest::proptest! {
        #[test]
        fn round_trip_exact(entries in proptest::collection::vec((-1000i64..1000, 1i64..500), 6)) {
            let rows: Vec<Vec<Rational>> = entries
                .chunks(3)
                .map(|c| c.iter().map(|&(p, q)| Rational::new(p.into(), q.into())).collect())
                .collect();
            let m = Matrix::from_rows(rows).unwrap();
            let back: Matrix<Rational> = parse_matrix(&write_matrix(&m), "t").unwrap();
            proptest::prop_assert_eq!(back, m);
        }

        #[test]
        fn round_trip_any_float(entries in proptest::collection::vec(proptest::num::f64::NORMAL | proptest::num::f64::ZERO, 4)) {
            let m = Matrix::from_rows(entries.chunks(2).map(<[f64]>::to_vec).collect()).unwrap();
            let back: Matrix<f64> = parse_matrix(&write_matrix(&m), "t").unwrap();
            proptest::prop_assert_eq!(back, m);
        }
    }
}
