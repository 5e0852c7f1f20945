//! Matrix Market coordinate-format ingestion (real, general or symmetric).

use crate::error::{Error, Result};
use crate::sparse::SparseCsr;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

/// Load a Matrix Market file into CSR form. Symmetric storage is expanded to
/// full, duplicate entries are summed, 1-based indices become 0-based.
pub fn load_matrix_market(path: impl AsRef<Path>) -> Result<SparseCsr> {
    let file = File::open(path.as_ref())?;
    parse_matrix_market(BufReader::new(file))
}

/// Parse Matrix Market content from any buffered reader.
pub fn parse_matrix_market(reader: impl BufRead) -> Result<SparseCsr> {
    let mut lines = reader.lines().enumerate();

    let (header_no, header) = match lines.next() {
        Some((no, line)) => (no + 1, line?),
        None => {
            return Err(Error::Parse {
                line: 1,
                msg: "empty file".into(),
            })
        }
    };
    let symmetric = parse_header(header_no, &header)?;

    // skip comments, find the size line
    let (size_no, size_line) = loop {
        match lines.next() {
            Some((no, line)) => {
                let line = line?;
                let trimmed = line.trim();
                if trimmed.is_empty() || trimmed.starts_with('%') {
                    continue;
                }
                break (no + 1, line);
            }
            None => {
                return Err(Error::Parse {
                    line: header_no,
                    msg: "missing size line".into(),
                })
            }
        }
    };
    let dims: Vec<&str> = size_line.split_whitespace().collect();
    if dims.len() != 3 {
        return Err(Error::Parse {
            line: size_no,
            msg: format!("expected 'rows cols nnz', got '{}'", size_line.trim()),
        });
    }
    let rows: usize = parse_field(size_no, dims[0], "row count")?;
    let cols: usize = parse_field(size_no, dims[1], "column count")?;
    let nnz: usize = parse_field(size_no, dims[2], "entry count")?;

    let mut triplets: Vec<(usize, usize, f64)> = Vec::with_capacity(if symmetric {
        2 * nnz
    } else {
        nnz
    });
    let mut seen = 0usize;
    for (no, line) in lines {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let no = no + 1;
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: no,
                msg: format!("expected 'i j value', got '{trimmed}'"),
            });
        }
        let i: usize = parse_field(no, fields[0], "row index")?;
        let j: usize = parse_field(no, fields[1], "column index")?;
        let v: f64 = fields[2].parse().map_err(|_| Error::Parse {
            line: no,
            msg: format!("bad value '{}'", fields[2]),
        })?;
        if i < 1 || i > rows || j < 1 || j > cols {
            return Err(Error::Parse {
                line: no,
                msg: format!("index ({i}, {j}) outside {rows}x{cols}"),
            });
        }
        triplets.push((i - 1, j - 1, v));
        if symmetric && i != j {
            triplets.push((j - 1, i - 1, v));
        }
        seen += 1;
    }
    if seen != nnz {
        return Err(Error::Parse {
            line: size_no,
            msg: format!("header promises {nnz} entries, file has {seen}"),
        });
    }
    SparseCsr::from_triplets(rows, cols, &triplets)
}

/// Returns whether the matrix uses symmetric storage.
fn parse_header(line_no: usize, header: &str) -> Result<bool> {
    let tokens: Vec<String> = header.split_whitespace().map(str::to_lowercase).collect();
    if tokens.len() < 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(Error::Parse {
            line: line_no,
            msg: format!("not a MatrixMarket matrix header: '{}'", header.trim()),
        });
    }
    if tokens[2] != "coordinate" {
        return Err(Error::Unsupported(format!(
            "matrix format '{}' (only coordinate is supported)",
            tokens[2]
        )));
    }
    match tokens[3].as_str() {
        "real" => {}
        other => {
            return Err(Error::Unsupported(format!(
                "field type '{other}' (only real is supported)"
            )))
        }
    }
    match tokens[4].as_str() {
        "general" => Ok(false),
        "symmetric" => Ok(true),
        other => Err(Error::Unsupported(format!(
            "symmetry '{other}' (only general and symmetric are supported)"
        ))),
    }
}

fn parse_field<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> Result<T> {
    field.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad {what} '{field}'"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn parse(s: &str) -> Result<SparseCsr> {
        parse_matrix_market(Cursor::new(s))
    }

    #[test]
    fn diagonal_general() {
        let m = parse(
            "%%MatrixMarket matrix coordinate real general\n\
             % a comment\n\
             2 2 2\n\
             1 1 4.0\n\
             2 2 5.0\n",
        )
        .unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.nnz(), 2);
        assert_eq!(m.to_dense().data(), &[4.0, 0.0, 0.0, 5.0]);
    }

    #[test]
    fn duplicates_are_summed() {
        let m = parse(
            "%%MatrixMarket matrix coordinate real general\n\
             2 2 2\n\
             1 1 1.0\n\
             1 1 2.0\n",
        )
        .unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.to_dense().get(0, 0), 3.0);
    }

    #[test]
    fn symmetric_expands() {
        let m = parse(
            "%%MatrixMarket matrix coordinate real symmetric\n\
             3 3 3\n\
             1 1 2.0\n\
             2 1 -1.0\n\
             3 3 1.5\n",
        )
        .unwrap();
        assert_eq!(m.nnz(), 4);
        let d = m.to_dense();
        assert_eq!(d.get(0, 1), -1.0);
        assert_eq!(d.get(1, 0), -1.0);
    }

    #[test]
    fn rejects_unsupported_fields() {
        match parse("%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n") {
            Err(Error::Unsupported(msg)) => assert!(msg.contains("complex")),
            other => panic!("expected unsupported, got {other:?}"),
        }
        match parse("%%MatrixMarket matrix coordinate pattern general\n1 1 1\n1 1\n") {
            Err(Error::Unsupported(msg)) => assert!(msg.contains("pattern")),
            other => panic!("expected unsupported, got {other:?}"),
        }
        match parse("%%MatrixMarket matrix array real general\n1 1\n1.0\n") {
            Err(Error::Unsupported(msg)) => assert!(msg.contains("array")),
            other => panic!("expected unsupported, got {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match parse("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 oops 3.0\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse("%%MatrixMarket matrix coordinate real general\n2 2 5\n1 1 3.0\n") {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 2);
                assert!(msg.contains("promises"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn loads_from_file() {
        use std::io::Write;
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("tiny.mtx");
        let mut f = std::fs::File::create(&path).unwrap();
        write!(
            f,
            "%%MatrixMarket matrix coordinate real general\n2 3 2\n1 3 1.0\n2 1 -2.0\n"
        )
        .unwrap();
        let m = load_matrix_market(&path).unwrap();
        assert_eq!((m.rows(), m.cols(), m.nnz()), (2, 3, 2));
    }
}
