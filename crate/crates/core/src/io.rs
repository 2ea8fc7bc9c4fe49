//! Plain-text file formats. Blank lines and lines starting with `#` are
//! ignored everywhere; parse errors carry the 1-based line number.

use crate::codeforge::BinaryCode;
use crate::error::{Error, Result};
use crate::f2linalg::{F2Matrix, F2Vector, Subspace};
use crate::latticeforge::{ExactLattice, IntMatrix, Scalar};
use crate::orthogroup::{BlockIsometry, Isometry};
use crate::quadspace::QuadraticSpace;

struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let last = text.lines().count().max(1);
        Self { items, pos: 0, last }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let item = self.items.get(self.pos).copied().ok_or_else(|| Error::Parse {
            line: self.last,
            msg: format!("unexpected end of input, expected {what}"),
        })?;
        self.pos += 1;
        Ok(item)
    }

    fn peek_line(&self) -> Option<usize> {
        self.items.get(self.pos).map(|&(n, _)| n)
    }

    fn finish(&self) -> Result<()> {
        match self.peek_line() {
            Some(line) => Err(Error::Parse {
                line,
                msg: "trailing data after the expected content".into(),
            }),
            None => Ok(()),
        }
    }

    /// Header `keyword a b ...` with exactly `arity` unsigned arguments.
    fn header(&mut self, keyword: &str, arity: usize) -> Result<Vec<usize>> {
        let (line, text) = self.next(&format!("`{keyword}` header"))?;
        let mut parts = text.split_whitespace();
        if parts.next() != Some(keyword) {
            return Err(Error::Parse {
                line,
                msg: format!("expected header `{keyword}`, found `{text}`"),
            });
        }
        let args: Vec<&str> = parts.collect();
        if args.len() != arity {
            return Err(Error::Parse {
                line,
                msg: format!("`{keyword}` takes {arity} argument(s), found {}", args.len()),
            });
        }
        args.iter().map(|a| parse_usize(line, a)).collect()
    }

    fn bit_row(&mut self, width: usize) -> Result<F2Vector> {
        let (line, text) = self.next(&format!("a row of {width} bits"))?;
        parse_row(line, text, Some(width))
    }

    fn bit_rows(&mut self, count: usize, width: usize) -> Result<F2Matrix> {
        let rows = (0..count).map(|_| self.bit_row(width)).collect::<Result<Vec<_>>>()?;
        Ok(F2Matrix::from_rows(width, rows))
    }
}

fn parse_usize(line: usize, s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("`{s}` is not a non-negative integer"),
    })
}

fn parse_row(line: usize, text: &str, width: Option<usize>) -> Result<F2Vector> {
    let v = F2Vector::parse_bits(text).ok_or_else(|| Error::Parse {
        line,
        msg: format!("row `{text}` contains characters other than 0 and 1"),
    })?;
    if let Some(w) = width {
        if v.len() != w {
            return Err(Error::Parse {
                line,
                msg: format!("row has length {}, expected {w}", v.len()),
            });
        }
    }
    Ok(v)
}

/// Raw F2 matrix text: one `0/1` row per line, all rows of equal length.
pub fn parse_f2_matrix(text: &str) -> Result<F2Matrix> {
    let mut lines = Lines::new(text);
    let mut rows = Vec::new();
    let mut width = None;
    while lines.peek_line().is_some() {
        let (line, t) = lines.next("a row")?;
        let v = parse_row(line, t, width)?;
        width = Some(v.len());
        rows.push(v);
    }
    let width = width.ok_or(Error::Parse {
        line: lines.last,
        msg: "empty matrix".into(),
    })?;
    Ok(F2Matrix::from_rows(width, rows))
}

pub fn write_f2_matrix(m: &F2Matrix) -> String {
    m.to_text()
}

/// `qspace <2m>` followed by the upper-triangular form matrix.
pub fn parse_qspace(text: &str) -> Result<QuadraticSpace> {
    let mut lines = Lines::new(text);
    let n = lines.header("qspace", 1)?[0];
    let start = lines.peek_line().unwrap_or(lines.last);
    let q = lines.bit_rows(n, n)?;
    lines.finish()?;
    QuadraticSpace::new(q).map_err(|e| Error::Parse {
        line: start,
        msg: e.to_string(),
    })
}

pub fn write_qspace(sp: &QuadraticSpace) -> String {
    format!("qspace {}\n{}", sp.dim(), sp.q_upper().to_text())
}

/// `subspace <ambient>` followed by spanning rows (possibly none).
pub fn parse_subspace(text: &str) -> Result<Subspace> {
    let mut lines = Lines::new(text);
    let n = lines.header("subspace", 1)?[0];
    let mut rows = Vec::new();
    while lines.peek_line().is_some() {
        rows.push(lines.bit_row(n)?);
    }
    Ok(Subspace::from_generators(n, rows))
}

/// Writes the canonical (RREF) basis.
pub fn write_subspace(s: &Subspace) -> String {
    format!("subspace {}\n{}", s.ambient(), s.basis().to_text())
}

/// `isometry <dim>` followed by the matrix; checked against `sp` when given.
pub fn parse_isometry(text: &str, sp: Option<&QuadraticSpace>) -> Result<F2Matrix> {
    let mut lines = Lines::new(text);
    let n = lines.header("isometry", 1)?[0];
    let start = lines.peek_line().unwrap_or(lines.last);
    let m = lines.bit_rows(n, n)?;
    lines.finish()?;
    if let Some(sp) = sp {
        Isometry::new(sp, m.clone()).map_err(|e| Error::Parse {
            line: start,
            msg: e.to_string(),
        })?;
    }
    Ok(m)
}

pub fn write_isometry(g: &Isometry) -> String {
    format!("isometry {}\n{}", g.dim(), g.matrix().to_text())
}

/// `wreath <k> <2m>`, a line of 1-based block images, then `k` matrices.
pub fn parse_wreath(text: &str, sp: &QuadraticSpace) -> Result<BlockIsometry> {
    let mut lines = Lines::new(text);
    let h = lines.header("wreath", 2)?;
    let (k, n) = (h[0], h[1]);
    if n != sp.dim() {
        return Err(Error::Parse {
            line: 1,
            msg: format!("block dimension {n} does not match the space ({})", sp.dim()),
        });
    }
    let (pline, ptext) = lines.next("the permutation line")?;
    let images = ptext
        .split_whitespace()
        .map(|t| parse_usize(pline, t))
        .collect::<Result<Vec<_>>>()?;
    if images.len() != k || images.iter().any(|&i| i == 0 || i > k) {
        return Err(Error::Parse {
            line: pline,
            msg: format!("expected {k} block images in 1..={k}"),
        });
    }
    let sigma: Vec<usize> = images.iter().map(|i| i - 1).collect();
    let mut blocks = Vec::with_capacity(k);
    for _ in 0..k {
        let start = lines.peek_line().unwrap_or(lines.last);
        let m = lines.bit_rows(n, n)?;
        blocks.push(Isometry::new(sp, m).map_err(|e| Error::Parse {
            line: start,
            msg: e.to_string(),
        })?);
    }
    lines.finish()?;
    BlockIsometry::new(sigma, blocks).map_err(|e| Error::Parse {
        line: pline,
        msg: e.to_string(),
    })
}

pub fn write_wreath(g: &BlockIsometry) -> String {
    let mut out = format!("wreath {} {}\n", g.k(), g.block_dim());
    let images: Vec<String> = g.sigma.iter().map(|i| (i + 1).to_string()).collect();
    out.push_str(&images.join(" "));
    out.push('\n');
    for b in &g.blocks {
        out.push_str(&b.matrix().to_text());
    }
    out
}

/// `code <n> <k>` followed by `k` generator rows (must be independent).
pub fn parse_code(text: &str) -> Result<BinaryCode> {
    let mut lines = Lines::new(text);
    let h = lines.header("code", 2)?;
    let (n, k) = (h[0], h[1]);
    let start = lines.peek_line().unwrap_or(lines.last);
    let g = lines.bit_rows(k, n)?;
    lines.finish()?;
    if g.rank() != k {
        return Err(Error::Parse {
            line: start,
            msg: format!("generator rows have rank {}, expected {k}", g.rank()),
        });
    }
    Ok(BinaryCode::from_generators(n, g.into_rows()))
}

pub fn write_code(c: &BinaryCode) -> String {
    format!("code {} {}\n{}", c.len(), c.dim(), c.generator_matrix().to_text())
}

/// `gram2 <n>` followed by `n` rows of `n` signed integers.
pub fn parse_gram2<T: Scalar + std::str::FromStr>(text: &str) -> Result<ExactLattice<T>> {
    let mut lines = Lines::new(text);
    let n = lines.header("gram2", 1)?[0];
    let start = lines.peek_line().unwrap_or(lines.last);
    let mut g: IntMatrix<T> = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, t) = lines.next(&format!("a row of {n} integers"))?;
        let row = t
            .split_whitespace()
            .map(|x| {
                x.parse::<T>().map_err(|_| Error::Parse {
                    line,
                    msg: format!("`{x}` is not an integer"),
                })
            })
            .collect::<Result<Vec<T>>>()?;
        if row.len() != n {
            return Err(Error::Parse {
                line,
                msg: format!("row has {} entries, expected {n}", row.len()),
            });
        }
        g.push(row);
    }
    lines.finish()?;
    ExactLattice::new(g).map_err(|e| Error::Parse {
        line: start,
        msg: e.to_string(),
    })
}

pub fn write_gram2<T: Scalar>(l: &ExactLattice<T>) -> String {
    let mut out = format!("gram2 {}\n", l.rank());
    for row in l.gram2() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadspace::hyperbolic_space;

    #[test]
    fn parse_error_reports_line() {
        let err = parse_subspace("# comment\nsubspace 4\n1010\n10x0\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 4,
                msg: "row `10x0` contains characters other than 0 and 1".into()
            }
        );
        let err = parse_subspace("subspace 4\n101\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(matches!(parse_qspace("qspace 4\n0100\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn qspace_round_trip() {
        let sp = hyperbolic_space(3).unwrap();
        assert_eq!(parse_qspace(&write_qspace(&sp)).unwrap(), sp);
        assert!(parse_qspace("qspace 2\n11\n01\n").is_err());
    }

    #[test]
    fn wreath_round_trip() {
        let sp = hyperbolic_space(2).unwrap();
        let g = BlockIsometry::permutation(4, vec![2, 0, 1]).unwrap();
        let text = write_wreath(&g);
        assert!(text.starts_with("wreath 3 4\n3 1 2\n"));
        assert_eq!(parse_wreath(&text, &sp).unwrap(), g);
    }

    #[test]
    fn gram2_round_trip() {
        let text = "gram2 2\n4 2\n2 4\n";
        let l: crate::latticeforge::Lattice = parse_gram2(text).unwrap();
        assert_eq!(write_gram2(&l), text);
        assert!(parse_gram2::<i128>("gram2 2\n4 2\n2\n").is_err());
    }
}
