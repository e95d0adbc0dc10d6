//! Text formats for multisets and generator matrices.
//!
//! Multiset file:
//!
//! ```text
//! q k
//! mult c0 c1 ... c_{k-1}
//! ...
//! ```
//!
//! one line per support point in enumeration order. Generator matrix file:
//!
//! ```text
//! q k n
//! row 0 (n entries)
//! ...
//! row k-1
//! ```
//!
//! Entries are the integer encodings of [`crate::gf`]. Writers always end in a
//! newline and separate fields by single spaces, so output is byte-stable.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::Matrix;
use crate::mcode::PointMultiset;
use crate::pg::ProjPoint;

pub fn write_multiset(m: &PointMultiset) -> String {
    let mut s = format!("{} {}\n", m.q(), m.k());
    for (p, mult) in m.iter() {
        write!(s, "{mult}").unwrap();
        for c in p.coords() {
            write!(s, " {c}").unwrap();
        }
        s.push('\n');
    }
    s
}

fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, t)| !t.is_empty())
}

fn num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("expected an integer, found {tok:?}"),
    })
}

fn header<'a>(it: &mut impl Iterator<Item = (usize, Vec<&'a str>)>, fields: usize) -> Result<(usize, Vec<u64>)> {
    let (line, toks) = it.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    if toks.len() != fields {
        return Err(Error::Parse {
            line,
            msg: format!("header needs {fields} fields"),
        });
    }
    let vals = toks.iter().map(|t| num(t, line)).collect::<Result<_>>()?;
    Ok((line, vals))
}

/// Parses a multiset file. Coordinates need not be normalized; repeated
/// points accumulate.
pub fn read_multiset(text: &str) -> Result<PointMultiset> {
    let mut it = lines(text);
    let (hline, h) = header(&mut it, 2)?;
    let field = Arc::new(Field::new(h[0]).map_err(|e| Error::Parse {
        line: hline,
        msg: e.to_string(),
    })?);
    let k = h[1] as usize;
    if k == 0 {
        return Err(Error::Parse {
            line: hline,
            msg: "k must be positive".into(),
        });
    }
    let mut m = PointMultiset::new(field.clone(), k);
    for (line, toks) in it {
        if toks.len() != k + 1 {
            return Err(Error::Parse {
                line,
                msg: format!("expected {} fields, found {}", k + 1, toks.len()),
            });
        }
        let mult: u64 = num(toks[0], line)?;
        let coords = toks[1..]
            .iter()
            .map(|t| num::<Elem>(t, line))
            .collect::<Result<Vec<_>>>()?;
        let p = ProjPoint::new(&field, coords).map_err(|e| Error::Parse {
            line,
            msg: e.to_string(),
        })?;
        m.add(p, mult)?;
    }
    Ok(m)
}

pub fn write_matrix(q: u32, g: &Matrix) -> String {
    let (k, n) = g.shape();
    let mut s = format!("{q} {k} {n}\n");
    for i in 0..k {
        let row: Vec<String> = g.row(i).iter().map(|c| c.to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// Parses a generator matrix file into its field and matrix.
pub fn read_matrix(text: &str) -> Result<(Arc<Field>, Matrix)> {
    let mut it = lines(text);
    let (hline, h) = header(&mut it, 3)?;
    let field = Arc::new(Field::new(h[0]).map_err(|e| Error::Parse {
        line: hline,
        msg: e.to_string(),
    })?);
    let (k, n) = (h[1] as usize, h[2] as usize);
    let mut data = Vec::with_capacity(k * n);
    let mut rows = 0;
    for (line, toks) in it {
        if toks.len() != n {
            return Err(Error::Parse {
                line,
                msg: format!("expected {n} entries, found {}", toks.len()),
            });
        }
        for t in toks {
            let c: Elem = num(t, line)?;
            field.check(c).map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })?;
            data.push(c);
        }
        rows += 1;
    }
    if rows != k {
        return Err(Error::Parse {
            line: hline,
            msg: format!("expected {k} rows, found {rows}"),
        });
    }
    Ok((field, Matrix::new(k, n, data)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcode::generator_matrix;

    #[test]
    fn multiset_text_is_stable() {
        let f = Arc::new(Field::new(3).unwrap());
        let mut m = PointMultiset::new(f.clone(), 2);
        m.add(ProjPoint::new(&f, vec![0, 2]).unwrap(), 3).unwrap();
        m.add(ProjPoint::new(&f, vec![2, 1]).unwrap(), 1).unwrap();
        let text = write_multiset(&m);
        assert_eq!(text, "3 2\n1 1 2\n3 0 1\n");
        assert_eq!(read_multiset(&text).unwrap(), m);
    }

    #[test]
    fn matrix_text_round_trip() {
        let f = Arc::new(Field::new(4).unwrap());
        let m = PointMultiset::simplex(f, 2);
        let g = generator_matrix(&m).unwrap();
        let text = write_matrix(4, &g);
        assert_eq!(text.lines().next(), Some("4 2 5"));
        let (f2, g2) = read_matrix(&text).unwrap();
        assert_eq!(f2.q(), 4);
        assert_eq!(g2, g);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(read_multiset(""), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(read_multiset("6 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(read_multiset("3 2\n1 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(
            read_multiset("3 2\n1 0 0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            read_multiset("3 2\n1 5 0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(read_matrix("2 2 2\n1 0\n"), Err(Error::Parse { .. })));
        assert!(matches!(read_matrix("2 1 2\n1 x\n"), Err(Error::Parse { line: 2, .. })));
    }
}
