//! Dense row reduction over GF(q).

use crate::gf::{Elem, Field};

/// A dense row-major matrix of field elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        assert_eq!(rows * cols, data.len());
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![0; rows * cols])
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Matrix::new(rows.len(), cols, data)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn rank(&self, field: &Field) -> usize {
        let rows: Vec<Vec<Elem>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        rank(field, rows)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Elem;
    fn index(&self, (i, j): (usize, usize)) -> &Elem {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Elem {
        &mut self.data[i * self.cols + j]
    }
}

/// Reduced row echelon form; zero rows are dropped. Pivots are 1 and every
/// pivot column is zero outside its pivot row, so the result is unique for
/// the row space.
pub fn rref(field: &Field, mut rows: Vec<Vec<Elem>>) -> Vec<Vec<Elem>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..width {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = field.inv(rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(f, y));
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// Rank of a list of vectors. Stops early once the rank reaches the width.
pub fn rank<I>(field: &Field, vectors: I) -> usize
where
    I: IntoIterator<Item = Vec<Elem>>,
{
    let mut basis = EchelonBasis::default();
    for v in vectors {
        basis.insert(field, v);
        if basis.rank() > 0 && basis.rank() == basis.width {
            break;
        }
    }
    basis.rank()
}

/// An incrementally built echelon basis, for rank tests over long streams.
#[derive(Debug, Default, Clone)]
pub struct EchelonBasis {
    width: usize,
    rows: Vec<(usize, Vec<Elem>)>,
}

impl EchelonBasis {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis and keeps it if it is independent.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, field: &Field, mut v: Vec<Elem>) -> bool {
        self.width = v.len();
        for (piv, row) in &self.rows {
            let f = v[*piv];
            if f != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = field.sub(*x, field.mul(f, y));
                }
            }
        }
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = field.inv(v[piv]).expect("pivot is nonzero");
        for x in v.iter_mut() {
            *x = field.mul(*x, inv);
        }
        self.rows.push((piv, v));
        true
    }
}

/// Basis of `{x : row . x = 0 for every row}`, in reduced echelon form.
pub fn nullspace(field: &Field, rows: Vec<Vec<Elem>>, width: usize) -> Vec<Vec<Elem>> {
    let r = rref(field, rows);
    let pivots: Vec<usize> = r.iter().map(|row| row.iter().position(|&x| x != 0).unwrap()).collect();
    let free = (0..width).filter(|c| !pivots.contains(c));
    let basis = free
        .map(|f| {
            let mut v = vec![0; width];
            v[f] = 1;
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = field.neg(row[f]);
            }
            v
        })
        .collect();
    rref(field, basis)
}
