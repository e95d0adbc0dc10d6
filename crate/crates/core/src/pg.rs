//! The projective space PG(r, q): points, hyperplanes, flats and duality.
//!
//! Points and hyperplanes are stored as coordinate vectors normalized so the
//! leftmost nonzero entry is 1. Both types order by the position of that
//! leading 1 first and then lexicographically, which is also the order
//! [`enumerate_points`] produces. Flats are stored by their reduced echelon
//! basis, which is unique for the subspace.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg;

/// Number of points of a `j`-flat, `(q^{j+1} - 1) / (q - 1)`. `theta(-1) = 0`.
pub fn theta(j: i64, q: u64) -> u64 {
    if j < 0 {
        return 0;
    }
    (0..=j as u32).map(|i| q.pow(i)).sum()
}

fn normalize(field: &Field, mut coords: Vec<Elem>) -> Result<Vec<Elem>> {
    for &c in &coords {
        field.check(c)?;
    }
    let lead = coords.iter().copied().find(|&c| c != 0).ok_or(Error::ZeroVector)?;
    if lead != 1 {
        let inv = field.inv(lead)?;
        for c in coords.iter_mut() {
            *c = field.mul(*c, inv);
        }
    }
    Ok(coords)
}

fn canonical_cmp(a: &[Elem], b: &[Elem]) -> Ordering {
    let pa = a.iter().position(|&c| c != 0);
    let pb = b.iter().position(|&c| c != 0);
    pa.cmp(&pb).then_with(|| a.cmp(b))
}

macro_rules! canonical_vector {
    ($name:ident, $field:ident, $open:literal, $close:literal) => {
        #[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name {
            $field: Vec<Elem>,
        }

        impl $name {
            /// Normalizes `coords` so the leftmost nonzero entry is 1.
            pub fn new(field: &Field, coords: Vec<Elem>) -> Result<Self> {
                Ok($name {
                    $field: normalize(field, coords)?,
                })
            }

            /// Wraps coordinates that are already normalized.
            pub fn from_canonical(coords: Vec<Elem>) -> Self {
                debug_assert_eq!(coords.iter().find(|&&c| c != 0), Some(&1));
                $name { $field: coords }
            }

            pub fn $field(&self) -> &[Elem] {
                &self.$field
            }

            pub fn dim(&self) -> usize {
                self.$field.len()
            }

            pub fn into_vec(self) -> Vec<Elem> {
                self.$field
            }
        }

        impl Ord for $name {
            fn cmp(&self, other: &Self) -> Ordering {
                canonical_cmp(&self.$field, &other.$field)
            }
        }

        impl PartialOrd for $name {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts: Vec<String> = self.$field.iter().map(|c| c.to_string()).collect();
                write!(f, "{}{}{}", $open, parts.join(","), $close)
            }
        }
    };
}

canonical_vector!(ProjPoint, coords, "(", ")");
canonical_vector!(Hyperplane, coeffs, "[", "]");

/// Whether `point` lies on `hyperplane`.
pub fn incident(field: &Field, point: &ProjPoint, hyperplane: &Hyperplane) -> Result<bool> {
    if point.dim() != hyperplane.dim() {
        return Err(Error::DimensionMismatch {
            expected: hyperplane.dim(),
            got: point.dim(),
        });
    }
    Ok(field.dot(point.coords(), hyperplane.coeffs()) == 0)
}

/// The point of the dual space with the same coordinates as `h`.
pub fn dual_point(h: &Hyperplane) -> ProjPoint {
    ProjPoint::from_canonical(h.coeffs().to_vec())
}

/// The hyperplane of the dual space with the same coordinates as `p`.
pub fn dual_hyperplane(p: &ProjPoint) -> Hyperplane {
    Hyperplane::from_canonical(p.coords().to_vec())
}

/// Canonical vectors of length `len` over GF(q), in enumeration order.
///
/// The order groups vectors by the position of their leading 1 (leftmost
/// first) and is lexicographic inside each group.
pub fn canonical_vectors(len: usize, q: u32) -> impl Iterator<Item = Vec<Elem>> {
    (0..len).flat_map(move |pivot| {
        let tail = len - pivot - 1;
        (0..(q as u64).pow(tail as u32)).map(move |mut t| {
            let mut v = vec![0; len];
            v[pivot] = 1;
            for i in (pivot + 1..len).rev() {
                v[i] = (t % q as u64) as Elem;
                t /= q as u64;
            }
            v
        })
    })
}

/// All `theta(r)` points of PG(r, q), in enumeration order.
pub fn enumerate_points(field: &Field, r: usize) -> Vec<ProjPoint> {
    canonical_vectors(r + 1, field.q())
        .map(ProjPoint::from_canonical)
        .collect()
}

/// All hyperplanes of PG(r, q), in enumeration order.
pub fn enumerate_hyperplanes(field: &Field, r: usize) -> Vec<Hyperplane> {
    canonical_vectors(r + 1, field.q())
        .map(Hyperplane::from_canonical)
        .collect()
}

/// Packs a coordinate vector into a base-q integer, first coordinate most
/// significant.
pub fn vector_index(coords: &[Elem], q: u32) -> usize {
    coords.iter().fold(0usize, |acc, &c| acc * q as usize + c as usize)
}

/// A projective subspace, held as the reduced echelon basis of the
/// underlying vector subspace.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Flat {
    basis: Vec<Vec<Elem>>,
}

impl Flat {
    /// The flat spanned by arbitrary (not necessarily independent) vectors.
    pub fn from_vectors(field: &Field, vectors: Vec<Vec<Elem>>) -> Result<Self> {
        let width = vectors.first().map(Vec::len).ok_or(Error::ZeroVector)?;
        for v in &vectors {
            if v.len() != width {
                return Err(Error::DimensionMismatch {
                    expected: width,
                    got: v.len(),
                });
            }
            for &c in v {
                field.check(c)?;
            }
        }
        let basis = linalg::rref(field, vectors);
        if basis.is_empty() {
            return Err(Error::ZeroVector);
        }
        Ok(Flat { basis })
    }

    /// The point set of a hyperplane, as a flat of dimension `r - 1`.
    pub fn of_hyperplane(field: &Field, h: &Hyperplane) -> Self {
        let basis = linalg::nullspace(field, vec![h.coeffs().to_vec()], h.dim());
        Flat { basis }
    }

    /// Projective dimension.
    pub fn dim(&self) -> usize {
        self.basis.len() - 1
    }

    /// Length of the coordinate vectors.
    pub fn ambient_len(&self) -> usize {
        self.basis[0].len()
    }

    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    /// The `theta(dim)` points of the flat.
    ///
    /// With a reduced echelon basis, a combination whose first nonzero
    /// coefficient is 1 is already a normalized point.
    pub fn points(&self, field: &Field) -> Vec<ProjPoint> {
        let width = self.ambient_len();
        canonical_vectors(self.basis.len(), field.q())
            .map(|c| {
                let mut v = vec![0; width];
                for (&ci, row) in c.iter().zip(&self.basis) {
                    if ci != 0 {
                        for (x, &y) in v.iter_mut().zip(row) {
                            *x = field.add(*x, field.mul(ci, y));
                        }
                    }
                }
                ProjPoint::from_canonical(v)
            })
            .collect()
    }

    pub fn contains(&self, field: &Field, p: &ProjPoint) -> bool {
        let mut rows = self.basis.clone();
        rows.push(p.coords().to_vec());
        linalg::rank(field, rows) == self.basis.len()
    }

    pub fn contains_flat(&self, field: &Field, other: &Flat) -> bool {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        linalg::rank(field, rows) == self.basis.len()
    }
}

impl fmt::Display for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| {
                let parts: Vec<String> = r.iter().map(|c| c.to_string()).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        write!(f, "<{}>", rows.join(" "))
    }
}

/// The smallest flat containing every given point.
pub fn span(field: &Field, points: &[ProjPoint]) -> Result<Flat> {
    Flat::from_vectors(field, points.iter().map(|p| p.coords().to_vec()).collect())
}
