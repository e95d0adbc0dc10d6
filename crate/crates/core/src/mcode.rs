//! Linear codes as multisets of points.
//!
//! The columns of a generator matrix of an `[n, k, d]_q` code with full
//! support, read as points of PG(k-1, q), form a multiset of `n` points. A
//! nonzero codeword `u G` vanishes exactly on the columns lying in the
//! hyperplane `u . x = 0`, so its weight is `n - m(H)` where `m(H)` is the
//! total multiplicity of that hyperplane. Every parameter of the code can be
//! read off the hyperplane multiplicities:
//!
//! * `d = n - max_H m(H)`,
//! * the weight distribution is `A_w = (q - 1) a_{n-w}` for `w > 0`, with
//!   `a_i` the number of hyperplanes of multiplicity `i` (the *spectrum*),
//! * the code is `m`-divisible iff `m` divides every `n - m(H)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::{self, Matrix};
use crate::pg::{self, Hyperplane, ProjPoint};

/// Default bound on the number of codewords the brute-force oracle visits.
pub const DEFAULT_MAX_ORACLE: u128 = 10_000_000;

/// A multiset of points of PG(k-1, q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointMultiset {
    field: Arc<Field>,
    k: usize,
    mults: BTreeMap<ProjPoint, u64>,
}

impl PointMultiset {
    pub fn new(field: Arc<Field>, k: usize) -> Self {
        PointMultiset {
            field,
            k,
            mults: BTreeMap::new(),
        }
    }

    /// Every point of PG(k-1, q) once: the simplex code.
    pub fn simplex(field: Arc<Field>, k: usize) -> Self {
        let mut m = PointMultiset::new(field.clone(), k);
        for p in pg::enumerate_points(&field, k - 1) {
            m.mults.insert(p, 1);
        }
        m
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Adds `mult` copies of `p`.
    pub fn add(&mut self, p: ProjPoint, mult: u64) -> Result<()> {
        if p.dim() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                got: p.dim(),
            });
        }
        if mult > 0 {
            *self.mults.entry(p).or_insert(0) += mult;
        }
        Ok(())
    }

    /// Removes one copy of `p`.
    pub fn remove_one(&mut self, p: &ProjPoint) -> Result<()> {
        match self.mults.get_mut(p) {
            Some(m) if *m > 1 => *m -= 1,
            Some(_) => {
                self.mults.remove(p);
            }
            None => return Err(Error::PointNotInSupport),
        }
        Ok(())
    }

    pub fn multiplicity(&self, p: &ProjPoint) -> u64 {
        self.mults.get(p).copied().unwrap_or(0)
    }

    /// `m(S)`: the summed multiplicity of a point set.
    pub fn multiplicity_of<'a, I>(&self, points: I) -> u64
    where
        I: IntoIterator<Item = &'a ProjPoint>,
    {
        points.into_iter().map(|p| self.multiplicity(p)).sum()
    }

    /// Support points with their multiplicities, in enumeration order.
    pub fn iter(&self) -> impl Iterator<Item = (&ProjPoint, u64)> {
        self.mults.iter().map(|(p, &m)| (p, m))
    }

    pub fn support_len(&self) -> usize {
        self.mults.len()
    }

    /// Length of the code.
    pub fn n(&self) -> u64 {
        self.mults.values().sum()
    }

    pub fn gamma0(&self) -> u64 {
        self.mults.values().copied().max().unwrap_or(0)
    }

    /// `lambda[i]` is the number of points of multiplicity `i`, for
    /// `0 <= i <= gamma0`.
    pub fn lambda(&self) -> Vec<u64> {
        let mut out = vec![0; self.gamma0() as usize + 1];
        for &m in self.mults.values() {
            out[m as usize] += 1;
        }
        out[0] = pg::theta(self.k as i64 - 1, self.q() as u64) - self.mults.len() as u64;
        out
    }

    /// Rank of the support, as vectors of GF(q)^k.
    pub fn rank(&self) -> usize {
        linalg::rank(&self.field, self.mults.keys().map(|p| p.coords().to_vec()))
    }

    fn support_vectors(&self) -> Vec<(&[Elem], u64)> {
        self.mults.iter().map(|(p, &m)| (p.coords(), m)).collect()
    }
}

/// Counts `a_i` of hyperplanes with multiplicity `i`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Spectrum(pub BTreeMap<u64, u64>);

impl Spectrum {
    pub fn get(&self, multiplicity: u64) -> u64 {
        self.0.get(&multiplicity).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.0.iter().map(|(&i, &a)| (i, a))
    }

    /// `A_0 = 1` and `A_{n-i} = (q - 1) a_i`.
    pub fn weight_distribution(&self, n: u64, q: u32) -> BTreeMap<u64, u64> {
        let mut out = BTreeMap::new();
        out.insert(0, 1);
        for (i, a) in self.iter() {
            *out.entry(n - i).or_insert(0) += (q as u64 - 1) * a;
        }
        out
    }
}

/// The multiplicity of every hyperplane, in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperplaneTable {
    q: u32,
    k: usize,
    mults: Vec<u64>,
}

impl HyperplaneTable {
    pub fn len(&self) -> usize {
        self.mults.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.mults
    }

    pub fn iter(&self) -> impl Iterator<Item = (Hyperplane, u64)> + '_ {
        pg::canonical_vectors(self.k, self.q)
            .map(Hyperplane::from_canonical)
            .zip(self.mults.iter().copied())
    }

    pub fn max(&self) -> u64 {
        self.mults.iter().copied().max().unwrap_or(0)
    }

    pub fn spectrum(&self) -> Spectrum {
        let mut s = BTreeMap::new();
        for &m in &self.mults {
            *s.entry(m).or_insert(0) += 1;
        }
        Spectrum(s)
    }
}

/// Largest `q^(k+1)` for which the hyperplane-sum transform is used.
const TRANSFORM_MAX_ENTRIES: usize = 1 << 24;
const TRANSFORM_MAX_Q: u32 = 64;

/// Multiplicity of every hyperplane of PG(k-1, q) with respect to `m`.
///
/// For small `q^k` this runs a coordinate-by-coordinate transform: after
/// processing coordinates `0..i`, entry `(a_0..a_{i-1}, x_i..x_{k-1}, c)`
/// holds the total weight of vectors `x` agreeing on the trailing
/// coordinates with `a_0 x_0 + ... + a_{i-1} x_{i-1} = c`. The cost is
/// `k q^{k+2}` instead of `theta_{k-1}` times the support size. Larger
/// spaces fall back to [`hyperplane_multiplicities_direct`].
pub fn hyperplane_multiplicities(m: &PointMultiset) -> HyperplaneTable {
    let q = m.q();
    let entries = (q as usize).checked_pow(m.k as u32 + 1);
    match entries {
        Some(e) if e <= TRANSFORM_MAX_ENTRIES && q <= TRANSFORM_MAX_Q => hyperplane_multiplicities_transform(m),
        _ => hyperplane_multiplicities_direct(m),
    }
}

/// Multiplicity of every hyperplane by summing over the support points
/// incident with it.
pub fn hyperplane_multiplicities_direct(m: &PointMultiset) -> HyperplaneTable {
    let field = &m.field;
    let support = m.support_vectors();
    let hyperplanes: Vec<Vec<Elem>> = pg::canonical_vectors(m.k, m.q()).collect();
    let mults = hyperplanes
        .par_iter()
        .map(|h| {
            support
                .iter()
                .filter(|(v, _)| field.dot(v, h) == 0)
                .map(|&(_, mult)| mult)
                .sum()
        })
        .collect();
    HyperplaneTable {
        q: m.q(),
        k: m.k,
        mults,
    }
}

fn hyperplane_multiplicities_transform(m: &PointMultiset) -> HyperplaneTable {
    let field = &m.field;
    let q = m.q() as usize;
    let k = m.k;
    let size = q.pow(k as u32);
    let mut s = vec![0u64; size * q];
    for (v, mult) in m.support_vectors() {
        s[pg::vector_index(v, m.q()) * q] += mult;
    }

    // shift[(a q + x) q + c] = c - a x
    let mut shift = vec![0usize; q * q * q];
    for a in 0..q {
        for x in 0..q {
            let ax = field.mul(a as Elem, x as Elem);
            for c in 0..q {
                shift[(a * q + x) * q + c] = field.sub(c as Elem, ax) as usize;
            }
        }
    }

    let mut buf = vec![0u64; q * q];
    let mut out = vec![0u64; q * q];
    for i in 0..k {
        let stride = q.pow((k - 1 - i) as u32);
        for hi in 0..q.pow(i as u32) {
            for lo in 0..stride {
                let base = hi * stride * q + lo;
                for x in 0..q {
                    let off = (base + x * stride) * q;
                    buf[x * q..(x + 1) * q].copy_from_slice(&s[off..off + q]);
                }
                for a in 0..q {
                    for c in 0..q {
                        let row = &shift[a * q * q..];
                        out[a * q + c] = (0..q).map(|x| buf[x * q + row[x * q + c]]).sum();
                    }
                }
                for a in 0..q {
                    let off = (base + a * stride) * q;
                    s[off..off + q].copy_from_slice(&out[a * q..(a + 1) * q]);
                }
            }
        }
    }

    let mults = pg::canonical_vectors(k, m.q())
        .map(|v| s[pg::vector_index(&v, m.q()) * q])
        .collect();
    HyperplaneTable { q: m.q(), k, mults }
}

/// Spectrum `a_i` of the multiset.
pub fn hyperplane_spectrum(m: &PointMultiset) -> Spectrum {
    hyperplane_multiplicities(m).spectrum()
}

/// The exact parameters of the code of a multiset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub q: u32,
    pub n: u64,
    pub k: usize,
    pub d: u64,
    /// gcd of all nonzero codeword weights.
    pub divisor: u64,
    pub gamma0: u64,
    pub lambda: Vec<u64>,
}

impl std::fmt::Display for CodeParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{},{}]_{}", self.n, self.k, self.d, self.q)
    }
}

/// Parameters together with the hyperplane table they were derived from.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub params: CodeParams,
    pub table: HyperplaneTable,
}

impl Analysis {
    pub fn spectrum(&self) -> Spectrum {
        self.table.spectrum()
    }

    /// Whether every nonzero weight is divisible by `m`.
    pub fn is_divisible(&self, m: u64) -> bool {
        m != 0 && self.params.divisor.is_multiple_of(m)
    }
}

/// Computes `(n, k, d, divisor, gamma0, lambda)` from hyperplane
/// multiplicities. Fails with `NotFullRank` if the support does not span.
pub fn analyze(m: &PointMultiset) -> Result<Analysis> {
    if m.mults.is_empty() {
        return Err(Error::EmptyMultiset);
    }
    let rank = m.rank();
    if rank != m.k {
        return Err(Error::NotFullRank { rank, k: m.k });
    }
    let n = m.n();
    let table = hyperplane_multiplicities(m);
    let d = n - table.max();
    let divisor = table.multiplicities().iter().fold(0, |g, &mh| gcd(g, n - mh));
    let params = CodeParams {
        q: m.q(),
        n,
        k: m.k,
        d,
        divisor,
        gamma0: m.gamma0(),
        lambda: m.lambda(),
    };
    Ok(Analysis { params, table })
}

pub fn code_params(m: &PointMultiset) -> Result<CodeParams> {
    analyze(m).map(|a| a.params)
}

/// Whether every codeword weight `n - m(H)` is divisible by `divisor`.
pub fn is_divisible(m: &PointMultiset, divisor: u64) -> bool {
    if divisor == 0 {
        return false;
    }
    let n = m.n();
    hyperplane_multiplicities(m)
        .multiplicities()
        .iter()
        .all(|&mh| (n - mh).is_multiple_of(divisor))
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Generator matrix whose columns are the support points, each repeated by
/// its multiplicity, in enumeration order.
pub fn generator_matrix(m: &PointMultiset) -> Result<Matrix> {
    let rank = m.rank();
    if rank != m.k {
        return Err(Error::NotFullRank { rank, k: m.k });
    }
    let n = m.n() as usize;
    let mut g = Matrix::zeros(m.k, n);
    let mut col = 0;
    for (p, mult) in m.iter() {
        for _ in 0..mult {
            for (i, &c) in p.coords().iter().enumerate() {
                g[(i, col)] = c;
            }
            col += 1;
        }
    }
    Ok(g)
}

/// The multiset of normalized columns of `g`.
pub fn multiset_from_matrix(field: Arc<Field>, g: &Matrix) -> Result<PointMultiset> {
    let (k, n) = g.shape();
    let mut m = PointMultiset::new(field.clone(), k);
    for j in 0..n {
        let col = g.column(j);
        let p = ProjPoint::new(&field, col).map_err(|e| match e {
            Error::ZeroVector => Error::ZeroColumn(j),
            other => other,
        })?;
        m.add(p, 1)?;
    }
    let rank = g.rank(&field);
    if rank != k {
        return Err(Error::NotFullRank { rank, k });
    }
    Ok(m)
}

/// Exact weight distribution by evaluating all `q^k` codewords.
///
/// Independent of the hyperplane machinery; used to cross-check it.
pub fn oracle_weight_distribution(m: &PointMultiset, max_codewords: u128) -> Result<BTreeMap<u64, u64>> {
    let q = m.q() as u128;
    let needed = q.checked_pow(m.k as u32).unwrap_or(u128::MAX);
    if needed > max_codewords {
        return Err(Error::TooLarge {
            needed,
            bound: max_codewords,
        });
    }
    let field = &m.field;
    let support = m.support_vectors();
    let k = m.k;
    let counts = (0..needed as u64)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<u64, u64>, idx| {
            let mut u = vec![0; k];
            let mut t = idx;
            for c in u.iter_mut().rev() {
                *c = (t % q as u64) as Elem;
                t /= q as u64;
            }
            let w: u64 = support
                .iter()
                .filter(|(v, _)| field.dot(v, &u) != 0)
                .map(|&(_, mult)| mult)
                .sum();
            *acc.entry(w).or_insert(0) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (w, c) in b {
                *a.entry(w).or_insert(0) += c;
            }
            a
        });
    Ok(counts)
}
