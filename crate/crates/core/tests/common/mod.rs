//! Test-only oracles that share no code with the library's arithmetic,
//! geometry or hyperplane machinery.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

/// GF(q) for q in {2, 3, 4, 5, 7}: residues for primes, an explicit table
/// for GF(4) = GF(2)[x]/(x^2+x+1) with x encoded as 2.
#[derive(Clone, Copy)]
pub struct SmallField {
    pub q: u32,
}

const GF4_MUL: [[u32; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];

impl SmallField {
    pub fn new(q: u32) -> Self {
        assert!([2, 3, 4, 5, 7].contains(&q));
        SmallField { q }
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        if self.q == 4 {
            a ^ b
        } else {
            (a + b) % self.q
        }
    }

    pub fn neg(self, a: u32) -> u32 {
        if self.q == 4 {
            a
        } else {
            (self.q - a) % self.q
        }
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        if self.q == 4 {
            GF4_MUL[a as usize][b as usize]
        } else {
            (a * b) % self.q
        }
    }

    pub fn inv(self, a: u32) -> u32 {
        (1..self.q).find(|&b| self.mul(a, b) == 1).unwrap()
    }

    /// The smallest generator of the multiplicative group, by brute force.
    pub fn primitive(self) -> u32 {
        (1..self.q)
            .find(|&g| {
                let mut seen = BTreeSet::new();
                let mut x = 1;
                for _ in 0..self.q - 1 {
                    seen.insert(x);
                    x = self.mul(x, g);
                }
                seen.len() == (self.q - 1) as usize
            })
            .unwrap()
    }

    pub fn pow(self, a: u32, e: u64) -> u32 {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    pub fn dot(self, a: &[u32], b: &[u32]) -> u32 {
        a.iter().zip(b).fold(0, |s, (&x, &y)| self.add(s, self.mul(x, y)))
    }

    pub fn normalize(self, v: &[u32]) -> Vec<u32> {
        let lead = *v.iter().find(|&&c| c != 0).unwrap();
        let inv = self.inv(lead);
        v.iter().map(|&c| self.mul(c, inv)).collect()
    }

    /// All vectors of length `len` whose first nonzero entry is 1, by
    /// filtering the full space.
    pub fn projective_vectors(self, len: usize) -> Vec<Vec<u32>> {
        let total = (self.q as u64).pow(len as u32);
        (1..total)
            .map(|mut i| {
                let mut v = vec![0; len];
                for c in v.iter_mut() {
                    *c = (i % self.q as u64) as u32;
                    i /= self.q as u64;
                }
                v
            })
            .filter(|v| v.iter().find(|&&c| c != 0) == Some(&1))
            .collect()
    }
}

pub type Multiset = BTreeMap<Vec<u32>, u64>;

/// Spectrum by summing multiplicities over every hyperplane.
pub fn brute_spectrum(f: SmallField, k: usize, m: &Multiset) -> BTreeMap<u64, u64> {
    let mut out = BTreeMap::new();
    for h in f.projective_vectors(k) {
        let mh: u64 = m.iter().filter(|(p, _)| f.dot(p, &h) == 0).map(|(_, &c)| c).sum();
        *out.entry(mh).or_insert(0) += 1;
    }
    out
}

/// Weight distribution by evaluating every codeword.
pub fn brute_weights(f: SmallField, k: usize, m: &Multiset) -> BTreeMap<u64, u64> {
    let mut out = BTreeMap::new();
    let total = (f.q as u64).pow(k as u32);
    for mut i in 0..total {
        let mut u = vec![0; k];
        for c in u.iter_mut() {
            *c = (i % f.q as u64) as u32;
            i /= f.q as u64;
        }
        let w: u64 = m.iter().filter(|(p, _)| f.dot(p, &u) != 0).map(|(_, &c)| c).sum();
        *out.entry(w).or_insert(0) += 1;
    }
    out
}

/// The arc-and-lines multisets written out directly from their point
/// coordinates: `family` is one of "base1", "c1", "base2", "c2".
pub fn coordinate_multiset(f: SmallField, k: usize, family: &str) -> Multiset {
    let q = f.q;
    let a = f.primitive();
    let p = |i: u32| -> Vec<u32> {
        let mut v = vec![0; k];
        if i == 0 {
            v[0] = 1;
        } else if i == q {
            v[k - 2] = 1;
        } else {
            for (e, c) in v[..k - 1].iter_mut().enumerate() {
                *c = f.pow(a, (e as u64) * i as u64);
            }
        }
        v
    };
    let qp = |i: u32| -> Vec<u32> {
        let mut v = vec![0; k];
        if i == q {
            v[k - 1] = 1;
        } else {
            v[0] = 1;
            v[k - 1] = f.pow(a, i as u64);
        }
        v
    };
    let mut m = Multiset::new();
    let mut add = |v: Vec<u32>, c: u64| *m.entry(f.normalize(&v)).or_insert(0) += c;
    let lines = if family.ends_with('1') { q } else { q - 1 };
    for i in 1..=lines {
        // l_i minus Q_i: the points P_i + lambda Q_i
        let (pi, qi) = (p(i), qp(i));
        for lambda in 0..q {
            let v: Vec<u32> = pi.iter().zip(&qi).map(|(&x, &y)| f.add(x, f.mul(lambda, y))).collect();
            add(v, 1);
        }
    }
    add(p(0), (q - 1) as u64);
    if family.ends_with('2') {
        add(qp(q), (q - 1) as u64);
        add(p(q), q as u64);
    }
    if family.starts_with('c') {
        let mut extra = vec![0; k];
        extra[1] = 1;
        extra[k - 1] = 1;
        add(extra, q as u64);
    }
    m
}

pub fn binom(n: i64, r: i64) -> u64 {
    if r < 0 || r > n {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..r {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}
