//! Arithmetic in GF(q), q = p^h.
//!
//! An element `c_0 + c_1 x + ... + c_{h-1} x^{h-1}` of GF(p)[x]/(f) is encoded
//! as the integer `c_0 + c_1 p + ... + c_{h-1} p^{h-1}`. For prime fields this
//! is just the residue. The modulus `f` is the smallest monic irreducible
//! polynomial of degree `h` under the same packing (coefficients below the
//! leading one), and the primitive element `alpha` is the smallest encoded
//! element of order `q - 1`. Both choices are deterministic, so matrices and
//! files written by this crate are reproducible from `q` alone.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer encoding of a field element, always in `[0, q)`.
pub type Elem = u32;

/// Largest field size accepted by [`Field::new`].
pub const DEFAULT_MAX_Q: u64 = 1 << 16;

/// Sizes at or below this get a full addition table.
const ADD_TABLE_MAX_Q: u32 = 256;

/// The parameters that pin down a concrete field representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub h: u32,
    pub q: u32,
    /// Coefficients `c_0..=c_h` of the monic modulus, lowest degree first.
    pub modulus: Vec<u32>,
    pub alpha: Elem,
}

/// A finite field with precomputed log/antilog tables.
///
/// Immutable after construction; share it behind an `Arc`.
#[derive(Debug, Clone)]
pub struct Field {
    spec: FieldSpec,
    exp: Vec<Elem>,
    log: Vec<u32>,
    neg: Vec<Elem>,
    add: Option<Vec<Elem>>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(q: u64) -> Result<Self> {
        Self::with_bound(q, DEFAULT_MAX_Q)
    }

    pub fn with_bound(q: u64, bound: u64) -> Result<Self> {
        let (p, h) = prime_power(q).ok_or(Error::NotAPrimePower(q))?;
        if q > bound {
            return Err(Error::FieldTooLarge { q, bound });
        }
        let (p, h, q) = (p as u32, h as u32, q as u32);
        let poly = PolyRing { p, h };
        let modulus = poly.smallest_irreducible();
        let alpha = (1..q)
            .find(|&a| poly.has_order(a, q - 1, &modulus))
            .expect("the multiplicative group of a finite field is cyclic");

        let order = (q - 1) as usize;
        let mut exp = vec![0; 2 * order];
        let mut log = vec![0; q as usize];
        let mut x = 1;
        for i in 0..order {
            exp[i] = x;
            exp[i + order] = x;
            log[x as usize] = i as u32;
            x = poly.mul(x, alpha, &modulus);
        }

        let neg = (0..q).map(|a| poly.neg(a)).collect();
        let add = (q <= ADD_TABLE_MAX_Q).then(|| {
            let mut t = Vec::with_capacity((q * q) as usize);
            for a in 0..q {
                for b in 0..q {
                    t.push(poly.add(a, b));
                }
            }
            t
        });

        Ok(Field {
            spec: FieldSpec {
                p,
                h,
                q,
                modulus,
                alpha,
            },
            exp,
            log,
            neg,
            add,
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.spec.p
    }

    #[inline]
    pub fn h(&self) -> u32 {
        self.spec.h
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.spec.q
    }

    #[inline]
    pub fn alpha(&self) -> Elem {
        self.spec.alpha
    }

    pub fn modulus(&self) -> &[u32] {
        &self.spec.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q()
    }

    pub fn check(&self, a: u32) -> Result<Elem> {
        if a < self.q() {
            Ok(a)
        } else {
            Err(Error::InvalidElement { value: a, q: self.q() })
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.add {
            Some(t) => t[(a * self.q() + b) as usize],
            None => PolyRing {
                p: self.p(),
                h: self.h(),
            }
            .add(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let order = self.q() - 1;
        Ok(self.exp[((order - self.log[a as usize]) % order) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` with `0^0 = 1`.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.q() - 1) as u64;
        let l = (self.log[a as usize] as u64 * (e % order)) % order;
        self.exp[l as usize]
    }

    /// `alpha^i`, exponent taken mod `q - 1`; negative exponents allowed.
    pub fn alpha_power(&self, i: i64) -> Elem {
        let order = (self.q() - 1) as i64;
        self.exp[i.rem_euclid(order) as usize]
    }

    /// Discrete log to base alpha. `None` for zero.
    pub fn log_alpha(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    #[inline]
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

/// `Some((p, h))` when `q = p^h` with `p` prime and `h >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u64)> {
    if q < 2 {
        return None;
    }
    let p = smallest_prime_factor(q);
    let mut rest = q;
    let mut h = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        h += 1;
    }
    (rest == 1).then_some((p, h))
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return f;
        }
        f += 1;
    }
    n
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 1 {
        let f = smallest_prime_factor(n);
        out.push(f);
        while n.is_multiple_of(f) {
            n /= f;
        }
    }
    out
}

/// Slow polynomial arithmetic over GF(p), used once per field to pick the
/// modulus and primitive element and fill the tables.
struct PolyRing {
    p: u32,
    h: u32,
}

impl PolyRing {
    fn digits(&self, mut a: u32, len: usize) -> Vec<u32> {
        let mut d = vec![0; len];
        for c in d.iter_mut() {
            *c = a % self.p;
            a /= self.p;
        }
        d
    }

    fn pack(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        if self.h == 1 {
            return (a + b) % self.p;
        }
        let (x, y) = (self.digits(a, self.h as usize), self.digits(b, self.h as usize));
        let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.pack(&s)
    }

    fn neg(&self, a: u32) -> u32 {
        let d = self.digits(a, self.h as usize);
        let n: Vec<u32> = d.iter().map(|&c| (self.p - c) % self.p).collect();
        self.pack(&n)
    }

    /// Remainder of `num` modulo the monic `den`, both lowest degree first.
    fn rem(&self, num: &[u32], den: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
        let dd = den.len() - 1;
        while r.len() > dd {
            let lead = r.pop().unwrap();
            if lead != 0 {
                let off = r.len() - dd;
                for (i, &c) in den[..dd].iter().enumerate() {
                    r[off + i] = (r[off + i] + (p - lead) * c as u64) % p;
                }
            }
        }
        r.into_iter().map(|c| c as u32).collect()
    }

    fn mul(&self, a: u32, b: u32, modulus: &[u32]) -> u32 {
        let h = self.h as usize;
        let (x, y) = (self.digits(a, h), self.digits(b, h));
        let p = self.p as u64;
        let mut prod = vec![0u32; 2 * h - 1];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + u as u64 * v as u64) % p) as u32;
            }
        }
        let r = self.rem(&prod, modulus);
        self.pack(&r)
    }

    fn pow(&self, mut a: u32, mut e: u64, modulus: &[u32]) -> u32 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a, modulus);
            }
            a = self.mul(a, a, modulus);
            e >>= 1;
        }
        acc
    }

    fn has_order(&self, a: u32, order: u32, modulus: &[u32]) -> bool {
        let order = order as u64;
        self.pow(a, order, modulus) == 1
            && distinct_prime_factors(order)
                .into_iter()
                .all(|r| self.pow(a, order / r, modulus) != 1)
    }

    fn is_irreducible(&self, f: &[u32]) -> bool {
        let deg = f.len() - 1;
        for dd in 1..=deg / 2 {
            for low in 0..self.p.pow(dd as u32) {
                let mut g = self.digits(low, dd);
                g.push(1);
                if self.rem(f, &g).iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }

    fn smallest_irreducible(&self) -> Vec<u32> {
        let h = self.h as usize;
        (0..self.p.pow(self.h))
            .map(|low| {
                let mut f = self.digits(low, h);
                f.push(1);
                f
            })
            .find(|f| self.is_irreducible(f))
            .expect("irreducible polynomials exist in every degree")
    }
}
