//! Table-driven arithmetic in GF(p^m).
//!
//! Elements are encoded by their index: the coefficient vector of the residue
//! polynomial packed in base `p`, lowest degree in the least significant digit.
//! Index 0 is the additive identity and index 1 the multiplicative identity.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default bound on the field order.
pub const DEFAULT_MAX_ORDER: u64 = 256;
/// Hard upper bound on the field order; tables grow as `q^2`.
pub const MAX_ORDER: u64 = 4096;

/// An element of a finite field, by canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(pub u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    p: u32,
    m: u32,
    modulus: Vec<u32>,
    q: u32,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

/// A finite field GF(p^m) together with its arithmetic tables.
///
/// Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field").field("p", &self.0.p).field("m", &self.0.m).field("modulus", &self.0.modulus).finish()
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo the monic polynomial `b` over GF(p).
fn poly_rem(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        if lead != 0 {
            let shift = r.len() - 1 - db;
            for (i, &c) in b.iter().enumerate() {
                let t = (r[shift + i] + p - (lead * c) % p) % p;
                r[shift + i] = t;
            }
        }
        r.pop();
    }
    r
}

fn poly_mul(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Monic polynomial of degree `d` whose lower coefficients are the base-p digits of `t`.
fn monic_from_index(p: u32, d: u32, mut t: u64) -> Vec<u32> {
    let mut c = Vec::with_capacity(d as usize + 1);
    for _ in 0..d {
        c.push((t % p as u64) as u32);
        t /= p as u64;
    }
    c.push(1);
    c
}

/// Irreducibility by exhaustive trial division with every monic polynomial
/// of degree at most `m / 2`.
pub fn is_irreducible(p: u32, modulus: &[u32]) -> bool {
    let m = modulus.len() as u32 - 1;
    if m == 0 {
        return false;
    }
    for d in 1..=m / 2 {
        for t in 0..(p as u64).pow(d) {
            let divisor = monic_from_index(p, d, t);
            if poly_rem(p, modulus, &divisor).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The least irreducible monic polynomial of degree `m`, ordering candidates
/// by their value at `p` (higher-degree coefficients are more significant).
pub fn least_irreducible(p: u32, m: u32) -> Vec<u32> {
    (0..(p as u64).pow(m))
        .map(|t| monic_from_index(p, m, t))
        .find(|c| is_irreducible(p, c))
        .expect("irreducible polynomials exist in every degree")
}

impl Field {
    /// GF(p) for a prime `p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// GF(p^m). `modulus` lists coefficients lowest degree first; `None`
    /// picks [`least_irreducible`].
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Self> {
        Self::with_bound(p, m, modulus, DEFAULT_MAX_ORDER)
    }

    pub fn with_bound(p: u32, m: u32, modulus: Option<&[u32]>, bound: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let bound = bound.min(MAX_ORDER);
        let q = (p as u64).checked_pow(m).filter(|&q| q <= bound);
        let Some(q) = q else {
            return Err(Error::OrderTooLarge { p, m, bound });
        };
        let q = q as u32;
        let modulus = match modulus {
            None => least_irreducible(p, m),
            Some(given) => {
                let reducible = || Error::ReduciblePolynomial { p, m, modulus: given.to_vec() };
                if given.len() != m as usize + 1 || given.iter().any(|&c| c >= p) {
                    return Err(reducible());
                }
                let lead = given[m as usize];
                if lead == 0 {
                    return Err(reducible());
                }
                // normalize to monic
                let lead_inv = (1..p).find(|&x| (x * lead) % p == 1).unwrap();
                let monic: Vec<u32> = given.iter().map(|&c| (c * lead_inv) % p).collect();
                if !is_irreducible(p, &monic) {
                    return Err(reducible());
                }
                monic
            }
        };

        let digits = |mut idx: u32| -> Vec<u32> {
            (0..m)
                .map(|_| {
                    let d = idx % p;
                    idx /= p;
                    d
                })
                .collect()
        };
        let pack = |c: &[u32]| -> u16 { c.iter().rev().fold(0u32, |acc, &d| acc * p + d) as u16 };
        let polys: Vec<Vec<u32>> = (0..q).map(digits).collect();
        let qs = q as usize;
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        for a in 0..qs {
            for b in 0..qs {
                let sum: Vec<u32> = polys[a].iter().zip(&polys[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = pack(&sum);
                let mut prod = poly_rem(p, &poly_mul(p, &polys[a], &polys[b]), &modulus);
                prod.resize(m as usize, 0);
                mul[a * qs + b] = pack(&prod);
            }
        }
        let mut neg = vec![0u16; qs];
        let mut inv = vec![0u16; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u16;
            if a != 0 {
                inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap() as u16;
            }
        }
        Ok(Field(Arc::new(Tables { p, m, modulus, q, add, mul, neg, inv })))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    /// Monic modulus, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Checked conversion from an index.
    pub fn elem(&self, index: u64) -> Result<Elem> {
        if index < self.0.q as u64 {
            Ok(Elem(index as u16))
        } else {
            Err(Error::FieldMismatch { index, q: self.0.q })
        }
    }

    /// All elements in index order; the first two are 0 and 1.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.0.q as u16).map(Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + '_ {
        (1..self.0.q as u16).map(Elem)
    }

    #[inline]
    fn at(&self, a: Elem, b: Elem) -> usize {
        a.index() * self.0.q as usize + b.index()
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.0.add[self.at(a, b)])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.0.mul[self.at(a, b)])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.0.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(Elem(self.0.inv[a.index()]))
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Inverse of an element known to be nonzero.
    #[inline]
    pub(crate) fn inv_nz(&self, a: Elem) -> Elem {
        debug_assert!(!a.is_zero());
        Elem(self.0.inv[a.index()])
    }

    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter().zip(b).fold(Elem::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// `acc += c * v`, elementwise.
    pub fn axpy(&self, acc: &mut [Elem], c: Elem, v: &[Elem]) {
        if c.is_zero() {
            return;
        }
        for (a, &x) in acc.iter_mut().zip(v) {
            *a = self.add(*a, self.mul(c, x));
        }
    }

    pub fn scale(&self, c: Elem, v: &[Elem]) -> Vec<Elem> {
        v.iter().map(|&x| self.mul(c, x)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_char_two() {
        let f = Field::prime(2).unwrap();
        assert_eq!(f.add(Elem::ONE, Elem::ONE), Elem::ZERO);
        assert_eq!(f.neg(Elem::ONE), Elem::ONE);
        assert_eq!(f.elements().collect::<Vec<_>>(), vec![Elem(0), Elem(1)]);
    }

    #[test]
    fn gf3_and_gf5() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.mul(Elem(2), Elem(2)), Elem(1));
        assert_eq!(f3.elements().count(), 3);
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.inv(Elem(2)).unwrap(), Elem(3));
        assert_eq!(f5.div(Elem(1), Elem(0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn gf4_explicit_modulus() {
        let f = Field::new(2, 2, Some(&[1, 1, 1])).unwrap();
        let x = Elem(2);
        // x*x = x + 1
        assert_eq!(f.mul(x, x), Elem(3));
        assert_eq!(f.inv(x).unwrap(), Elem(3));
        // auto picks the same (only) irreducible quadratic
        assert_eq!(Field::new(2, 2, None).unwrap(), f);
    }

    #[test]
    fn auto_modulus_order() {
        assert_eq!(least_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(least_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(least_irreducible(5, 1), vec![0, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::prime(4), Err(Error::NonPrime(4)));
        assert!(matches!(Field::new(2, 2, Some(&[1, 0, 1])), Err(Error::ReduciblePolynomial { .. })));
        assert!(matches!(Field::new(2, 9, None), Err(Error::OrderTooLarge { .. })));
        assert!(matches!(Field::new(2, 2, Some(&[1, 1])), Err(Error::ReduciblePolynomial { .. })));
        assert_eq!(Field::new(3, 0, None), Err(Error::ZeroDegree));
    }

    #[test]
    fn non_monic_modulus_normalized() {
        // 2x^2 + 2 = 2(x^2 + 1) over GF(3)
        let f = Field::new(3, 2, Some(&[2, 0, 2])).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn elem_range_checked() {
        let f = Field::prime(3).unwrap();
        assert_eq!(f.elem(2).unwrap(), Elem(2));
        assert_eq!(f.elem(3), Err(Error::FieldMismatch { index: 3, q: 3 }));
    }

    #[test]
    fn prime_subfield_is_integer_arithmetic() {
        for (p, m) in [(2, 3), (3, 2), (5, 1), (7, 1)] {
            let f = Field::new(p, m, None).unwrap();
            for a in 0..p {
                for b in 0..p {
                    assert_eq!(f.add(Elem(a as u16), Elem(b as u16)), Elem(((a + b) % p) as u16));
                    assert_eq!(f.mul(Elem(a as u16), Elem(b as u16)), Elem(((a * b) % p) as u16));
                }
            }
        }
    }
}
