//! Independent reference implementations used by the integration tests.
//! Nothing here calls the library's linear algebra, weight or predicate code;
//! field arithmetic goes through `Field` only after the field tests have
//! checked it against `PolyField`.

#![allow(dead_code)]

use std::collections::BTreeSet;

use hamming_iso::{Elem, Field, FunctionSpace, Rational};

/// GF(p^m) as polynomials over Z/p reduced by a monic modulus, with
/// elements packed base `p`, lowest degree least significant.
pub struct PolyField {
    pub p: u32,
    pub modulus: Vec<u32>,
}

impl PolyField {
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.degree() as u32)
    }

    pub fn unpack(&self, mut x: u32) -> Vec<u32> {
        (0..self.degree())
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    pub fn pack(&self, coeffs: &[u32]) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (a, b) = (self.unpack(a), self.unpack(b));
        self.pack(&a.iter().zip(&b).map(|(x, y)| (x + y) % self.p).collect::<Vec<_>>())
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let (a, b) = (self.unpack(a), self.unpack(b));
        let m = self.degree();
        let mut prod = vec![0u32; 2 * m];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce from the top, using x^m = -(modulus without its leading term)
        for d in (m..2 * m).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (k, &mk) in self.modulus[..m].iter().enumerate() {
                let sub = c * mk % self.p;
                prod[d - m + k] = (prod[d - m + k] + self.p - sub) % self.p;
            }
        }
        self.pack(&prod[..m])
    }
}

/// All coefficient vectors of length `k` over `q` symbols, first coordinate
/// slowest.
pub fn all_vectors(q: u32, k: usize) -> Vec<Vec<Elem>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v: Vec<Elem>| {
                (0..q).map(move |c| {
                    let mut w = v.clone();
                    w.push(Elem(c as u16));
                    w
                })
            })
            .collect();
    }
    out
}

/// `u . G`, computed entry by entry.
pub fn combine(field: &Field, u: &[Elem], rows: &[Vec<Elem>]) -> Vec<Elem> {
    let n = rows.first().map_or(0, Vec::len);
    (0..n).map(|x| u.iter().zip(rows).fold(Elem::ZERO, |acc, (&c, r)| field.add(acc, field.mul(c, r[x])))).collect()
}

/// Every member of the space as a value vector, in coefficient order.
pub fn members(a: &FunctionSpace) -> Vec<Vec<Elem>> {
    all_vectors(a.field().order(), a.dim()).iter().map(|u| combine(a.field(), u, a.basis())).collect()
}

pub fn support_of(v: &[Elem]) -> BTreeSet<usize> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(x, _)| x).collect()
}

pub fn weight(a: &FunctionSpace, v: &[Elem]) -> Rational {
    support_of(v).into_iter().map(|x| a.space().measures()[x]).sum()
}

pub fn sub(field: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| field.sub(x, y)).collect()
}

pub fn add(field: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
}

/// Whether `a == c * b` for some nonzero `c`.
pub fn proportional(field: &Field, a: &[Elem], b: &[Elem]) -> bool {
    field.nonzero().any(|c| a.iter().zip(b).all(|(&x, &y)| x == field.mul(c, y)))
}

/// Whether `v` lies in the row space, by exhaustive enumeration.
pub fn in_span(a: &FunctionSpace, v: &[Elem]) -> bool {
    members(a).iter().any(|m| m.as_slice() == v)
}

/// Closure of the cozero sets under pairwise unions and intersections.
pub fn ring(a: &FunctionSpace) -> BTreeSet<BTreeSet<usize>> {
    let mut ring: BTreeSet<BTreeSet<usize>> = members(a).iter().map(|v| support_of(v)).collect();
    loop {
        let mut next = ring.clone();
        for s in &ring {
            for t in &ring {
                next.insert(s.union(t).copied().collect());
                next.insert(s.intersection(t).copied().collect());
            }
        }
        if next.len() == ring.len() {
            return ring;
        }
        ring = next;
    }
}

/// The controllability condition for one `(f, D1, D2)`, straight from the
/// definition: some ring member `U` with `D1 ⊆ U ⊆ X \ D2` and some member
/// `g` agreeing with `f` on `D1` and vanishing on `Z(f) ∪ (X \ U)`.
pub fn control_feasible(
    a: &FunctionSpace,
    ring: &BTreeSet<BTreeSet<usize>>,
    f: &[Elem],
    d1: &BTreeSet<usize>,
    d2: &BTreeSet<usize>,
) -> bool {
    let all = members(a);
    let n = a.len();
    ring.iter().filter(|u| d1.is_subset(u) && u.is_disjoint(d2)).any(|u| {
        all.iter().any(|g| {
            (0..n).all(|x| {
                if d1.contains(&x) {
                    g[x] == f[x]
                } else if f[x].is_zero() || !u.contains(&x) {
                    g[x].is_zero()
                } else {
                    true
                }
            })
        })
    })
}

/// Controllability by the definition, over all members and ring pairs.
pub fn controllable(a: &FunctionSpace) -> bool {
    let ring = ring(a);
    members(a).iter().all(|f| {
        ring.iter()
            .all(|d1| ring.iter().filter(|d2| d1.is_disjoint(d2)).all(|d2| control_feasible(a, &ring, f, d1, d2)))
    })
}
