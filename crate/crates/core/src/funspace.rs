//! Linear spaces of functions `X -> F` given by a generator matrix.
//!
//! A [`FunctionSpace`] stores its generators in reduced row-echelon form, so
//! two spaces over the same points are equal exactly when their bases are.
//! A member function is addressed by its coordinate vector in that basis
//! ([`Func`]).

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::limits::{pow_sat, Limits};
use crate::linalg::{self, Matrix};
use crate::space::{PointSet, PointSpace, Rational};

/// A member of a [`FunctionSpace`], by coordinates in its reduced basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Func {
    pub coeffs: Vec<Elem>,
}

impl Func {
    pub fn new(coeffs: Vec<Elem>) -> Self {
        Func { coeffs }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionSpace {
    field: Field,
    space: PointSpace,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl FunctionSpace {
    /// Row-reduces `rows` into a canonical basis.
    ///
    /// Every point must carry some nonzero function. With `normalize` set,
    /// points where all functions vanish are dropped from the space instead
    /// of being rejected.
    pub fn new(field: Field, space: PointSpace, rows: Matrix, normalize: bool) -> Result<Self> {
        let n = space.len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::WidthMismatch { row, expected: n, found: r.len() });
            }
            for &x in r {
                field.elem(x.0 as u64)?;
            }
        }
        let (basis, _) = linalg::rref(&field, rows);
        if basis.is_empty() {
            return Err(Error::ZeroSpace);
        }
        let support = PointSet::from_points(n, (0..n).filter(|&x| basis.iter().any(|r| !r[x].is_zero())));
        let (space, basis) = if support.len() == n {
            (space, basis)
        } else if normalize {
            let keep: Vec<usize> = support.iter().collect();
            let basis = basis.iter().map(|r| keep.iter().map(|&x| r[x]).collect()).collect();
            (space.restrict(&support)?, basis)
        } else {
            let x = (0..n).find(|&x| !support.contains(x)).unwrap();
            return Err(Error::ZeroColumn { label: space.label(x).to_string() });
        };
        let (basis, pivots) = linalg::rref(&field, basis);
        Ok(FunctionSpace { field, space, basis, pivots })
    }

    /// The space of all functions `X -> F`.
    pub fn full(field: Field, space: PointSpace) -> Self {
        let n = space.len();
        FunctionSpace { field, space, basis: linalg::identity(n), pivots: (0..n).collect() }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn space(&self) -> &PointSpace {
        &self.space
    }

    /// Dimension `k`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Number of points `n`.
    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Values of the basis functions at `x`, i.e. the evaluation functional.
    pub fn column(&self, x: usize) -> Vec<Elem> {
        self.basis.iter().map(|r| r[x]).collect()
    }

    pub fn columns(&self) -> Matrix {
        linalg::transpose(&self.basis, self.len())
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.len()
    }

    pub fn func(&self, coeffs: Vec<Elem>) -> Result<Func> {
        if coeffs.len() != self.dim() {
            return Err(Error::CoeffsMismatch { expected: self.dim(), found: coeffs.len() });
        }
        for &c in &coeffs {
            self.field.elem(c.0 as u64)?;
        }
        Ok(Func { coeffs })
    }

    pub fn zero(&self) -> Func {
        Func { coeffs: vec![Elem::ZERO; self.dim()] }
    }

    pub fn basis_func(&self, i: usize) -> Func {
        let mut coeffs = vec![Elem::ZERO; self.dim()];
        coeffs[i] = Elem::ONE;
        Func { coeffs }
    }

    /// Pointwise values of `u`.
    pub fn values(&self, u: &Func) -> Vec<Elem> {
        linalg::vec_mat(&self.field, &u.coeffs, &self.basis, self.len())
    }

    /// The member with the given values, if there is one.
    pub fn func_from_values(&self, values: &[Elem]) -> Result<Func> {
        if values.len() != self.len() {
            return Err(Error::WidthMismatch { row: 0, expected: self.len(), found: values.len() });
        }
        // coordinates of an RREF basis are read off at the pivots
        let coeffs: Vec<Elem> = self.pivots.iter().map(|&p| values[p]).collect();
        let u = Func { coeffs };
        if self.values(&u) == values {
            Ok(u)
        } else {
            Err(Error::NotInSpace)
        }
    }

    pub fn evaluate(&self, u: &Func, x: usize) -> Result<Elem> {
        if x >= self.len() {
            return Err(Error::UnknownPoint(x.to_string()));
        }
        Ok(self.field.dot(&u.coeffs, &self.column(x)))
    }

    pub fn add(&self, u: &Func, v: &Func) -> Func {
        Func { coeffs: u.coeffs.iter().zip(&v.coeffs).map(|(&a, &b)| self.field.add(a, b)).collect() }
    }

    pub fn sub(&self, u: &Func, v: &Func) -> Func {
        Func { coeffs: u.coeffs.iter().zip(&v.coeffs).map(|(&a, &b)| self.field.sub(a, b)).collect() }
    }

    pub fn scale(&self, c: Elem, u: &Func) -> Func {
        Func { coeffs: self.field.scale(c, &u.coeffs) }
    }

    /// Pointwise product of two members. Not a member in general; returned as values.
    pub fn product_values(&self, u: &Func, v: &Func) -> Vec<Elem> {
        self.values(u).iter().zip(self.values(v)).map(|(&a, b)| self.field.mul(a, b)).collect()
    }

    pub fn coz(&self, u: &Func) -> PointSet {
        coz_of_values(&self.values(u))
    }

    pub fn zero_set(&self, u: &Func) -> PointSet {
        self.coz(u).complement()
    }

    pub fn weight(&self, u: &Func) -> Rational {
        self.space.measure(&self.coz(u)).expect("coz has the space width")
    }

    /// Weight scaled by the space's common denominator.
    pub(crate) fn weight_scaled(&self, values: &[Elem]) -> i128 {
        values.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(x, _)| self.space.scaled_at(x)).sum()
    }

    pub fn distance(&self, u: &Func, v: &Func) -> Rational {
        self.weight(&self.sub(u, v))
    }

    /// `q^k`, saturating.
    pub fn codeword_count(&self) -> u128 {
        pow_sat(self.field.order() as u64, self.dim())
    }

    /// The member with the given enumeration index (coefficient 0 is the
    /// least significant base-q digit).
    pub fn codeword(&self, mut index: u64) -> Func {
        let q = self.field.order() as u64;
        let coeffs = (0..self.dim())
            .map(|_| {
                let d = Elem((index % q) as u16);
                index /= q;
                d
            })
            .collect();
        Func { coeffs }
    }

    pub fn codeword_index(&self, u: &Func) -> u64 {
        let q = self.field.order() as u64;
        u.coeffs.iter().rev().fold(0, |acc, c| acc * q + c.0 as u64)
    }

    /// All `q^k` members in index order.
    pub fn codewords(&self, limits: &Limits) -> Result<impl Iterator<Item = Func> + '_> {
        let count = self.codeword_count();
        limits.check_enum(count)?;
        Ok((0..count as u64).map(move |i| self.codeword(i)))
    }

    /// Basis (as coefficient vectors) of the members vanishing on `s`.
    pub fn vanishing_on(&self, s: &PointSet) -> Matrix {
        let cols: Matrix = s.iter().map(|x| self.column(x)).collect();
        if cols.is_empty() {
            return linalg::identity(self.dim());
        }
        // u . column(x) == 0 for x in s
        linalg::left_kernel(&self.field, &linalg::transpose(&cols, self.dim()), cols.len())
    }

    /// A member taking the prescribed values, if one exists.
    pub fn solve_values(&self, constraints: &[(usize, Elem)]) -> Option<Func> {
        if constraints.is_empty() {
            return Some(self.zero());
        }
        let rows: Matrix = self.basis.iter().map(|r| constraints.iter().map(|&(x, _)| r[x]).collect()).collect();
        let target: Vec<Elem> = constraints.iter().map(|&(_, v)| v).collect();
        linalg::solve_left(&self.field, &rows, &target).map(Func::new)
    }

    /// Closure of `{coz(f) : f in A}` under finite unions and intersections.
    pub fn coz_ring(&self, limits: &Limits) -> Result<CozRing> {
        let mut generators = HashSet::new();
        for u in self.codewords(limits)? {
            generators.insert(self.coz(&u));
            if generators.len() > limits.max_ring {
                return Err(Error::RingTooLarge { bound: limits.max_ring });
            }
        }
        CozRing::close(generators.into_iter().collect(), limits.max_ring)
    }

    /// Decides the controllability condition by exhaustive search over
    /// members `f` and disjoint ring pairs `(D1, D2)`.
    pub fn is_controllable(&self, limits: &Limits) -> Result<Controllability> {
        let ring = self.coz_ring(limits)?;
        self.is_controllable_with(&ring, limits)
    }

    pub fn is_controllable_with(&self, ring: &CozRing, limits: &Limits) -> Result<Controllability> {
        let members = ring.members();
        // Constraints only shrink as U grows, so the largest ring member
        // avoiding D2 is feasible whenever any admissible U is.
        let widest: Vec<PointSet> = members
            .iter()
            .map(|d2| members.iter().filter(|d| d.disjoint_from(d2)).fold(self.space.empty_set(), |acc, d| acc.or(d)))
            .collect();
        for f in self.codewords(limits)? {
            let values = self.values(&f);
            let coz = coz_of_values(&values);
            for d1 in members {
                if d1.disjoint_from(&coz) {
                    // f' = 0 works
                    continue;
                }
                let mut seen: HashMap<&PointSet, bool> = HashMap::new();
                for (d2, u) in members.iter().zip(&widest) {
                    if !d1.disjoint_from(d2) {
                        continue;
                    }
                    let ok = *seen.entry(u).or_insert_with(|| self.control_extension(&values, &coz, d1, u).is_some());
                    if !ok {
                        return Ok(Controllability::NotControllable(ControlWitness {
                            f,
                            d1: d1.clone(),
                            d2: d2.clone(),
                        }));
                    }
                }
            }
        }
        Ok(Controllability::Controllable)
    }

    /// Some `f'` with `f' = f` on `d1` and `f' = 0` on `Z(f)` and outside `u`.
    pub fn control_extension(&self, f_values: &[Elem], coz_f: &PointSet, d1: &PointSet, u: &PointSet) -> Option<Func> {
        let constraints: Vec<(usize, Elem)> = (0..self.len())
            .filter_map(|x| {
                if d1.contains(x) {
                    Some((x, f_values[x]))
                } else if !coz_f.contains(x) || !u.contains(x) {
                    Some((x, Elem::ZERO))
                } else {
                    None
                }
            })
            .collect();
        self.solve_values(&constraints)
    }

    /// The first admissible `U` (in ring order) together with an extension `f'`,
    /// when one exists for `(f, D1, D2)`.
    pub fn control_certificate(
        &self,
        ring: &CozRing,
        f: &Func,
        d1: &PointSet,
        d2: &PointSet,
    ) -> Option<(PointSet, Func)> {
        let values = self.values(f);
        let coz = coz_of_values(&values);
        let outside_d2 = d2.complement();
        ring.members()
            .iter()
            .filter(|u| d1.subset_of(u) && u.subset_of(&outside_d2))
            .find_map(|u| self.control_extension(&values, &coz, d1, u).map(|g| (u.clone(), g)))
    }
}

pub fn coz_of_values(values: &[Elem]) -> PointSet {
    PointSet::from_points(values.len(), values.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(x, _)| x))
}

/// Outcome of [`FunctionSpace::is_controllable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Controllability {
    Controllable,
    NotControllable(ControlWitness),
}

impl Controllability {
    pub fn holds(&self) -> bool {
        matches!(self, Controllability::Controllable)
    }
}

/// A member `f` and disjoint ring sets `(d1, d2)` admitting no `(f', U)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlWitness {
    pub f: Func,
    pub d1: PointSet,
    pub d2: PointSet,
}

/// The ring generated by the cozero sets of a function space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CozRing {
    members: Vec<PointSet>,
}

fn ring_order(a: &PointSet, b: &PointSet) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter()))
}

impl CozRing {
    /// Closes `generators` under pairwise unions and intersections.
    ///
    /// Intersections are closed first; unions of an intersection-closed
    /// family are then closed under both operations.
    pub fn close(generators: Vec<PointSet>, max_members: usize) -> Result<Self> {
        let too_large = || Error::RingTooLarge { bound: max_members };
        let mut gens: Vec<PointSet> = generators;
        gens.sort_by(ring_order);
        gens.dedup();

        let mut meets: HashSet<PointSet> = gens.iter().cloned().collect();
        let mut work: Vec<PointSet> = gens.clone();
        while let Some(e) = work.pop() {
            for g in &gens {
                let m = e.and(g);
                if meets.insert(m.clone()) {
                    if meets.len() > max_members {
                        return Err(too_large());
                    }
                    work.push(m);
                }
            }
        }
        let meets: Vec<PointSet> = meets.into_iter().collect();
        let mut all: HashSet<PointSet> = meets.iter().cloned().collect();
        let mut work = meets.clone();
        while let Some(e) = work.pop() {
            for a in &meets {
                let j = e.or(a);
                if all.insert(j.clone()) {
                    if all.len() > max_members {
                        return Err(too_large());
                    }
                    work.push(j);
                }
            }
        }
        let mut members: Vec<PointSet> = all.into_iter().collect();
        members.sort_by(ring_order);
        Ok(CozRing { members })
    }

    /// Members ordered by size, then lexicographically by point indices.
    pub fn members(&self) -> &[PointSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &PointSet) -> bool {
        self.members.binary_search_by(|m| ring_order(m, s)).is_ok()
    }

    pub fn is_closed(&self) -> bool {
        self.members.iter().all(|a| self.members.iter().all(|b| self.contains(&a.or(b)) && self.contains(&a.and(b))))
    }
}
