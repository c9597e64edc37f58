//! The relation `x1 ~ x2` ("no member vanishes at exactly one of them"),
//! its connecting scalars, and the quotient space of classes.

use crate::error::{Error, Result};
use crate::funspace::{CozRing, Func, FunctionSpace};
use crate::gf::Elem;
use crate::limits::Limits;
use crate::space::PointSet;

/// Definitional check: for every member `f`, `f(x1) * f(x2) == 0` forces
/// both values to vanish. Enumerates all members.
pub fn related(a: &FunctionSpace, x1: usize, x2: usize, limits: &Limits) -> Result<bool> {
    let field = a.field();
    for u in a.codewords(limits)? {
        let v1 = a.evaluate(&u, x1)?;
        let v2 = a.evaluate(&u, x2)?;
        if field.mul(v1, v2).is_zero() && !(v1.is_zero() && v2.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Some(lambda)` with `column(x1) == lambda * column(x2)`, `lambda != 0`,
/// when the two points are related.
pub fn related_fast(a: &FunctionSpace, x1: usize, x2: usize) -> Option<Elem> {
    column_ratio(a, &a.column(x1), &a.column(x2))
}

/// The nonzero `c` with `lhs == c * rhs`, if any. Both vectors must be nonzero.
pub(crate) fn column_ratio(a: &FunctionSpace, lhs: &[Elem], rhs: &[Elem]) -> Option<Elem> {
    let field = a.field();
    let i = rhs.iter().position(|c| !c.is_zero())?;
    let c = field.div(lhs[i], rhs[i]).ok()?;
    if c.is_zero() {
        return None;
    }
    lhs.iter().zip(rhs).all(|(&l, &r)| l == field.mul(c, r)).then_some(c)
}

/// The partition of the points into `~`-classes.
///
/// Classes are ordered by their least member, which is the representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    // lambda(x, rep(class(x)))
    lambda_to_rep: Vec<Elem>,
}

impl Quotient {
    pub fn build(a: &FunctionSpace) -> Self {
        let n = a.len();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = vec![usize::MAX; n];
        let mut lambda_to_rep = vec![Elem::ONE; n];
        for x in 0..n {
            let col = a.column(x);
            let found = classes
                .iter()
                .enumerate()
                .find_map(|(c, members)| column_ratio(a, &col, &a.column(members[0])).map(|l| (c, l)));
            match found {
                Some((c, l)) => {
                    classes[c].push(x);
                    class_of[x] = c;
                    lambda_to_rep[x] = l;
                }
                None => {
                    class_of[x] = classes.len();
                    classes.push(vec![x]);
                }
            }
        }
        Quotient { classes, class_of, lambda_to_rep }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn rep(&self, class: usize) -> usize {
        self.classes[class][0]
    }

    /// The class as a point set of width `n`.
    pub fn class_set(&self, class: usize) -> PointSet {
        PointSet::from_points(self.class_of.len(), self.classes[class].iter().copied())
    }

    pub fn is_trivial(&self) -> bool {
        self.classes.len() == self.class_of.len()
    }

    /// `lambda(x, rep(class(x)))`.
    pub fn lambda_to_rep(&self, x: usize) -> Elem {
        self.lambda_to_rep[x]
    }

    #[cfg(test)]
    pub(crate) fn lambda_to_rep_mut(&mut self) -> &mut Vec<Elem> {
        &mut self.lambda_to_rep
    }

    /// The unique nonzero `lambda` with `f(x1) == lambda * f(x2)` for all `f`.
    pub fn lambda(&self, a: &FunctionSpace, x1: usize, x2: usize) -> Result<Elem> {
        if self.class_of[x1] != self.class_of[x2] {
            return Err(Error::NotRelated(x1, x2));
        }
        a.field().div(self.lambda_to_rep[x1], self.lambda_to_rep[x2])
    }

    /// Whether `s` is a union of classes.
    pub fn is_saturated(&self, s: &PointSet) -> bool {
        s.iter().all(|x| self.classes[self.class_of[x]].iter().all(|&y| s.contains(y)))
    }

    /// The smallest saturated superset of `s`.
    pub fn saturate(&self, s: &PointSet) -> PointSet {
        let mut out = s.clone();
        for x in s.iter() {
            for &y in &self.classes[self.class_of[x]] {
                out.insert(y);
            }
        }
        out
    }

    /// Union of the classes whose ids are the set bits of `mask`.
    pub fn union_of_classes(&self, mask: u64) -> PointSet {
        let mut s = PointSet::empty(self.class_of.len());
        for (c, members) in self.classes.iter().enumerate() {
            if mask >> c & 1 == 1 {
                for &x in members {
                    s.insert(x);
                }
            }
        }
        s
    }

    /// The image of `s` in the quotient, as class ids.
    pub fn project(&self, s: &PointSet) -> Vec<usize> {
        let mut out: Vec<usize> = s.iter().map(|x| self.class_of[x]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// A member with `f(x1) != 0` and `f(x2) == 0`.
pub fn separating_witness(a: &FunctionSpace, x1: usize, x2: usize) -> Result<Func> {
    if x1 >= a.len() || x2 >= a.len() {
        return Err(Error::UnknownPoint(x1.max(x2).to_string()));
    }
    if related_fast(a, x1, x2).is_some() {
        return Err(Error::PointsRelated(x1, x2));
    }
    let f = a
        .solve_values(&[(x1, Elem::ONE), (x2, Elem::ZERO)])
        .expect("unrelated points have independent evaluation functionals");
    Ok(f)
}

/// Disjoint ring members covering two disjoint saturated sets, if the ring
/// has them.
pub fn separate_in_ring(ring: &CozRing, k1: &PointSet, k2: &PointSet) -> Option<(PointSet, PointSet)> {
    let members = ring.members();
    members.iter().filter(|d1| k1.subset_of(d1) && d1.disjoint_from(k2)).find_map(|d1| {
        members.iter().find(|d2| k2.subset_of(d2) && d2.disjoint_from(d1)).map(|d2| (d1.clone(), d2.clone()))
    })
}
