//! Supports of point functionals and the weighted-composition form of a
//! linear map.
//!
//! For a map `H: A -> B` and a point `y` of `B`, the functional
//! `phi_y = delta_y ∘ H` on `A` has a smallest support. When that support is a
//! single class `[x]` of the domain quotient, `phi_y = omega(y) * delta_x`
//! and `Hf(y) = omega(y) * f(x)` for every `f`. Collecting `h(y) = [x]` and
//! `omega(y)` over all `y` writes `H` as a weighted composition operator.
//!
//! On finite spaces the evaluation kernel `{f : f(x) = 0}` has codimension
//! one, so `[x]` supports `phi_y` exactly when `phi_y` is a nonzero multiple
//! of `delta_x`. That proportionality test is the production path; the
//! exhaustive search over saturated sets is kept as a diagnostic oracle.

use crate::error::{Error, Result};
use crate::funspace::{coz_of_values, FunctionSpace};
use crate::gf::Elem;
use crate::limits::{pow_sat, Limits};
use crate::linalg;
use crate::linmap::LinMap;
use crate::macwilliams::MonomialMap;
use crate::quotient::{column_ratio, Quotient};
use crate::space::PointSet;

/// A linear functional on `A`: `phi(u . G) = u . coeffs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functional {
    pub coeffs: Vec<Elem>,
}

impl Functional {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// `delta_y ∘ H`.
pub fn functional_at(h: &LinMap, y: usize) -> Functional {
    let images = h.image_basis_values();
    Functional { coeffs: images.iter().map(|row| row[y]).collect() }
}

/// `delta_x` on `A`.
pub fn evaluation_functional(a: &FunctionSpace, x: usize) -> Functional {
    Functional { coeffs: a.column(x) }
}

/// Whether the saturated set `s` supports `phi`: every member vanishing on
/// `s` is killed by `phi`. Equivalently, `phi` lies in the span of the
/// evaluation functionals at the points of `s`.
pub fn is_support_of(a: &FunctionSpace, quotient: &Quotient, phi: &Functional, s: &PointSet) -> Result<bool> {
    if !quotient.is_saturated(s) {
        return Err(Error::NotSaturated);
    }
    let mut cols: Vec<Vec<Elem>> = s.iter().map(|x| a.column(x)).collect();
    let base = linalg::rank(a.field(), &cols);
    cols.push(phi.coeffs.clone());
    Ok(linalg::rank(a.field(), &cols) == base)
}

pub fn is_support(h: &LinMap, quotient: &Quotient, y: usize, s: &PointSet) -> Result<bool> {
    is_support_of(h.domain(), quotient, &functional_at(h, y), s)
}

/// A point `y` whose functional is proportional to no evaluation functional
/// of the domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    pub witness_y: usize,
    pub functional: Functional,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinimalSupport {
    /// `phi_y = omega * delta_rep(class)`.
    Class {
        class: usize,
        omega: Elem,
    },
    Refuted(Refutation),
}

fn class_support(a: &FunctionSpace, quotient: &Quotient, y: usize, phi: Functional) -> Result<MinimalSupport> {
    if phi.is_zero() {
        return Err(Error::ZeroFunctional(y));
    }
    let mut hits = (0..quotient.num_classes())
        .filter_map(|c| column_ratio(a, &phi.coeffs, &a.column(quotient.rep(c))).map(|w| (c, w)));
    match hits.next() {
        Some((class, omega)) => {
            // distinct classes have non-proportional columns
            debug_assert!(hits.next().is_none());
            Ok(MinimalSupport::Class { class, omega })
        }
        None => Ok(MinimalSupport::Refuted(Refutation { witness_y: y, functional: phi })),
    }
}

/// The class of the domain quotient supporting `phi_y`, or a refutation.
pub fn minimal_support(h: &LinMap, quotient: &Quotient, y: usize) -> Result<MinimalSupport> {
    class_support(h.domain(), quotient, y, functional_at(h, y))
}

/// Every inclusion-minimal saturated support of `phi`, by exhaustive search
/// over unions of classes.
pub fn minimal_supports_exhaustive(
    a: &FunctionSpace,
    quotient: &Quotient,
    phi: &Functional,
    limits: &Limits,
) -> Result<Vec<PointSet>> {
    let c = quotient.num_classes();
    limits.check_enum(pow_sat(2, c))?;
    if c >= 64 {
        return Err(Error::EnumerationTooLarge { requested: pow_sat(2, c), bound: limits.max_enum });
    }
    let masks = 1u64 << c;
    let supports: Vec<bool> = (0..masks)
        .map(|mask| is_support_of(a, quotient, phi, &quotient.union_of_classes(mask)))
        .collect::<Result<_>>()?;
    // supports are closed upwards, so minimality needs single-class removals only
    Ok((0..masks)
        .filter(|&mask| supports[mask as usize])
        .filter(|&mask| (0..c).all(|i| mask >> i & 1 == 0 || !supports[(mask & !(1 << i)) as usize]))
        .map(|mask| quotient.union_of_classes(mask))
        .collect())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DecomposeOptions {
    /// Confirm every fast-path answer against the exhaustive support search.
    pub diagnostic: bool,
}

/// `Hf(y) = omega(y) * f(rep(h(y)))` for every member `f` and point `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    quotient: Quotient,
    h: Vec<usize>,
    omega: Vec<Elem>,
    verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Composition(Decomposition),
    Refuted(Refutation),
}

impl Outcome {
    pub fn composition(&self) -> Option<&Decomposition> {
        match self {
            Outcome::Composition(d) => Some(d),
            Outcome::Refuted(_) => None,
        }
    }
}

/// Extracts the support map and weights of `h`, or the least point `y` whose
/// functional has no single-class support.
pub fn decompose(h: &LinMap, options: DecomposeOptions, limits: &Limits) -> Result<Outcome> {
    let a = h.domain();
    let quotient = Quotient::build(a);
    let images = h.image_basis_values();
    let mut support = Vec::with_capacity(h.codomain().len());
    let mut omega = Vec::with_capacity(h.codomain().len());
    for y in 0..h.codomain().len() {
        let phi = Functional { coeffs: images.iter().map(|row| row[y]).collect() };
        let found = class_support(a, &quotient, y, phi.clone())?;
        if options.diagnostic {
            let minimal = minimal_supports_exhaustive(a, &quotient, &phi, limits)?;
            let agrees = match &found {
                MinimalSupport::Class { class, .. } => minimal.contains(&quotient.class_set(*class)),
                MinimalSupport::Refuted(_) => minimal.iter().all(|s| quotient.project(s).len() != 1),
            };
            if !agrees {
                return Err(Error::TheoremViolation(format!(
                    "fast and exhaustive support searches disagree at point {y}"
                )));
            }
        }
        match found {
            MinimalSupport::Class { class, omega: w } => {
                support.push(class);
                omega.push(w);
            }
            MinimalSupport::Refuted(r) => return Ok(Outcome::Refuted(r)),
        }
    }
    let mut d = Decomposition { quotient, h: support, omega, verified: false };
    d.verified = d.verify(h, limits).ok;
    Ok(Outcome::Composition(d))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub ok: bool,
    /// First failing `(basis row, y)`.
    pub failure: Option<(usize, usize)>,
    /// Reconstruction and the vanishing corollary on every member, when
    /// enumeration is within the limits.
    pub full_check: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HProperties {
    pub constant_on_classes: bool,
    pub cozero_inclusion: bool,
    pub onto: bool,
    pub class_bijection: bool,
}

impl Decomposition {
    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    /// `h(y)` as a class id of the domain quotient.
    pub fn h(&self, y: usize) -> usize {
        self.h[y]
    }

    pub fn support_map(&self) -> &[usize] {
        &self.h
    }

    /// Representative of `h(y)`, the least point of the class.
    pub fn rep(&self, y: usize) -> usize {
        self.quotient.rep(self.h[y])
    }

    /// `omega(rep(h(y)), y)`.
    pub fn omega(&self, y: usize) -> Elem {
        self.omega[y]
    }

    pub fn omegas(&self) -> &[Elem] {
        &self.omega
    }

    pub fn verified(&self) -> bool {
        self.verified
    }

    /// `omega(x, y)` for any `x` in `h(y)`.
    pub fn omega_at(&self, a: &FunctionSpace, x: usize, y: usize) -> Option<Elem> {
        let rep = self.rep(y);
        let l = self.quotient.lambda(a, rep, x).ok()?;
        Some(a.field().mul(self.omega[y], l))
    }

    /// Checks `Hf(y) = omega(y) f(rep(h(y)))` on the basis (enough by
    /// linearity) and, when feasible, on every member together with
    /// `Hf(y) = 0 => f = 0 on h(y)`.
    pub fn verify(&self, h: &LinMap, limits: &Limits) -> VerifyReport {
        let a = h.domain();
        let field = a.field();
        let images = h.image_basis_values();
        let ny = h.codomain().len();
        if self.h.len() != ny || self.omega.len() != ny {
            return VerifyReport { ok: false, failure: None, full_check: None };
        }
        let failure = (0..a.dim()).find_map(|i| {
            (0..ny).find(|&y| images[i][y] != field.mul(self.omega[y], a.basis()[i][self.rep(y)])).map(|y| (i, y))
        });
        let full_check = a.codewords(limits).ok().map(|mut words| {
            words.all(|u| {
                let fv = a.values(&u);
                let hv = h.image_values(&u);
                (0..ny).all(|y| {
                    let rebuilt = hv[y] == field.mul(self.omega[y], fv[self.rep(y)]);
                    let vanishing =
                        !hv[y].is_zero() || self.quotient.classes()[self.h[y]].iter().all(|&x| fv[x].is_zero());
                    rebuilt && vanishing
                })
            })
        });
        let ok = failure.is_none() && self.omega.iter().all(|w| !w.is_zero()) && full_check != Some(false);
        VerifyReport { ok, failure, full_check }
    }

    pub fn h_properties(&self, h: &LinMap) -> HProperties {
        let a = h.domain();
        let qy = Quotient::build(h.codomain());
        let constant_on_classes =
            qy.classes().iter().all(|members| members.iter().all(|&y| self.h[y] == self.h[members[0]]));
        let cozero_inclusion = (0..a.dim()).all(|i| {
            let f = a.basis_func(i);
            let coz_f = a.coz(&f);
            coz_of_values(&h.image_values(&f))
                .iter()
                .all(|y| self.quotient.classes()[self.h[y]].iter().all(|&x| coz_f.contains(x)))
        });
        let mut hit = vec![false; self.quotient.num_classes()];
        for &c in &self.h {
            hit[c] = true;
        }
        let onto = hit.iter().all(|&b| b);
        let class_bijection = constant_on_classes && onto && qy.num_classes() == self.quotient.num_classes();
        HProperties { constant_on_classes, cozero_inclusion, onto, class_bijection }
    }

    /// `omega(x', y') = lambda(y', y) omega(x, y) lambda(x, x')` for all
    /// `y' ~ y` and `x, x'` in `h(y)`, using the given codomain quotient.
    pub fn omega_cocycle_check(&self, h: &LinMap, qy: &Quotient) -> bool {
        let a = h.domain();
        let b = h.codomain();
        let field = a.field();
        for members in qy.classes() {
            for &y in members {
                for &y2 in members {
                    if self.h[y] != self.h[y2] {
                        return false;
                    }
                    let class = &self.quotient.classes()[self.h[y]];
                    let Ok(l_y) = qy.lambda(b, y2, y) else { return false };
                    for &x in class {
                        for &x2 in class {
                            let (Some(w), Some(w2), Ok(l_x)) =
                                (self.omega_at(a, x, y), self.omega_at(a, x2, y2), self.quotient.lambda(a, x, x2))
                            else {
                                return false;
                            };
                            if w2 != field.mul(field.mul(l_y, w), l_x) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// The classical permutation-and-scaling form, when both quotients are
    /// trivial and `h` is a bijection.
    pub fn monomial_form(&self, h: &LinMap) -> Result<MonomialMap> {
        let n = h.domain().len();
        if !self.quotient.is_trivial() {
            return Err(Error::NotMonomial("nontrivial domain quotient".into()));
        }
        if !Quotient::build(h.codomain()).is_trivial() {
            return Err(Error::NotMonomial("nontrivial codomain quotient".into()));
        }
        if h.codomain().len() != n {
            return Err(Error::NotMonomial(format!("domain has {n} points, codomain has {}", h.codomain().len())));
        }
        let sigma: Vec<usize> = (0..n).map(|y| self.rep(y)).collect();
        let mut seen = vec![false; n];
        for &x in &sigma {
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotMonomial("support map is not a bijection".into()));
            }
        }
        let t = MonomialMap::new(h.domain().field(), sigma, self.omega.clone())?;
        let images = h.image_basis_values();
        for (i, row) in h.domain().basis().iter().enumerate() {
            if t.apply(h.domain().field(), row)? != images[i] {
                return Err(Error::TheoremViolation(format!("monomial form disagrees with the map on basis row {i}")));
            }
        }
        Ok(t)
    }
}
