//! Linear maps between function spaces and their isometry and
//! disjointness-preservation predicates.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::funspace::{coz_of_values, Func, FunctionSpace};
use crate::gf::Elem;
use crate::limits::{pow_sat, Limits};
use crate::linalg::{self, Matrix};
use crate::space::PointSet;

/// `H: A -> B`, where row `i` of `matrix` holds the coordinates of the image
/// of the `i`-th basis function of `A` in the basis of `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinMap {
    domain: FunctionSpace,
    codomain: FunctionSpace,
    matrix: Matrix,
}

/// How a predicate is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    /// Every member (or pair of members) of the domain.
    Exact,
    /// `samples` random draws from a generator seeded with `seed`. A `true`
    /// verdict is only probabilistic.
    Sampled { seed: u64, samples: u64 },
}

impl CheckMode {
    pub fn is_exact(&self) -> bool {
        matches!(self, CheckMode::Exact)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsometryReport {
    pub injective: bool,
    pub surjective: bool,
    pub weight_preserving: bool,
    /// A member whose weight changes under the map.
    pub witness: Option<Func>,
    pub exact: bool,
}

impl IsometryReport {
    /// Hamming isometry: a weight-preserving linear isomorphism.
    pub fn holds(&self) -> bool {
        self.injective && self.surjective && self.weight_preserving
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatingReport {
    pub separating: bool,
    /// Members with disjoint cozero sets whose images overlap.
    pub witness: Option<(Func, Func)>,
    pub exact: bool,
}

impl LinMap {
    pub fn new(domain: FunctionSpace, codomain: FunctionSpace, matrix: Matrix) -> Result<Self> {
        if domain.field() != codomain.field() {
            return Err(Error::DifferentFields);
        }
        let expected = (domain.dim(), codomain.dim());
        let cols = matrix.first().map_or(expected.1, Vec::len);
        if matrix.len() != expected.0 || matrix.iter().any(|r| r.len() != expected.1) {
            return Err(Error::ShapeMismatch { expected, found: (matrix.len(), cols) });
        }
        for &x in matrix.iter().flatten() {
            domain.field().elem(x.0 as u64)?;
        }
        Ok(LinMap { domain, codomain, matrix })
    }

    /// The map sending basis function `i` of the domain to the member of the
    /// codomain with values `images[i]`.
    pub fn from_images(domain: FunctionSpace, codomain: FunctionSpace, images: &[Vec<Elem>]) -> Result<Self> {
        if images.len() != domain.dim() {
            return Err(Error::ShapeMismatch {
                expected: (domain.dim(), codomain.len()),
                found: (images.len(), images.first().map_or(0, Vec::len)),
            });
        }
        let matrix =
            images.iter().map(|v| codomain.func_from_values(v).map(|u| u.coeffs)).collect::<Result<Matrix>>()?;
        LinMap::new(domain, codomain, matrix)
    }

    pub fn identity(space: FunctionSpace) -> Self {
        let k = space.dim();
        LinMap { domain: space.clone(), codomain: space, matrix: linalg::identity(k) }
    }

    pub fn domain(&self) -> &FunctionSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &FunctionSpace {
        &self.codomain
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, u: &Func) -> Result<Func> {
        if u.coeffs.len() != self.domain.dim() {
            return Err(Error::CoeffsMismatch { expected: self.domain.dim(), found: u.coeffs.len() });
        }
        Ok(Func::new(linalg::vec_mat(self.domain.field(), &u.coeffs, &self.matrix, self.codomain.dim())))
    }

    /// Values of `Hu` on the codomain points.
    pub fn image_values(&self, u: &Func) -> Vec<Elem> {
        let v = linalg::vec_mat(self.domain.field(), &u.coeffs, &self.matrix, self.codomain.dim());
        self.codomain.values(&Func::new(v))
    }

    /// `(H g_i)(y)` for every domain basis function `g_i` and codomain point `y`.
    pub fn image_basis_values(&self) -> Matrix {
        linalg::mat_mul(self.domain.field(), &self.matrix, self.codomain.basis(), self.codomain.len())
    }

    fn rank(&self) -> usize {
        linalg::rank(self.domain.field(), &self.matrix)
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.domain.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.codomain.dim()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &LinMap) -> Result<LinMap> {
        if self.codomain != other.domain {
            return Err(Error::SpaceMismatch { left: self.codomain.len(), right: other.domain.len() });
        }
        let m = linalg::mat_mul(self.domain.field(), &self.matrix, &other.matrix, other.codomain.dim());
        LinMap::new(self.domain.clone(), other.codomain.clone(), m)
    }

    pub fn inverse(&self) -> Option<LinMap> {
        if !self.is_bijective() {
            return None;
        }
        let inv = linalg::inverse(self.domain.field(), &self.matrix)?;
        Some(LinMap { domain: self.codomain.clone(), codomain: self.domain.clone(), matrix: inv })
    }

    fn same_weight(&self, domain_values: &[Elem], image_values: &[Elem]) -> bool {
        let wx = self.domain.weight_scaled(domain_values);
        let wy = self.codomain.weight_scaled(image_values);
        let dx = self.domain.space().denom();
        let dy = self.codomain.space().denom();
        match (wx.checked_mul(dy), wy.checked_mul(dx)) {
            (Some(a), Some(b)) => a == b,
            _ => num_rational::Ratio::new(wx, dx) == num_rational::Ratio::new(wy, dy),
        }
    }

    /// The weight clause alone: `wt(Hf) == wt(f)` for the checked members.
    pub fn preserves_weight(&self, mode: CheckMode, limits: &Limits) -> Result<Option<Func>> {
        let check = |u: Func| {
            let v = self.domain.values(&u);
            let w = self.image_values(&u);
            (!self.same_weight(&v, &w)).then_some(u)
        };
        match mode {
            CheckMode::Exact => Ok(self.domain.codewords(limits)?.find_map(check)),
            CheckMode::Sampled { seed, samples } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let q = self.domain.field().order() as u16;
                Ok((0..samples).find_map(|_| {
                    let u = Func::new((0..self.domain.dim()).map(|_| Elem(rng.gen_range(0..q))).collect());
                    check(u)
                }))
            }
        }
    }

    /// Hamming isometry check: bijective and weight-preserving, with the
    /// failing clause reported separately.
    pub fn is_isometry(&self, mode: CheckMode, limits: &Limits) -> Result<IsometryReport> {
        let witness = self.preserves_weight(mode, limits)?;
        Ok(IsometryReport {
            injective: self.is_injective(),
            surjective: self.is_surjective(),
            weight_preserving: witness.is_none(),
            witness,
            exact: mode.is_exact(),
        })
    }

    /// Disjointness preservation: `coz(f) ∩ coz(g) = ∅` implies
    /// `coz(Hf) ∩ coz(Hg) = ∅`.
    ///
    /// In exact mode the witness is the least violating pair `(i, j)`,
    /// `i < j`, in enumeration order.
    pub fn is_separating(&self, mode: CheckMode, limits: &Limits) -> Result<SeparatingReport> {
        let a = &self.domain;
        match mode {
            CheckMode::Exact => {
                let words: Vec<Func> = a.codewords(limits)?.collect();
                let cozs: Vec<PointSet> = words.iter().map(|u| a.coz(u)).collect();
                let images: Vec<PointSet> = words.iter().map(|u| coz_of_values(&self.image_values(u))).collect();
                let q = a.field().order() as u64;
                let mut partners: HashMap<PointSet, Vec<u64>> = HashMap::new();
                let mut work: u128 = 0;
                for (i, coz) in cozs.iter().enumerate() {
                    let list = partners.entry(coz.clone()).or_insert_with(|| {
                        let basis = a.vanishing_on(coz);
                        span_indices(a, &basis, q)
                    });
                    work += list.len() as u128;
                    limits.check_search(work)?;
                    let bad = list
                        .iter()
                        .copied()
                        .filter(|&j| j as usize > i && !images[i].disjoint_from(&images[j as usize]))
                        .min();
                    if let Some(j) = bad {
                        return Ok(SeparatingReport {
                            separating: false,
                            witness: Some((words[i].clone(), words[j as usize].clone())),
                            exact: true,
                        });
                    }
                }
                Ok(SeparatingReport { separating: true, witness: None, exact: true })
            }
            CheckMode::Sampled { seed, samples } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let q = a.field().order() as u16;
                for _ in 0..samples {
                    let f = Func::new((0..a.dim()).map(|_| Elem(rng.gen_range(0..q))).collect());
                    let basis = a.vanishing_on(&a.coz(&f));
                    let mut g = vec![Elem::ZERO; a.dim()];
                    for row in &basis {
                        a.field().axpy(&mut g, Elem(rng.gen_range(0..q)), row);
                    }
                    let g = Func::new(g);
                    let cf = coz_of_values(&self.image_values(&f));
                    let cg = coz_of_values(&self.image_values(&g));
                    if !cf.disjoint_from(&cg) {
                        return Ok(SeparatingReport { separating: false, witness: Some((f, g)), exact: false });
                    }
                }
                Ok(SeparatingReport { separating: true, witness: None, exact: false })
            }
        }
    }
}

/// Enumeration indices of every member of the span of `basis`.
fn span_indices(a: &FunctionSpace, basis: &[Vec<Elem>], q: u64) -> Vec<u64> {
    let field = a.field();
    let count = q.pow(basis.len() as u32);
    (0..count)
        .map(|mut t| {
            let mut u = vec![Elem::ZERO; a.dim()];
            for row in basis {
                field.axpy(&mut u, Elem((t % q) as u16), row);
                t /= q;
            }
            a.codeword_index(&Func::new(u))
        })
        .collect()
}

/// Both sides of the additivity lemma: `coz(f) ∩ coz(g) = ∅` iff
/// `wt(f + g) = wt(f) + wt(g)`. Returns whether they hold; disagreement is
/// reported as a theorem violation.
pub fn disjointness_additivity(a: &FunctionSpace, f: &Func, g: &Func) -> Result<bool> {
    let disjoint = a.coz(f).disjoint_from(&a.coz(g));
    let additive = a.weight(&a.add(f, g)) == a.weight(f) + a.weight(g);
    if disjoint != additive {
        return Err(Error::TheoremViolation(format!(
            "disjoint cozero sets = {disjoint} but additive weight = {additive}"
        )));
    }
    Ok(disjoint)
}

/// Number of unordered member pairs, for guards and reports.
pub fn pair_count(a: &FunctionSpace) -> u128 {
    let n = pow_sat(a.field().order() as u64, a.dim());
    n.saturating_mul(n.saturating_sub(1)) / 2
}
