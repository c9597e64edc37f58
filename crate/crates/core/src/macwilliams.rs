//! The classical case: codes in `F^n` with the counting measure, monomial
//! equivalence, and weight-preserving isomorphisms found by brute force.
//!
//! Search orders are lexicographic and the least witness is always returned:
//! permutations first, then weight vectors (both with the first coordinate
//! most significant, field elements by index); isometries by their
//! coordinate matrix read row by row.

use itertools::Itertools;

use crate::decompose::{decompose, DecomposeOptions, Outcome};
use crate::error::{Error, Result};
use crate::funspace::FunctionSpace;
use crate::gf::{Elem, Field};
use crate::limits::{pow_sat, Limits};
use crate::linalg::{self, Matrix};
use crate::linmap::LinMap;
use crate::quotient::Quotient;

/// `(a_1, ..., a_n) -> (a_{sigma(1)} w_1, ..., a_{sigma(n)} w_n)`, zero-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialMap {
    sigma: Vec<usize>,
    w: Vec<Elem>,
}

impl MonomialMap {
    pub fn new(field: &Field, sigma: Vec<usize>, w: Vec<Elem>) -> Result<Self> {
        let n = sigma.len();
        if w.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: w.len() });
        }
        let mut seen = vec![false; n];
        for &s in &sigma {
            if s >= n || std::mem::replace(&mut seen[s], true) {
                return Err(Error::NotMonomial(format!("{sigma:?} is not a permutation")));
            }
        }
        for &c in &w {
            field.elem(c.0 as u64)?;
            if c.is_zero() {
                return Err(Error::NotMonomial("zero weight".into()));
            }
        }
        Ok(MonomialMap { sigma, w })
    }

    pub fn identity(n: usize) -> Self {
        MonomialMap { sigma: (0..n).collect(), w: vec![Elem::ONE; n] }
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn weights(&self) -> &[Elem] {
        &self.w
    }

    pub fn apply(&self, field: &Field, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), found: v.len() });
        }
        Ok(self.sigma.iter().zip(&self.w).map(|(&s, &w)| field.mul(v[s], w)).collect())
    }

    /// Whether the image of `c1` is exactly `c2`.
    pub fn maps_onto(&self, c1: &FunctionSpace, c2: &FunctionSpace) -> Result<bool> {
        if c1.dim() != c2.dim() || c2.len() != self.len() {
            return Ok(false);
        }
        let check = parity_check(c2);
        for row in c1.basis() {
            if !in_code(c2.field(), &check, &self.apply(c1.field(), row)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The map restricted to `c1`, as a linear map onto `c2`.
    pub fn restrict(&self, c1: &FunctionSpace, c2: &FunctionSpace) -> Result<LinMap> {
        let images = c1.basis().iter().map(|row| self.apply(c1.field(), row)).collect::<Result<Matrix>>()?;
        LinMap::from_images(c1.clone(), c2.clone(), &images)
    }
}

/// Rows `z` with `z . v = 0` for every codeword `v` and nothing else.
fn parity_check(c: &FunctionSpace) -> Matrix {
    linalg::left_kernel(c.field(), &c.columns(), c.dim())
}

fn in_code(field: &Field, check: &Matrix, v: &[Elem]) -> bool {
    check.iter().all(|z| field.dot(z, v).is_zero())
}

fn factorial_sat(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |acc, i| acc.saturating_mul(i))
}

fn comparable(c1: &FunctionSpace, c2: &FunctionSpace) -> Result<()> {
    if c1.field() != c2.field() {
        return Err(Error::DifferentFields);
    }
    if c1.len() != c2.len() {
        return Err(Error::LengthMismatch { expected: c1.len(), found: c2.len() });
    }
    Ok(())
}

/// Histogram of codeword weights (counting measure).
pub fn weight_distribution(c: &FunctionSpace, limits: &Limits) -> Result<Vec<u64>> {
    let mut hist = vec![0u64; c.len() + 1];
    for u in c.codewords(limits)? {
        hist[c.coz(&u).len()] += 1;
    }
    Ok(hist)
}

/// The least monomial map carrying `c1` onto `c2`, if any.
pub fn monomial_search(c1: &FunctionSpace, c2: &FunctionSpace, limits: &Limits) -> Result<Option<MonomialMap>> {
    comparable(c1, c2)?;
    if !c1.space().is_uniform() || !c2.space().is_uniform() {
        return Err(Error::NonUniformMeasure);
    }
    let field = c1.field();
    let n = c1.len();
    let q = field.order() as u64;
    limits.check_search(factorial_sat(n).saturating_mul(pow_sat(q - 1, n)))?;
    if c1.dim() != c2.dim() {
        return Ok(None);
    }
    if let (Ok(d1), Ok(d2)) = (weight_distribution(c1, limits), weight_distribution(c2, limits)) {
        if d1 != d2 {
            return Ok(None);
        }
    }
    let check = parity_check(c2);
    let nonzero: Vec<Elem> = field.nonzero().collect();
    for sigma in (0..n).permutations(n) {
        let permuted: Matrix = c1.basis().iter().map(|r| sigma.iter().map(|&s| r[s]).collect()).collect();
        let mut digits = vec![0usize; n];
        'weights: loop {
            let w: Vec<Elem> = digits.iter().map(|&d| nonzero[d]).collect();
            let ok = permuted.iter().all(|p| {
                let v: Vec<Elem> = p.iter().zip(&w).map(|(&a, &b)| field.mul(a, b)).collect();
                in_code(field, &check, &v)
            });
            if ok {
                return Ok(Some(MonomialMap { sigma, w }));
            }
            // odometer, last coordinate fastest
            for pos in (0..n).rev() {
                digits[pos] += 1;
                if digits[pos] < nonzero.len() {
                    continue 'weights;
                }
                digits[pos] = 0;
            }
            break;
        }
    }
    Ok(None)
}

fn general_linear_order(q: u64, k: usize) -> u128 {
    let qk = pow_sat(q, k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(qk - pow_sat(q, i)))
}

/// Coordinates of the `t`-th vector of length `k` in lexicographic order.
fn lex_vector(t: u64, k: usize, q: u64) -> Vec<Elem> {
    let mut out = vec![Elem::ZERO; k];
    let mut t = t;
    for j in (0..k).rev() {
        out[j] = Elem((t % q) as u16);
        t /= q;
    }
    out
}

/// The least invertible coordinate matrix whose induced map `c1 -> c2`
/// preserves every weight, if any.
///
/// Rows are fixed one at a time; a partial choice is abandoned as soon as a
/// member supported on the chosen basis vectors changes weight. Weight
/// preservation forces injectivity, so no separate rank test is needed.
pub fn isometry_search(c1: &FunctionSpace, c2: &FunctionSpace, limits: &Limits) -> Result<Option<LinMap>> {
    if c1.field() != c2.field() {
        return Err(Error::DifferentFields);
    }
    if c1.dim() != c2.dim() {
        return Ok(None);
    }
    let field = c1.field();
    let q = field.order() as u64;
    let k = c1.dim();
    limits.check_search(general_linear_order(q, k))?;
    let weights = |c: &FunctionSpace| -> Result<Vec<i128>> {
        Ok(c.codewords(limits)?.map(|u| c.weight_scaled(&c.values(&u))).collect())
    };
    let w1 = weights(c1)?;
    let w2 = weights(c2)?;
    let (d1, d2) = (c1.space().denom(), c2.space().denom());
    let same = |a: i128, b: i128| a * d2 == b * d1;
    let index = |coords: &[Elem]| coords.iter().rev().fold(0u64, |acc, c| acc * q + c.0 as u64);

    // prefix[i]: images of all u supported on the first i basis vectors,
    // indexed like the codeword enumeration of c1.
    let mut rows: Vec<Vec<Elem>> = Vec::with_capacity(k);
    let mut prefixes: Vec<Vec<Vec<Elem>>> = vec![vec![vec![Elem::ZERO; k]]];
    let mut next: Vec<u64> = vec![0];
    let total = pow_sat(q, k) as u64;
    while let Some(t) = next.last_mut() {
        if *t >= total {
            next.pop();
            if rows.pop().is_none() {
                break;
            }
            prefixes.pop();
            continue;
        }
        let candidate = lex_vector(*t, k, q);
        *t += 1;
        let depth = rows.len();
        let prefix = &prefixes[depth];
        let step = pow_sat(q, depth) as u64;
        let mut extended = prefix.clone();
        let mut ok = true;
        'outer: for c in field.nonzero() {
            for (idx, img) in prefix.iter().enumerate() {
                let mut image = img.clone();
                field.axpy(&mut image, c, &candidate);
                let u_index = idx as u64 + c.0 as u64 * step;
                if !same(w1[u_index as usize], w2[index(&image) as usize]) {
                    ok = false;
                    break 'outer;
                }
                extended.push(image);
            }
        }
        if !ok {
            continue;
        }
        // extended is ordered by (c, idx), matching u_index = idx + c * step
        rows.push(candidate);
        prefixes.push(extended);
        if rows.len() == k {
            return LinMap::new(c1.clone(), c2.clone(), rows).map(Some);
        }
        next.push(0);
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    pub monomial: Option<MonomialMap>,
    pub isometry: Option<LinMap>,
    /// Whether decomposing the found isometry recovers a monomial map onto
    /// `c2`; `None` when no isometry exists or a quotient is nontrivial.
    pub decompose_roundtrip: Option<bool>,
}

/// Runs both searches, which must agree, and round-trips the isometry
/// through [`decompose`].
pub fn equivalence_decide(c1: &FunctionSpace, c2: &FunctionSpace, limits: &Limits) -> Result<EquivalenceReport> {
    let monomial = monomial_search(c1, c2, limits)?;
    let isometry = isometry_search(c1, c2, limits)?;
    if monomial.is_some() != isometry.is_some() {
        return Err(Error::TheoremViolation(format!(
            "monomial search found {}, isometry search found {}",
            monomial.is_some(),
            isometry.is_some()
        )));
    }
    let decompose_roundtrip = match &isometry {
        Some(h) if Quotient::build(c1).is_trivial() && Quotient::build(c2).is_trivial() => {
            let outcome = decompose(h, DecomposeOptions::default(), limits)?;
            let recovered = match outcome {
                Outcome::Composition(d) if d.verified() => d.monomial_form(h)?.maps_onto(c1, c2)?,
                _ => false,
            };
            if !recovered {
                return Err(Error::TheoremViolation(
                    "isometry between codes did not decompose into a monomial map".into(),
                ));
            }
            Some(true)
        }
        _ => None,
    };
    Ok(EquivalenceReport { equivalent: monomial.is_some(), monomial, isometry, decompose_roundtrip })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linmap::CheckMode;
    use crate::space::PointSpace;

    fn e(v: &[u16]) -> Vec<Elem> {
        v.iter().map(|&x| Elem(x)).collect()
    }

    fn code(p: u32, rows: &[&[u16]]) -> FunctionSpace {
        FunctionSpace::new(
            Field::prime(p).unwrap(),
            PointSpace::uniform(rows[0].len()).unwrap(),
            rows.iter().map(|r| e(r)).collect(),
            false,
        )
        .unwrap()
    }

    #[test]
    fn apply_examples() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(MonomialMap::identity(3).apply(&f3, &e(&[1, 2, 0])).unwrap(), e(&[1, 2, 0]));
        let swap = MonomialMap::new(&f3, vec![1, 0], e(&[1, 1])).unwrap();
        assert_eq!(swap.apply(&f3, &e(&[1, 2])).unwrap(), e(&[2, 1]));
        let scale = MonomialMap::new(&f3, vec![0, 1], e(&[2, 2])).unwrap();
        assert_eq!(scale.apply(&f3, &e(&[1, 1])).unwrap(), e(&[2, 2]));
        assert_eq!(swap.apply(&f3, &e(&[1])), Err(Error::LengthMismatch { expected: 2, found: 1 }));
        assert!(MonomialMap::new(&f3, vec![0, 0], e(&[1, 1])).is_err());
        assert!(MonomialMap::new(&f3, vec![0, 1], e(&[1, 0])).is_err());
    }

    #[test]
    fn self_equivalence_is_identity() {
        let c = code(2, &[&[1, 1, 0, 1], &[0, 1, 1, 1]]);
        let lim = Limits::default();
        assert_eq!(monomial_search(&c, &c, &lim).unwrap(), Some(MonomialMap::identity(4)));
        let h = isometry_search(&c, &c, &lim).unwrap().unwrap();
        assert_eq!(h, LinMap::identity(c.clone()));
    }

    #[test]
    fn planted_pair() {
        let f3 = Field::prime(3).unwrap();
        let c1 = code(3, &[&[1, 0, 1, 2], &[0, 1, 1, 1]]);
        let plant = MonomialMap::new(&f3, vec![2, 0, 3, 1], e(&[2, 1, 1, 2])).unwrap();
        let rows: Matrix = c1.basis().iter().map(|r| plant.apply(&f3, r).unwrap()).collect();
        let c2 = FunctionSpace::new(f3, PointSpace::uniform(4).unwrap(), rows, false).unwrap();
        let lim = Limits::default();
        let t = monomial_search(&c1, &c2, &lim).unwrap().unwrap();
        assert!(t.maps_onto(&c1, &c2).unwrap());
        assert!(t.restrict(&c1, &c2).unwrap().is_isometry(CheckMode::Exact, &lim).unwrap().holds());
        let report = equivalence_decide(&c1, &c2, &lim).unwrap();
        assert!(report.equivalent);
        assert_eq!(report.decompose_roundtrip, Some(true));
    }

    #[test]
    fn different_weight_distributions() {
        let c1 = code(2, &[&[1, 1, 0], &[0, 1, 1]]);
        let c2 = code(2, &[&[1, 0, 0], &[0, 1, 1]]);
        let lim = Limits::default();
        assert_ne!(weight_distribution(&c1, &lim).unwrap(), weight_distribution(&c2, &lim).unwrap());
        let report = equivalence_decide(&c1, &c2, &lim).unwrap();
        assert!(!report.equivalent);
        assert!(report.isometry.is_none());
    }

    #[test]
    fn search_guards() {
        let c = code(2, &[&[1, 1, 1, 1, 1, 1, 1]]);
        let tight = Limits { max_search: 100, ..Limits::default() };
        assert!(matches!(monomial_search(&c, &c, &tight), Err(Error::SearchTooLarge { .. })));
    }

    #[test]
    fn lex_vectors() {
        assert_eq!(lex_vector(1, 3, 2), e(&[0, 0, 1]));
        assert_eq!(lex_vector(4, 3, 2), e(&[1, 0, 0]));
        assert_eq!(general_linear_order(2, 2), 6);
        assert_eq!(general_linear_order(3, 2), 48);
    }
}
