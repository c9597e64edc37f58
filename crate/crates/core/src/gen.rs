//! Seeded generators for small random instances: fields, measures, codes,
//! monomial maps and planted isometries. Identical seeds give identical
//! instances on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::funspace::FunctionSpace;
use crate::gf::{Elem, Field};
use crate::linalg::{self, Matrix};
use crate::linmap::LinMap;
use crate::macwilliams::MonomialMap;
use crate::space::{PointSpace, Rational};

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Fields of order 2, 3, 4 and 5.
pub fn small_fields() -> Vec<Field> {
    [(2, 1), (3, 1), (2, 2), (5, 1)]
        .into_iter()
        .map(|(p, m)| Field::new(p, m, None).expect("small fields exist"))
        .collect()
}

pub fn random_elem(rng: &mut Rng8, field: &Field) -> Elem {
    Elem(rng.gen_range(0..field.order()) as u16)
}

pub fn random_nonzero(rng: &mut Rng8, field: &Field) -> Elem {
    Elem(rng.gen_range(1..field.order()) as u16)
}

pub fn random_vector(rng: &mut Rng8, field: &Field, len: usize) -> Vec<Elem> {
    (0..len).map(|_| random_elem(rng, field)).collect()
}

/// Positive rationals `a/b` with `1 <= a <= 6`, `1 <= b <= 4`.
pub fn random_measures(rng: &mut Rng8, n: usize) -> Vec<Rational> {
    (0..n).map(|_| Rational::new(rng.gen_range(1..=6), rng.gen_range(1..=4))).collect()
}

pub fn uniform_measures(n: usize) -> Vec<Rational> {
    vec![Rational::from_integer(1); n]
}

/// A `k`-dimensional space on `n` points labelled `prefix1..prefixn`,
/// resampled until the generators are independent with no zero column.
pub fn random_code(rng: &mut Rng8, field: &Field, prefix: &str, measures: Vec<Rational>, k: usize) -> FunctionSpace {
    let n = measures.len();
    let space = PointSpace::labelled(prefix, n, measures).expect("generated measures are positive");
    loop {
        let rows: Matrix = (0..k).map(|_| random_vector(rng, field, n)).collect();
        if linalg::rank(field, &rows) != k {
            continue;
        }
        if let Ok(a) = FunctionSpace::new(field.clone(), space.clone(), rows, false) {
            return a;
        }
    }
}

/// Size and shape of generated codes.
#[derive(Debug, Clone)]
pub struct CodeShape {
    pub fields: Vec<Field>,
    pub max_n: usize,
    pub max_k: usize,
    pub uniform: bool,
}

impl CodeShape {
    /// `q` in {2, 3, 4, 5}, `n <= 8`, `k <= 4`, random positive measures.
    pub fn corpus() -> Self {
        CodeShape { fields: small_fields(), max_n: 8, max_k: 4, uniform: false }
    }

    pub fn sample(&self, rng: &mut Rng8) -> FunctionSpace {
        let field = self.fields.choose(rng).expect("at least one field").clone();
        let n = rng.gen_range(1..=self.max_n);
        let k = rng.gen_range(1..=self.max_k.min(n));
        let measures = if self.uniform { uniform_measures(n) } else { random_measures(rng, n) };
        random_code(rng, &field, "x", measures, k)
    }
}

/// `count` codes drawn from `shape` with a fresh generator seeded by `seed`.
pub fn corpus(seed: u64, count: usize, shape: &CodeShape) -> Vec<FunctionSpace> {
    let mut rng = rng(seed);
    (0..count).map(|_| shape.sample(&mut rng)).collect()
}

pub fn random_monomial(rng: &mut Rng8, field: &Field, n: usize) -> MonomialMap {
    let mut sigma: Vec<usize> = (0..n).collect();
    sigma.shuffle(rng);
    let w = (0..n).map(|_| random_nonzero(rng, field)).collect();
    MonomialMap::new(field, sigma, w).expect("a shuffled identity is a permutation")
}

/// The image of `a` under `m`: points `prefix1..` where `y_j` carries the
/// measure of `x_{sigma(j)}`, and the map `f -> (f(x_{sigma(j)}) w_j)_j`,
/// which is a Hamming isometry onto it.
pub fn plant(a: &FunctionSpace, m: &MonomialMap, prefix: &str) -> Result<LinMap> {
    let field = a.field();
    let measures = m.sigma().iter().map(|&s| a.space().measures()[s]).collect();
    let space = PointSpace::labelled(prefix, a.len(), measures)?;
    let images = a.basis().iter().map(|row| m.apply(field, row)).collect::<Result<Matrix>>()?;
    let b = FunctionSpace::new(field.clone(), space, images.clone(), false)?;
    LinMap::from_images(a.clone(), b, &images)
}

/// A random planted isometry out of `a`.
pub fn planted_isometry(rng: &mut Rng8, a: &FunctionSpace) -> (LinMap, MonomialMap) {
    let m = random_monomial(rng, a.field(), a.len());
    let h = plant(a, &m, "y").expect("monomial images of a valid code are valid");
    (h, m)
}

/// A random linear map between two spaces over the same field.
pub fn random_map(rng: &mut Rng8, a: &FunctionSpace, b: &FunctionSpace) -> Result<LinMap> {
    let matrix = (0..a.dim()).map(|_| random_vector(rng, a.field(), b.dim())).collect();
    LinMap::new(a.clone(), b.clone(), matrix)
}
