//! Finite measured point spaces and their subsets.

use std::collections::HashSet;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational used for measures and weights.
pub type Rational = Ratio<i128>;

/// Parses `"p/q"` or an integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().ok()?;
            let d: i128 = d.trim().parse().ok()?;
            if d == 0 {
                None
            } else {
                Some(Ratio::new(n, d))
            }
        }
        None => s.parse::<i128>().ok().map(Ratio::from_integer),
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// A finite set of labelled points with a strictly positive measure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSpace {
    labels: Vec<String>,
    measures: Vec<Rational>,
    // measures[i] == scaled[i] / denom
    scaled: Vec<i128>,
    denom: i128,
}

impl PointSpace {
    pub fn new(labels: Vec<String>, measures: Vec<Rational>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptySpace);
        }
        if labels.len() != measures.len() {
            return Err(Error::LengthMismatch { expected: labels.len(), found: measures.len() });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        for (l, m) in labels.iter().zip(&measures) {
            if *m <= Rational::zero() {
                return Err(Error::NonPositiveMeasure { label: l.clone() });
            }
        }
        let mut denom: i128 = 1;
        for m in &measures {
            let d = *m.denom();
            denom = (denom / gcd(denom, d)).checked_mul(d).ok_or(Error::MeasureOverflow)?;
        }
        let mut scaled = Vec::with_capacity(measures.len());
        for m in &measures {
            scaled.push(m.numer().checked_mul(denom / m.denom()).ok_or(Error::MeasureOverflow)?);
        }
        // every weight must fit
        scaled.iter().try_fold(0i128, |acc, &s| acc.checked_add(s)).ok_or(Error::MeasureOverflow)?;
        Ok(PointSpace { labels, measures, scaled, denom })
    }

    /// Counting measure on `n` points labelled `x1..xn`.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::labelled("x", n, vec![Rational::one(); n])
    }

    /// Points labelled `{prefix}1..{prefix}n` with the given measures.
    pub fn labelled(prefix: &str, n: usize, measures: Vec<Rational>) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("{prefix}{i}")).collect(), measures)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn measures(&self) -> &[Rational] {
        &self.measures
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    pub fn is_uniform(&self) -> bool {
        self.measures.windows(2).all(|w| w[0] == w[1])
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::empty(self.len())
    }

    pub fn full_set(&self) -> PointSet {
        PointSet::full(self.len())
    }

    /// Sum of the point measures over `s`.
    pub fn measure(&self, s: &PointSet) -> Result<Rational> {
        if s.width() != self.len() {
            return Err(Error::SpaceMismatch { left: self.len(), right: s.width() });
        }
        Ok(Ratio::new(self.scaled_measure(s), self.denom))
    }

    /// Measure scaled by the common denominator; exact and cheap.
    pub(crate) fn scaled_measure(&self, s: &PointSet) -> i128 {
        s.iter().map(|x| self.scaled[x]).sum()
    }

    pub(crate) fn scaled_at(&self, x: usize) -> i128 {
        self.scaled[x]
    }

    pub(crate) fn denom(&self) -> i128 {
        self.denom
    }

    /// The subspace on the points of `keep`, in original order.
    pub fn restrict(&self, keep: &PointSet) -> Result<PointSpace> {
        let idx: Vec<usize> = keep.iter().collect();
        PointSpace::new(
            idx.iter().map(|&i| self.labels[i].clone()).collect(),
            idx.iter().map(|&i| self.measures[i]).collect(),
        )
    }
}

/// A subset of the points of some [`PointSpace`], as a bitmask.
///
/// On a finite discrete space every subset is clopen and compact.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    width: usize,
    words: Vec<u64>,
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl PointSet {
    pub fn empty(width: usize) -> Self {
        PointSet { width, words: vec![0; width.div_ceil(64)] }
    }

    pub fn full(width: usize) -> Self {
        let mut s = Self::empty(width);
        for x in 0..width {
            s.insert(x);
        }
        s
    }

    pub fn from_points(width: usize, points: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(width);
        for x in points {
            s.insert(x);
        }
        s
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn insert(&mut self, x: usize) {
        assert!(x < self.width, "point {x} out of range {}", self.width);
        self.words[x / 64] |= 1 << (x % 64);
    }

    pub fn remove(&mut self, x: usize) {
        assert!(x < self.width, "point {x} out of range {}", self.width);
        self.words[x / 64] &= !(1 << (x % 64));
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.width && self.words[x / 64] & (1 << (x % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.width).filter(move |&x| self.contains(x))
    }

    fn check(&self, other: &PointSet) -> Result<()> {
        if self.width != other.width {
            Err(Error::SpaceMismatch { left: self.width, right: other.width })
        } else {
            Ok(())
        }
    }

    fn zip_with(&self, other: &PointSet, op: impl Fn(u64, u64) -> u64) -> PointSet {
        debug_assert_eq!(self.width, other.width);
        let mut s = PointSet {
            width: self.width,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect(),
        };
        s.mask_tail();
        s
    }

    fn mask_tail(&mut self) {
        let r = self.width % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        self.check(other)?;
        Ok(self.or(other))
    }

    pub fn intersection(&self, other: &PointSet) -> Result<PointSet> {
        self.check(other)?;
        Ok(self.and(other))
    }

    pub fn difference(&self, other: &PointSet) -> Result<PointSet> {
        self.check(other)?;
        Ok(self.zip_with(other, |a, b| a & !b))
    }

    pub fn complement(&self) -> PointSet {
        let mut s = PointSet { width: self.width, words: self.words.iter().map(|w| !w).collect() };
        s.mask_tail();
        s
    }

    pub fn is_subset(&self, other: &PointSet) -> Result<bool> {
        self.check(other)?;
        Ok(self.subset_of(other))
    }

    pub fn is_disjoint(&self, other: &PointSet) -> Result<bool> {
        self.check(other)?;
        Ok(self.disjoint_from(other))
    }

    // Unchecked variants for callers that already know the widths agree.
    pub(crate) fn or(&self, other: &PointSet) -> PointSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub(crate) fn and(&self, other: &PointSet) -> PointSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub(crate) fn subset_of(&self, other: &PointSet) -> bool {
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & !b == 0)
    }

    pub(crate) fn disjoint_from(&self, other: &PointSet) -> bool {
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & b == 0)
    }
}
