//! The built-in invariant suite behind `hamiso selftest`.
//!
//! Every check runs on seeded generated instances and counts failures; a
//! report with zero failures everywhere is a pass. Library errors other
//! than guard violations are counted as failures, not propagated.

use serde::Serialize;

use crate::decompose::{decompose, DecomposeOptions, Outcome};
use crate::error::{Error, Result};
use crate::funspace::{Controllability, FunctionSpace};
use crate::gen::{self, CodeShape};
use crate::gf::{Elem, Field};
use crate::limits::Limits;
use crate::linmap::{disjointness_additivity, CheckMode, LinMap};
use crate::quotient::{related, related_fast, Quotient};
use crate::space::PointSpace;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub instances: usize,
    pub failures: usize,
    /// Description of the first failing instance.
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelftestConfig {
    pub seed: u64,
    /// Number of generated codes per corpus check.
    pub codes: usize,
    /// Number of planted maps per map check.
    pub maps: usize,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig { seed: 0, codes: 20, maps: 40 }
    }
}

struct Tally {
    result: CheckResult,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { result: CheckResult { name, instances: 0, failures: 0, first_failure: None } }
    }

    /// Records one instance. Guard errors abort the suite; other errors
    /// count as failures.
    fn record(&mut self, label: impl FnOnce() -> String, outcome: Result<bool>) -> Result<()> {
        self.result.instances += 1;
        let failure = match outcome {
            Ok(true) => None,
            Ok(false) => Some(label()),
            Err(
                e @ (Error::EnumerationTooLarge { .. } | Error::RingTooLarge { .. } | Error::SearchTooLarge { .. }),
            ) => return Err(e),
            Err(e) => Some(format!("{}: {e}", label())),
        };
        if let Some(f) = failure {
            self.result.failures += 1;
            self.result.first_failure.get_or_insert(f);
        }
        Ok(())
    }
}

fn describe(a: &FunctionSpace) -> String {
    format!("GF({}) code n={} k={}", a.field().order(), a.len(), a.dim())
}

/// Every field with `q <= bound`.
pub fn fields_up_to(bound: u32) -> Vec<Field> {
    let mut out = Vec::new();
    for p in (2..=bound).filter(|&p| crate::gf::is_prime(p)) {
        let mut q = p;
        let mut m = 1;
        while q <= bound {
            out.push(Field::new(p, m, None).expect("order within the default bound"));
            q *= p;
            m += 1;
        }
    }
    out
}

fn field_axioms(f: &Field) -> bool {
    let all: Vec<Elem> = f.elements().collect();
    let (zero, one) = (Elem::ZERO, Elem::ONE);
    let units = all.iter().all(|&a| {
        f.add(a, zero) == a
            && f.mul(a, one) == a
            && f.add(a, f.neg(a)) == zero
            && (a.is_zero() || f.inv(a).map(|i| f.mul(a, i) == one).unwrap_or(false))
    });
    units
        && all.iter().all(|&a| {
            all.iter().all(|&b| {
                f.add(a, b) == f.add(b, a)
                    && f.mul(a, b) == f.mul(b, a)
                    && all.iter().all(|&c| {
                        f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                            && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                            && f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
                    })
            })
        })
}

/// Symmetry, the triangle inequality and `d(f, g) = 0 <=> f = g`. Since
/// `d(f, g) = wt(f - g)`, the triangle inequality is subadditivity of `wt`.
fn metric_axioms(a: &FunctionSpace, limits: &Limits) -> Result<bool> {
    let words: Vec<_> = a.codewords(limits)?.collect();
    limits.check_enum((words.len() as u128).pow(2))?;
    for f in &words {
        for g in &words {
            let d = a.distance(f, g);
            if d != a.distance(g, f) || (d == 0.into()) != (f == g) {
                return Ok(false);
            }
            if a.weight(&a.add(f, g)) > a.weight(f) + a.weight(g) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn quotient_agrees(a: &FunctionSpace, limits: &Limits) -> Result<bool> {
    let q = Quotient::build(a);
    let field = a.field();
    for x1 in 0..a.len() {
        for x2 in 0..a.len() {
            let slow = related(a, x1, x2, limits)?;
            if slow != related_fast(a, x1, x2).is_some() || slow != (q.class_of(x1) == q.class_of(x2)) {
                return Ok(false);
            }
            if !slow {
                continue;
            }
            let l12 = q.lambda(a, x1, x2)?;
            if q.lambda(a, x2, x1)? != field.inv(l12)? {
                return Ok(false);
            }
            for x in q.classes()[q.class_of(x1)].iter().copied() {
                if l12 != field.mul(q.lambda(a, x1, x)?, q.lambda(a, x, x2)?) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn additivity(a: &FunctionSpace, limits: &Limits) -> Result<bool> {
    let words: Vec<_> = a.codewords(limits)?.collect();
    limits.check_enum((words.len() as u128).pow(2))?;
    for f in &words {
        for g in &words {
            disjointness_additivity(a, f, g)?;
        }
    }
    Ok(true)
}

fn isometry_and_separating(h: &LinMap, limits: &Limits) -> Result<bool> {
    Ok(h.is_isometry(CheckMode::Exact, limits)?.holds() && h.is_separating(CheckMode::Exact, limits)?.separating)
}

fn decomposes(h: &LinMap, limits: &Limits) -> Result<bool> {
    Ok(match decompose(h, DecomposeOptions::default(), limits)? {
        Outcome::Composition(d) => d.verified() && d.verify(h, limits).full_check != Some(false),
        Outcome::Refuted(_) => false,
    })
}

fn controllability_certified(a: &FunctionSpace, limits: &Limits) -> Result<bool> {
    let ring = a.coz_ring(limits)?;
    Ok(match a.is_controllable_with(&ring, limits)? {
        Controllability::Controllable => true,
        Controllability::NotControllable(w) => a.control_certificate(&ring, &w.f, &w.d1, &w.d2).is_none(),
    })
}

pub fn run(config: SelftestConfig, limits: &Limits) -> Result<SelftestReport> {
    let mut checks = Vec::new();

    let mut t = Tally::new("field_axioms");
    for f in fields_up_to(16) {
        t.record(|| format!("GF({})", f.order()), Ok(field_axioms(&f)))?;
    }
    checks.push(t.result);

    let codes = gen::corpus(config.seed, config.codes, &CodeShape::corpus());
    type CodeCheck = fn(&FunctionSpace, &Limits) -> Result<bool>;
    let per_code: [(&'static str, CodeCheck); 4] = [
        ("metric_axioms", metric_axioms),
        ("quotient_oracle", quotient_agrees),
        ("additivity", additivity),
        ("controllability_witness", controllability_certified),
    ];
    for (name, check) in per_code {
        let mut t = Tally::new(name);
        for a in &codes {
            t.record(|| describe(a), check(a, limits))?;
        }
        checks.push(t.result);
    }

    let mut rng = gen::rng(config.seed ^ 0x5eed);
    let mut iso = Tally::new("planted_isometry_separating");
    let mut dec = Tally::new("planted_isometry_decomposes");
    for i in 0..config.maps {
        let a = &codes[i % codes.len()];
        let (h, _) = gen::planted_isometry(&mut rng, a);
        iso.record(|| describe(a), isometry_and_separating(&h, limits))?;
        let controllable = a.is_controllable(limits)?.holds();
        if controllable {
            dec.record(|| describe(a), decomposes(&h, limits))?;
        }
    }
    checks.push(iso.result);
    checks.push(dec.result);

    let mut full = Tally::new("full_space_controllable");
    let mut round = Tally::new("monomial_round_trip");
    for field in gen::small_fields() {
        for n in 1..=4 {
            let space = PointSpace::uniform(n)?;
            let a = FunctionSpace::full(field.clone(), space);
            full.record(|| describe(&a), a.is_controllable(limits).map(|c| c.holds()))?;
            let m = gen::random_monomial(&mut rng, &field, n);
            let outcome =
                gen::plant(&a, &m, "y").and_then(|h| match decompose(&h, DecomposeOptions::default(), limits)? {
                    Outcome::Composition(d) => Ok(d.monomial_form(&h)? == m),
                    Outcome::Refuted(_) => Ok(false),
                });
            round.record(|| describe(&a), outcome)?;
        }
    }
    checks.push(full.result);
    checks.push(round.result);

    let passed = checks.iter().all(|c| c.failures == 0);
    Ok(SelftestReport { seed: config.seed, passed, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields_listed() {
        let orders: Vec<u32> = fields_up_to(16).iter().map(Field::order).collect();
        assert_eq!(orders, vec![2, 4, 8, 16, 3, 9, 5, 7, 11, 13]);
    }

    #[test]
    fn suite_passes() {
        let report = run(SelftestConfig { seed: 1, codes: 6, maps: 6 }, &Limits::default()).unwrap();
        assert!(report.passed, "{report:?}");
        assert!(report.checks.iter().all(|c| c.instances > 0), "{report:?}");
    }
}
