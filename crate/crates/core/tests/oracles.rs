//! Library predicates against brute-force reference implementations on
//! small random instances.

mod common;

use proptest::prelude::*;

use hamming_iso::decompose::{decompose, DecomposeOptions, Outcome};
use hamming_iso::gen::{self, CodeShape};
use hamming_iso::macwilliams::{isometry_search, monomial_search};
use hamming_iso::{CheckMode, Elem, Field, FunctionSpace, Limits, LinMap, PointSpace};

use common::*;

fn small_shape() -> CodeShape {
    CodeShape { fields: gen::small_fields(), max_n: 5, max_k: 3, uniform: false }
}

fn image(h: &LinMap, u: &[Elem]) -> Vec<Elem> {
    let field = h.domain().field();
    combine(field, &combine(field, u, h.matrix()), h.codomain().basis())
}

fn separating_by_pairs(h: &LinMap) -> bool {
    let a = h.domain();
    let us = all_vectors(a.field().order(), a.dim());
    let vals: Vec<_> =
        us.iter().map(|u| (support_of(&combine(a.field(), u, a.basis())), support_of(&image(h, u)))).collect();
    vals.iter().all(|(sf, hf)| vals.iter().all(|(sg, hg)| !sf.is_disjoint(sg) || hf.is_disjoint(hg)))
}

fn weight_preserving(h: &LinMap) -> bool {
    let a = h.domain();
    all_vectors(a.field().order(), a.dim())
        .iter()
        .all(|u| weight(a, &combine(a.field(), u, a.basis())) == weight(h.codomain(), &image(h, u)))
}

#[test]
fn fields_match_polynomial_arithmetic() {
    for (p, m) in [(2, 5), (2, 6), (3, 3), (5, 2), (7, 2), (2, 8), (17, 1)] {
        let field = Field::new(p, m, None).unwrap();
        let poly = PolyField { p, modulus: field.modulus().to_vec() };
        for a in field.elements() {
            for b in field.elements() {
                assert_eq!(field.mul(a, b).0 as u32, poly.mul(a.0 as u32, b.0 as u32), "GF({p}^{m})");
                assert_eq!(field.add(a, b).0 as u32, poly.add(a.0 as u32, b.0 as u32), "GF({p}^{m})");
            }
        }
    }
}

#[test]
fn gf4_table() {
    // x^2 = x + 1; index 2 is x, index 3 is x + 1
    let f = Field::new(2, 2, None).unwrap();
    let mul: Vec<Vec<u16>> = (0..4).map(|a| (0..4).map(|b| f.mul(Elem(a), Elem(b)).0).collect()).collect();
    assert_eq!(mul, vec![vec![0, 0, 0, 0], vec![0, 1, 2, 3], vec![0, 2, 3, 1], vec![0, 3, 1, 2]]);
}

#[test]
fn controllability_matches_definition() {
    let lim = Limits::default();
    let mut seen = [0usize; 2];
    for a in gen::corpus(41, 40, &small_shape()) {
        let verdict = a.is_controllable(&lim).unwrap().holds();
        assert_eq!(verdict, controllable(&a), "{:?}", a.basis());
        seen[verdict as usize] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn ring_matches_closure() {
    let lim = Limits::default();
    for a in gen::corpus(42, 30, &small_shape()) {
        let ours: std::collections::BTreeSet<_> = a
            .coz_ring(&lim)
            .unwrap()
            .members()
            .iter()
            .map(|s| s.iter().collect::<std::collections::BTreeSet<usize>>())
            .collect();
        assert_eq!(ours, ring(&a));
    }
}

#[test]
fn isometry_search_matches_exhaustive_matrices() {
    let lim = Limits::default();
    let mut rng = gen::rng(43);
    let mut found = 0;
    for a in gen::corpus(
        44,
        25,
        &CodeShape { fields: gen::small_fields()[..2].to_vec(), max_n: 4, max_k: 2, uniform: false },
    ) {
        let b = if found % 2 == 0 { gen::planted_isometry(&mut rng, &a).0.codomain().clone() } else { a.clone() };
        let k = a.dim();
        let q = a.field().order();
        // least weight-preserving invertible matrix, rows read first to last
        let expected = all_vectors(q, k * k).into_iter().find_map(|flat| {
            let m: Vec<Vec<Elem>> = flat.chunks(k).map(<[Elem]>::to_vec).collect();
            let h = LinMap::new(a.clone(), b.clone(), m).ok()?;
            (h.is_bijective() && weight_preserving(&h)).then_some(h)
        });
        let got = isometry_search(&a, &b, &lim).unwrap();
        assert_eq!(got.as_ref().map(LinMap::matrix), expected.as_ref().map(LinMap::matrix));
        found += got.is_some() as usize;
    }
    assert!(found > 0);
}

#[test]
fn monomial_search_matches_exhaustive() {
    let lim = Limits::default();
    let mut rng = gen::rng(45);
    let uniform = CodeShape { fields: gen::small_fields(), max_n: 4, max_k: 2, uniform: true };
    let codes = gen::corpus(46, 16, &uniform);
    for (i, a) in codes.iter().enumerate() {
        let b = if i % 2 == 0 {
            let m = gen::random_monomial(&mut rng, a.field(), a.len());
            gen::plant(a, &m, "x").unwrap().codomain().clone()
        } else {
            gen::random_code(&mut rng, a.field(), "x", gen::uniform_measures(a.len()), a.dim())
        };
        let n = a.len();
        let field = a.field();
        let exists = itertools::Itertools::permutations(0..n, n).any(|sigma| {
            all_vectors(field.order() - 1, n).iter().any(|w| {
                let w: Vec<Elem> = w.iter().map(|c| Elem(c.0 + 1)).collect();
                a.basis().iter().all(|row| {
                    let v: Vec<Elem> = (0..n).map(|j| field.mul(row[sigma[j]], w[j])).collect();
                    in_span(&b, &v)
                })
            })
        });
        assert_eq!(monomial_search(a, &b, &lim).unwrap().is_some(), exists);
        if i % 2 == 0 {
            assert!(exists);
        }
    }
}

#[test]
fn decompose_matches_proportionality() {
    let lim = Limits::default();
    let mut rng = gen::rng(47);
    let mut composed = 0;
    for a in gen::corpus(48, 40, &small_shape()) {
        let measures = gen::random_measures(&mut rng, 3);
        let b = gen::random_code(&mut rng, a.field(), "y", measures, a.dim().min(3));
        let h = gen::random_map(&mut rng, &a, &b).unwrap();
        let field = a.field();
        let columns: Vec<Vec<Elem>> = (0..a.len()).map(|x| a.column(x)).collect();
        let phis: Vec<Vec<Elem>> = (0..b.len())
            .map(|y| {
                (0..a.dim())
                    .map(|i| {
                        let mut u = vec![Elem::ZERO; a.dim()];
                        u[i] = Elem::ONE;
                        image(&h, &u)[y]
                    })
                    .collect()
            })
            .collect();
        if phis.iter().any(|phi| phi.iter().all(|c| c.is_zero())) {
            continue;
        }
        let expected = phis.iter().all(|phi| columns.iter().any(|c| proportional(field, phi, c)));
        let outcome = decompose(&h, DecomposeOptions { diagnostic: true }, &lim).unwrap();
        assert_eq!(matches!(outcome, Outcome::Composition(_)), expected);
        if let Outcome::Composition(d) = outcome {
            composed += 1;
            assert!(d.verified());
        }
    }
    assert!(composed > 0);
}

#[test]
fn isometries_compose_and_invert() {
    let lim = Limits::default();
    let mut rng = gen::rng(49);
    for a in gen::corpus(50, 15, &small_shape()) {
        let (h, _) = gen::planted_isometry(&mut rng, &a);
        let (g, _) = gen::planted_isometry(&mut rng, h.codomain());
        let hg = h.then(&g).unwrap();
        assert!(hg.is_isometry(CheckMode::Exact, &lim).unwrap().holds());
        assert!(weight_preserving(&hg));
        let inv = h.inverse().unwrap();
        assert!(inv.is_isometry(CheckMode::Exact, &lim).unwrap().holds());
        assert!(weight_preserving(&inv));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn separating_matches_pairs(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let a = small_shape().sample(&mut rng);
        let b = small_shape().sample(&mut rng);
        prop_assume!(a.field() == b.field());
        let h = gen::random_map(&mut rng, &a, &b).unwrap();
        let report = h.is_separating(CheckMode::Exact, &Limits::default()).unwrap();
        prop_assert_eq!(report.separating, separating_by_pairs(&h));
        if let Some((f, g)) = report.witness {
            let (vf, vg) = (a.values(&f), a.values(&g));
            prop_assert!(support_of(&vf).is_disjoint(&support_of(&vg)));
            prop_assert!(!support_of(&image(&h, &f.coeffs)).is_disjoint(&support_of(&image(&h, &g.coeffs))));
        }
    }

    #[test]
    fn isometry_matches_weights(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let a = small_shape().sample(&mut rng);
        let h = if seed % 2 == 0 {
            gen::planted_isometry(&mut rng, &a).0
        } else {
            gen::random_map(&mut rng, &a, &a).unwrap()
        };
        let report = h.is_isometry(CheckMode::Exact, &Limits::default()).unwrap();
        prop_assert_eq!(report.weight_preserving, weight_preserving(&h));
        prop_assert_eq!(report.holds(), weight_preserving(&h) && h.is_bijective());
        // a Hamming isometry is separating
        if report.holds() {
            prop_assert!(separating_by_pairs(&h));
        }
    }

    #[test]
    fn weights_are_additive_measures(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let a = small_shape().sample(&mut rng);
        for u in all_vectors(a.field().order(), a.dim()) {
            let f = hamming_iso::Func::new(u.clone());
            let v = combine(a.field(), &u, a.basis());
            prop_assert_eq!(a.weight(&f), weight(&a, &v));
            prop_assert_eq!(a.weight(&f) == 0.into(), v.iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn rref_preserves_row_space(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let field = gen::small_fields()[(seed % 4) as usize].clone();
        let n = 1 + (seed % 5) as usize;
        let rows: Vec<Vec<Elem>> = (0..3).map(|_| gen::random_vector(&mut rng, &field, n)).collect();
        if let Ok(a) = FunctionSpace::new(field.clone(), PointSpace::uniform(n).unwrap(), rows.clone(), true) {
            prop_assume!(a.len() == n);
            let original: std::collections::BTreeSet<Vec<Elem>> =
                all_vectors(field.order(), 3).iter().map(|u| combine(&field, u, &rows)).collect();
            let ours: std::collections::BTreeSet<Vec<Elem>> = members(&a).into_iter().collect();
            prop_assert_eq!(original, ours);
        }
    }
}
