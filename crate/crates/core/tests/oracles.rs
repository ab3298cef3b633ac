mod common;

use std::sync::Arc;

use minind_core::cartan::{presets, ParabolicType, Weight};
use minind_core::gla::lyndon::lyndon_words;
use minind_core::gla::pbw::pbw_monomials;
use minind_core::gla::{build_graded_lie, GradedLie};
use minind_core::wmod::{simple, verma, Window};

fn lie(d: &minind_core::cartan::CartanDatum, h: usize) -> Arc<GradedLie> {
    Arc::new(build_graded_lie(d, h).unwrap())
}

#[test]
fn denominator_oracle_matches_affine_and_finite_multiplicities() {
    for (d, h) in [(presets::affine_a1(), 8), (presets::affine_a2(), 5), (presets::g2(), 6), (presets::b2(), 5)] {
        let g = lie(&d, h);
        for (b, m) in common::denominator_multiplicities(d.matrix(), h as i64) {
            assert_eq!(g.multiplicity(&b) as i64, m, "{:?} at {b:?}", d.matrix());
        }
    }
}

#[test]
fn affine_sl2_imaginary_and_real_roots() {
    let m = common::denominator_multiplicities(presets::affine_a1().matrix(), 8);
    for (b, k) in m {
        let expected = i64::from((b[0] - b[1]).abs() <= 1);
        assert_eq!(k, expected, "{b:?}");
    }
}

#[test]
fn lyndon_counts_match_necklaces() {
    for n in 1..=3 {
        for b in common::candidates(n, 7) {
            assert_eq!(lyndon_words(&b).len(), common::necklace_count(&b), "{b:?}");
        }
    }
}

#[test]
fn witt_numbers_bound_multiplicities() {
    let d = presets::affine_a1();
    let g = lie(&d, 8);
    for b in common::candidates(2, 8) {
        assert!(g.multiplicity(&b) <= common::necklace_count(&b));
    }
}

#[test]
fn pbw_counts_match_kostant_series() {
    for (d, h) in [(presets::a2(), 6), (presets::affine_a1(), 6), (presets::b2(), 6)] {
        let g = lie(&d, h);
        let n = d.rank();
        for xi in [ParabolicType::empty(n), ParabolicType::new(n, [0]).unwrap()] {
            let ids = g.nilradical_ids(&xi, &ParabolicType::full(n));
            let roots: Vec<(Vec<i64>, usize)> =
                g.root_datum().roots().into_iter().filter(|(b, _)| !xi.supports(b)).collect();
            let series = common::kostant_series(&roots, n, h as i64);
            for b in common::candidates(n, h as i64) {
                let expected = series.get(&b).copied().unwrap_or(0) as usize;
                assert_eq!(pbw_monomials(&g, &ids, &b).len(), expected, "{:?} Ξ={xi:?} β={b:?}", d.matrix());
            }
        }
    }
}

#[test]
fn sl3_verma_dims_are_kostant_counts() {
    let d = presets::a2();
    let g = lie(&d, 6);
    assert_eq!(
        g.root_datum().roots().into_iter().map(|r| r.0).collect::<Vec<_>>(),
        vec![vec![1, 0], vec![0, 1], vec![1, 1]]
    );
    let lam = Weight::from_ints(&[3, -2]);
    let w = Window::height_bounded(&lam.offset, 6);
    let m = verma(&g, &lam, &ParabolicType::full(2), &w).unwrap().module;
    for b in w.iter() {
        assert_eq!(m.dim(b), common::sl3_kostant(b), "{b:?}");
    }
}

#[test]
fn shapovalov_oracle_matches_simple_characters() {
    let cases: [(minind_core::cartan::CartanDatum, Vec<i64>, i64); 5] = [
        (presets::a1(), vec![2], 6),
        (presets::a2(), vec![1, 1], 4),
        (presets::a2(), vec![-1, -1], 4),
        (presets::b2(), vec![1, 0], 3),
        (presets::affine_a1(), vec![1, 1], 3),
    ];
    for (d, lam, depth) in cases {
        let n = d.rank();
        let g = lie(&d, (n as i64 * depth) as usize);
        let w = Window::boxed(&vec![0; n], depth);
        let l = simple(&g, &Weight::from_ints(&lam), &ParabolicType::full(n), &w).unwrap();
        let mut oracle = common::ShapovalovOracle::new(d.matrix(), &lam);
        for b in w.iter() {
            assert!(oracle.gram_is_symmetric(b));
            assert_eq!(l.dim(b), oracle.simple_dim(b), "{:?} λ={lam:?} β={b:?}", d.matrix());
        }
    }
}
