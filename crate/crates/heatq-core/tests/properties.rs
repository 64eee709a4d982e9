//! Property tests for the randomized invariants: kernel identities over the
//! whole parameter box, coefficient symmetry, epsilon-table structure, and
//! fit exactness on in-span data.

use proptest::prelude::*;

use heatq_core::invariants::SWAP_PERMUTATION;
use heatq_core::{
    c_at, c_coef, epsilon_table, fit_series, integrate_1d, kernel, template_from_exponents,
    AlphaPair, Domain1D, QSample,
};

const KTOL: f64 = 1e-15;

fn kv(dom: Domain1D, x1: f64, x2: f64, t: f64) -> f64 {
    kernel(dom, x1, x2, t, KTOL).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn kernel_symmetry(x1 in 0.0..1.0f64, x2 in 0.0..1.0f64, t in 1e-4..0.5f64) {
        let dom = Domain1D::Interval { a: 1.0 };
        let p12 = kv(dom, x1, x2, t);
        let p21 = kv(dom, x2, x1, t);
        prop_assert!((p12 - p21).abs() <= 1e-14 * p12.abs().max(1.0));
    }

    #[test]
    fn kernel_second_reflection(x1 in 0.0..1.0f64, x2 in 0.0..1.0f64, t in 1e-4..0.5f64) {
        let dom = Domain1D::Interval { a: 1.0 };
        let lhs = kv(dom, x1, 1.0 - x2, t);
        let rhs = kv(dom, 1.0 - x1, x2, t);
        prop_assert!((lhs - rhs).abs() <= 1e-14 * lhs.abs().max(1.0));
    }

    #[test]
    fn kernel_domain_monotonicity(x1 in 0.0..1.0f64, x2 in 0.0..1.0f64, t in 1e-4..0.5f64) {
        let p_int = kv(Domain1D::Interval { a: 1.0 }, x1, x2, t);
        let p_half = kv(Domain1D::HalfLine, x1, x2, t);
        let p_full = kv(Domain1D::FullLine, x1, x2, t);
        prop_assert!(p_int >= -1e-14);
        prop_assert!(p_int <= p_half + 1e-14);
        prop_assert!(p_half <= p_full + 1e-14);
    }

    #[test]
    fn half_line_factorization(x1 in 1e-6..3.0f64, x2 in 1e-6..3.0f64, t in 1e-4..1.0f64) {
        // difference-of-Gaussians form against the factorized implementation;
        // the difference form carries roundoff at the scale of its terms
        // (norm), so that is the scale the two can agree at
        let norm = 1.0 / (4.0 * std::f64::consts::PI * t).sqrt();
        let diff = norm
            * ((-(x1 - x2) * (x1 - x2) / (4.0 * t)).exp()
                - (-(x1 + x2) * (x1 + x2) / (4.0 * t)).exp());
        let fact = kv(Domain1D::HalfLine, x1, x2, t);
        prop_assert!((diff - fact).abs() <= 1e-14 * norm.max(fact.abs()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn c_symmetry_random_pairs(a1 in -1.5..1.9f64, a2 in -1.5..1.9f64) {
        let s = a1 + a2;
        prop_assume!((s - s.round()).abs() > 0.05);
        let c12 = c_coef(&AlphaPair::new(a1, a2).unwrap()).unwrap();
        let c21 = c_coef(&AlphaPair::new(a2, a1).unwrap()).unwrap();
        // canonical ordering makes the swap exact; assert the documented bound
        prop_assert!((c12 - c21).abs() <= 1e-12 * c12.abs());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn epsilon_table_structure(a1 in -1.2..1.85f64, a2 in -1.2..1.85f64) {
        let s = a1 + a2;
        prop_assume!((s - s.round()).abs() > 0.05);
        let ap = AlphaPair::new(a1, a2).unwrap();
        let provider = |x1: f64, x2: f64| c_at(x1, x2);
        let tab = epsilon_table(&ap, &provider).unwrap();
        let scale = tab.eps.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
        // structural identities of the table
        prop_assert!(tab.eps[13] == 0.0);
        prop_assert!((tab.eps[12] + tab.eps[0]).abs() <= 1e-13 * scale);
        prop_assert!((tab.eps[6] - tab.eps[0]).abs() <= 1e-13 * scale);
        prop_assert!((tab.eps[2] + (tab.eps[1] + tab.eps[3]) / 2.0).abs() <= 1e-13 * scale);
        prop_assert!((tab.eps[11] - tab.eps[9]).abs() <= 1e-13 * scale);
        // swap permutation against the table at the transposed pair
        let swapped = epsilon_table(&ap.swapped(), &provider).unwrap();
        for (i, &sigma_i) in SWAP_PERMUTATION.iter().enumerate() {
            let lhs = tab.eps[i];
            let rhs = swapped.eps[sigma_i];
            prop_assert!(
                (lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0),
                "eps^{} mismatch: {} vs {}", i, lhs, rhs
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn fit_recovers_in_span_data(
        c0 in -5.0..5.0f64,
        c1 in -5.0..5.0f64,
        c2 in -5.0..5.0f64,
        e1 in 0.1..0.45f64,
    ) {
        let ts: Vec<f64> = (0..12).map(|i| 1e-3 * 10f64.powf(i as f64 / 5.5)).collect();
        let samples: Vec<QSample> = ts
            .iter()
            .map(|&t| QSample { t, value: c0 + c1 * t.powf(e1) + c2 * t, err: 0.0 })
            .collect();
        let tmpl = template_from_exponents(&[0.0, e1, 1.0]).unwrap();
        let fit = fit_series(&samples, &tmpl).unwrap();
        let scale = c0.abs().max(c1.abs()).max(c2.abs()).max(1.0);
        prop_assert!((fit.coefficient(0.0, false).unwrap() - c0).abs() <= 1e-9 * scale);
        prop_assert!((fit.coefficient(e1, false).unwrap() - c1).abs() <= 1e-9 * scale);
        prop_assert!((fit.coefficient(1.0, false).unwrap() - c2).abs() <= 1e-9 * scale);
    }

    #[test]
    fn quadrature_split_invariance(split in 0.05..0.95f64) {
        // splitting a smooth integral anywhere must not move the value
        let f = |p: &heatq_core::QuadPoint| (3.0 * p.x).sin() * (-p.x).exp();
        let whole = integrate_1d(f, 0.0, 1.0, 1e-13).unwrap().value;
        let left = integrate_1d(f, 0.0, split, 1e-13).unwrap().value;
        let right = integrate_1d(f, split, 1.0, 1e-13).unwrap().value;
        prop_assert!((whole - (left + right)).abs() <= 1e-12);
    }
}

/// Semigroup identity with quadrature, pinned points (heavier than the
/// proptest cases warrant).
#[test]
fn kernel_semigroup_identity() {
    let a = 1.0;
    for &(x, y, t, s) in &[(0.3, 0.6, 0.05, 0.03), (0.45, 0.2, 0.01, 0.02)] {
        let conv = integrate_1d(
            |p| {
                kv(Domain1D::Interval { a }, x, p.x, t) * kv(Domain1D::Interval { a }, p.x, y, s)
            },
            0.0,
            a,
            1e-12,
        )
        .unwrap();
        let direct = kv(Domain1D::Interval { a }, x, y, t + s);
        assert!(
            (conv.value - direct).abs() <= 1e-10,
            "({x},{y},{t},{s}): {} vs {direct}",
            conv.value
        );
    }
}

/// Left-ray kernel against its closed form (difference of Gaussians about
/// the reflection point 2a).
#[test]
fn left_ray_closed_form() {
    let a = 1.5;
    for &(x1, x2, t) in &[(0.2, 1.1, 0.3), (1.45, 1.49, 0.01), (-2.0, 0.5, 1.0)] {
        let norm = 1.0 / (4.0 * std::f64::consts::PI * t).sqrt();
        let expect = norm
            * ((-(x1 - x2) * (x1 - x2) / (4.0 * t)).exp()
                - (-(2.0 * a - x1 - x2) * (2.0 * a - x1 - x2) / (4.0 * t)).exp());
        let got = kv(Domain1D::LeftRay { a }, x1, x2, t);
        assert!((expect - got).abs() <= 1e-14 * got.abs().max(1e-30));
    }
}
