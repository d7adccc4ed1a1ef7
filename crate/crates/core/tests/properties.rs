//! Randomized structural properties over Latin rectangles of assorted
//! shapes and kinds.

use proptest::prelude::*;

use design_forge_core::design::{
    classify_rectangle, covering_table, intersection_profile, is_latin, lambda_bounds,
    lambda_exact, tsuji_sides, Params, Rectangle, RectangleKind,
};
use design_forge_core::enumerate::develop;
use design_forge_core::isotopy::{
    apply, are_isotopic, canonical_form, conjugate, normalize, Isotopism,
};

/// A Latin rectangle: a cyclic development moved by a random isotopism.
/// Developments realize all classification kinds as the first column varies.
fn arb_latin() -> impl Strategy<Value = Rectangle> {
    (5usize..=11)
        .prop_flat_map(|n| {
            let k_max = (n - 2).min(5);
            (Just(n), 2usize..=k_max)
        })
        .prop_flat_map(|(n, k)| {
            (
                Just(n),
                proptest::sample::subsequence((0..n as u64).collect::<Vec<_>>(), k),
                proptest::sample::select((0..1000u64).collect::<Vec<_>>()),
            )
        })
        .prop_map(|(n, first_col, seed)| {
            let rect = develop(&first_col, n).expect("distinct residues");
            // Cheap deterministic pseudo-random isotopism from the seed.
            let (anything, k) = (rect.n(), rect.k());
            let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let mut next = move |m: usize| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 33) as usize % m
            };
            let mut shuffled = |m: usize| {
                let mut p: Vec<u8> = (0..m as u8).collect();
                for i in (1..m).rev() {
                    p.swap(i, next(i + 1));
                }
                p
            };
            let g = Isotopism::new(shuffled(k), shuffled(anything), shuffled(anything)).unwrap();
            apply(&g, &rect).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn double_counting_identities(r in arb_latin()) {
        prop_assert!(is_latin(&r));
        let (n, k) = (r.n() as u64, r.k() as u64);
        let pair_budget = n * k * (k - 1) / 2;

        let cov = covering_table(&r).unwrap();
        prop_assert_eq!(cov.total(), pair_budget);

        // Sum of pairwise column intersections equals the same budget,
        // since every symbol appears exactly k times.
        let profile = intersection_profile(&r).unwrap();
        let sum: u64 = profile
            .multiset_summary()
            .iter()
            .map(|(&size, &count)| size as u64 * count as u64)
            .sum();
        prop_assert_eq!(sum, pair_budget);
    }

    #[test]
    fn classification_is_consistent_with_profile(r in arb_latin()) {
        let kind = classify_rectangle(&r);
        let profile = intersection_profile(&r).unwrap();
        let sizes: Vec<u64> =
            profile.multiset_summary().keys().map(|&v| v as u64).collect();
        let p = r.params();
        let recomputed = match lambda_exact(&p) {
            Some(lam) => {
                if sizes == [lam] {
                    RectangleKind::Youden
                } else if lam >= 1 && sizes == [lam - 1, lam, lam + 1] {
                    RectangleKind::ThreeLambda
                } else {
                    RectangleKind::LatinOnly
                }
            }
            None => {
                let (lo, hi) = lambda_bounds(&p);
                if sizes.iter().all(|&s| s == lo || s == hi) {
                    RectangleKind::NearYouden
                } else {
                    RectangleKind::LatinOnly
                }
            }
        };
        prop_assert_eq!(kind, recomputed);
    }

    #[test]
    fn exact_identity_on_classified_kinds(r in arb_latin()) {
        match classify_rectangle(&r) {
            RectangleKind::Youden | RectangleKind::NearYouden | RectangleKind::ThreeLambda => {
                let (lhs, rhs) = tsuji_sides(&r).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
            _ => {}
        }
    }

    #[test]
    fn normalize_and_canonical_are_stable(r in arb_latin()) {
        let norm = normalize(&r).unwrap();
        prop_assert!(norm.is_normalized());
        prop_assert_eq!(&normalize(&norm).unwrap(), &norm);
        prop_assert!(are_isotopic(&r, &norm).unwrap());

        let canon = canonical_form(&r).unwrap();
        prop_assert_eq!(&canonical_form(canon.rect()).unwrap(), &canon);
        prop_assert_eq!(&canonical_form(&norm).unwrap(), &canon);
    }

    #[test]
    fn conjugation_is_an_involution(r in arb_latin()) {
        let conj = conjugate(&r).unwrap();
        prop_assert!(is_latin(&conj));
        prop_assert_eq!(&conjugate(&conj).unwrap(), &r);
    }
}

#[test]
fn degenerate_parameters_are_rejected() {
    assert!(Params::new(4, 3).is_err());
    assert!(Params::new(3, 2).is_err());
    assert!(Params::new(10, 1).is_err());
}
