//! Acceptance suite: every published count and structural property this
//! project commits to, one test per criterion. Heavy catalogs are shared
//! between criteria through lazy statics.
//!
//! Two assertions about the (7,4) three-size census are expected to fail
//! against their recorded reference values; see the assertion messages.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::LazyLock;

use design_forge_cli::format::write_rectangles;
use design_forge_core::arrays::{
    array_autotopism_order, array_canonical_form_folded, classify_array, remove_and_swap,
    rl_form, scan_catalog, ArrayLabel, ScanTarget,
};
use design_forge_core::design::{
    classify_rectangle, covering_table, intersection_distribution, lambda_bounds, lambda_exact,
    tsuji_sides, Params, RectangleKind,
};
use design_forge_core::enumerate::{
    count_by_aut, enumerate_classes, ClassCatalog, SearchConfig,
};
use design_forge_core::isotopy::{
    apply, are_isotopic, canonical_form, conjugate, conjugation_counts, is_self_conjugate,
    Isotopism,
};
use design_forge_core::oracle::brute_enumerate;
use design_forge_core::samples;

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

fn catalog(n: usize, k: usize, kind: RectangleKind) -> ClassCatalog {
    let p = Params::new(n, k).expect("valid parameters");
    enumerate_classes(&p, kind, &cfg()).expect("enumeration succeeds")
}

fn aut_histogram(cat: &ClassCatalog) -> BTreeMap<u64, u64> {
    count_by_aut(cat).by_aut_order
}

fn hist(pairs: &[(u64, u64)]) -> BTreeMap<u64, u64> {
    pairs.iter().copied().collect()
}

static YOUDEN_7_3: LazyLock<ClassCatalog> =
    LazyLock::new(|| catalog(7, 3, RectangleKind::Youden));
static YOUDEN_7_4: LazyLock<ClassCatalog> =
    LazyLock::new(|| catalog(7, 4, RectangleKind::Youden));
static YOUDEN_13_4: LazyLock<ClassCatalog> =
    LazyLock::new(|| catalog(13, 4, RectangleKind::Youden));
static YOUDEN_11_5: LazyLock<ClassCatalog> =
    LazyLock::new(|| catalog(11, 5, RectangleKind::Youden));
static THREE_7_3: LazyLock<ClassCatalog> =
    LazyLock::new(|| catalog(7, 3, RectangleKind::ThreeLambda));
static THREE_7_4: LazyLock<ClassCatalog> =
    LazyLock::new(|| catalog(7, 4, RectangleKind::ThreeLambda));

#[test]
fn criterion_01_youden_counts_n7() {
    assert_eq!(YOUDEN_7_3.len(), 1);
    assert_eq!(aut_histogram(&YOUDEN_7_3), hist(&[(21, 1)]));
    assert_eq!(YOUDEN_7_4.len(), 6);
    assert_eq!(aut_histogram(&YOUDEN_7_4), hist(&[(1, 2), (3, 3), (21, 1)]));
    println!("criterion 1: pass (7,3) -> 1 class @21; (7,4) -> 6 classes {{1:2,3:3,21:1}}");
}

#[test]
fn criterion_02_youden_counts_13_4() {
    assert_eq!(YOUDEN_13_4.len(), 20);
    assert_eq!(aut_histogram(&YOUDEN_13_4), hist(&[(1, 12), (3, 7), (39, 1)]));
    println!("criterion 2: pass (13,4) -> 20 classes {{1:12,3:7,39:1}}");
}

#[test]
fn criterion_03_youden_counts_11_5() {
    assert_eq!(YOUDEN_11_5.len(), 79_416);
    assert_eq!(
        aut_histogram(&YOUDEN_11_5),
        hist(&[
            (1, 77_694),
            (2, 1_423),
            (3, 199),
            (4, 45),
            (5, 4),
            (6, 38),
            (10, 3),
            (12, 7),
            (55, 1),
            (60, 2),
        ])
    );
    println!("criterion 3: pass (11,5) -> 79416 classes, full histogram");
}

#[test]
fn criterion_04_large_cases_supported_but_excluded() {
    // (11,6) and (21,5) are out of desk-scale budget; the engine accepts the
    // parameters and their windows, correctness rests on criteria 1-3 plus
    // the invariant suites.
    for (n, k) in [(11, 6), (21, 5)] {
        let p = Params::new(n, k).expect("parameters are supported");
        assert_eq!(lambda_exact(&p).is_some(), true, "({n},{k}) has integral lambda");
    }
    println!("criterion 4: pass (documented exclusion of (11,6) and (21,5) full runs)");
}

struct NyrRow {
    n: usize,
    k: usize,
    classes: usize,
    /// Published "self-conjugate" value: the class count folded over
    /// conjugation, (classes + fixed) / 2.
    self_conjugate: u64,
    /// Classes actually isotopic to their own conjugate.
    fixed: u64,
    hist: &'static [(u64, u64)],
}

const NYR_ROWS: &[NyrRow] = &[
    NyrRow { n: 5, k: 2, classes: 1, self_conjugate: 1, fixed: 1, hist: &[(10, 1)] },
    NyrRow { n: 5, k: 3, classes: 2, self_conjugate: 2, fixed: 2, hist: &[(2, 1), (10, 1)] },
    NyrRow { n: 6, k: 2, classes: 2, self_conjugate: 2, fixed: 2, hist: &[(12, 1), (36, 1)] },
    NyrRow { n: 6, k: 3, classes: 2, self_conjugate: 2, fixed: 2, hist: &[(6, 2)] },
    NyrRow {
        n: 6,
        k: 4,
        classes: 34,
        self_conjugate: 29,
        fixed: 24,
        hist: &[(1, 9), (2, 11), (4, 5), (6, 3), (12, 4), (18, 1), (36, 1)],
    },
    NyrRow { n: 7, k: 2, classes: 2, self_conjugate: 2, fixed: 2, hist: &[(14, 1), (24, 1)] },
    NyrRow {
        n: 7,
        k: 5,
        classes: 5_205,
        self_conjugate: 2_778,
        fixed: 351,
        hist: &[(1, 4_889), (2, 307), (4, 8), (14, 1)],
    },
    NyrRow {
        n: 8,
        k: 3,
        classes: 4,
        self_conjugate: 3,
        fixed: 2,
        hist: &[(6, 2), (16, 1), (48, 1)],
    },
    NyrRow {
        n: 8,
        k: 4,
        classes: 285,
        self_conjugate: 212,
        fixed: 139,
        hist: &[(1, 173), (2, 78), (4, 15), (8, 11), (16, 4), (32, 4)],
    },
    NyrRow {
        n: 8,
        k: 5,
        classes: 6_688,
        self_conjugate: 3_608,
        fixed: 528,
        hist: &[
            (1, 6_204),
            (2, 381),
            (3, 37),
            (4, 29),
            (6, 18),
            (8, 6),
            (12, 5),
            (16, 5),
            (24, 2),
            (48, 1),
        ],
    },
    NyrRow {
        n: 9,
        k: 3,
        classes: 11,
        self_conjugate: 11,
        fixed: 11,
        hist: &[(1, 3), (2, 1), (3, 1), (6, 4), (9, 1), (54, 1)],
    },
    NyrRow {
        n: 9,
        k: 4,
        classes: 5_342,
        self_conjugate: 2_955,
        fixed: 568,
        hist: &[
            (1, 4_881),
            (2, 355),
            (3, 20),
            (4, 54),
            (6, 15),
            (8, 3),
            (9, 3),
            (12, 8),
            (18, 2),
            (72, 1),
        ],
    },
    NyrRow {
        n: 10,
        k: 3,
        classes: 80,
        self_conjugate: 59,
        fixed: 38,
        hist: &[(1, 48), (2, 23), (3, 4), (6, 2), (10, 3)],
    },
    NyrRow {
        n: 11,
        k: 3,
        classes: 852,
        self_conjugate: 501,
        fixed: 150,
        hist: &[(1, 759), (2, 75), (3, 12), (6, 5), (11, 1)],
    },
];

#[test]
fn criterion_05_near_youden_counts() {
    for row in NYR_ROWS {
        let cat = catalog(row.n, row.k, RectangleKind::NearYouden);
        assert_eq!(cat.len(), row.classes, "({},{}) class count", row.n, row.k);
        assert_eq!(
            aut_histogram(&cat),
            hist(row.hist),
            "({},{}) aut histogram",
            row.n,
            row.k
        );
        let conj = conjugation_counts(&cat.reps).unwrap();
        assert_eq!(conj.folded, row.self_conjugate, "({},{}) folded count", row.n, row.k);
        assert_eq!(conj.fixed, row.fixed, "({},{}) fixed classes", row.n, row.k);
        println!(
            "criterion 5: pass ({},{}) -> {} classes, {} up to conjugation ({} fixed)",
            row.n, row.k, row.classes, row.self_conjugate, row.fixed
        );
    }
}

#[test]
fn criterion_06_nonexistence_17_6() {
    let cat = catalog(17, 6, RectangleKind::NearYouden);
    assert_eq!(cat.len(), 0, "no 6x17 rectangle with adjacent two-size intersections exists");
    println!("criterion 6: pass (17,6) -> 0 classes");
}

#[test]
fn criterion_07a_three_size_counts_7_3() {
    assert_eq!(THREE_7_3.len(), 43);
    assert_eq!(
        aut_histogram(&THREE_7_3),
        hist(&[(1, 18), (2, 21), (3, 1), (6, 2), (14, 1)])
    );
    println!("criterion 7a: pass (7,3) -> 43 classes");
}

#[test]
fn criterion_07b_three_size_counts_7_4() {
    // Regression guard: the complete census under the stated definition,
    // verified independently by brute-force re-enumeration and by the
    // mass formula sum(n*k!*(n-k)!/|Aut|) = 1,051,584 normalized members.
    assert_eq!(THREE_7_4.len(), 1122, "complete census changed");
    assert_eq!(
        aut_histogram(&THREE_7_4),
        hist(&[(1, 974), (2, 126), (3, 12), (4, 8), (6, 1), (14, 1)]),
        "complete census histogram changed"
    );
    // Reference value from the published table. The complete census above
    // is strictly larger and triple-checked, so this reference appears to
    // reflect an incomplete source run; the assertion is kept as stated.
    assert_eq!(
        THREE_7_4.len(),
        872,
        "published reference says 872 classes; the verified complete census \
         under the stated definition has 1122 (mass formula 1051584 confirms)"
    );
}

#[test]
fn criterion_08_triple_scan_11_5() {
    let scan = scan_catalog(&YOUDEN_11_5.reps, ScanTarget::Triple).unwrap();
    assert_eq!(scan.compatible_rectangles, 52);
    assert_eq!(scan.compatible_columns, 52);
    assert_eq!(scan.classes.len(), 7);
    // Frequencies paired with the triple arrays' own autotopism orders.
    let mut pairs: Vec<(u64, usize)> = scan
        .classes
        .iter()
        .zip(&scan.class_frequencies)
        .map(|(a, &f)| (array_autotopism_order(a).unwrap(), f))
        .collect();
    pairs.sort_unstable();
    assert_eq!(
        pairs,
        vec![(3, 10), (3, 10), (4, 11), (6, 8), (12, 5), (12, 5), (60, 3)]
    );
    println!("criterion 8: pass (11,5) triples 52/52/7 with published frequencies");
}

#[test]
fn criterion_09_double_scans() {
    for (cat, want_r, want_c, want_classes) in [
        (&*YOUDEN_7_3, 1usize, 7usize, 1usize),
        (&*YOUDEN_7_4, 6, 18, 2),
        (&*YOUDEN_13_4, 20, 260, 192),
        (&*YOUDEN_11_5, 44_012, 64_949, 17_642),
    ] {
        let scan = scan_catalog(&cat.reps, ScanTarget::Double).unwrap();
        assert_eq!(
            (scan.compatible_rectangles, scan.compatible_columns, scan.classes.len()),
            (want_r, want_c, want_classes),
            "({}, {}) double scan",
            cat.params.n(),
            cat.params.k()
        );
        println!(
            "criterion 9: pass ({},{}) doubles {}/{}/{}",
            cat.params.n(),
            cat.params.k(),
            want_r,
            want_c,
            want_classes
        );
    }
}

#[test]
fn criterion_10_sesqui_transpose_scan_7_4() {
    let scan = scan_catalog(&YOUDEN_7_4.reps, ScanTarget::SesquiTranspose).unwrap();
    assert_eq!(
        (scan.compatible_rectangles, scan.compatible_columns, scan.classes.len()),
        (1, 3, 1)
    );
    let idx = scan
        .columns_per_rectangle
        .iter()
        .position(|cols| !cols.is_empty())
        .expect("one compatible rectangle");
    assert!(
        are_isotopic(&YOUDEN_7_4.reps[idx], &samples::youden_4x7_sesqui_compatible()).unwrap(),
        "the compatible rectangle is the known one"
    );
    println!("criterion 10: pass (7,4) sesqui-transposes 1/3/1, known rectangle");
}

#[test]
fn criterion_11a_three_size_scans_7_3() {
    let dbl = scan_catalog(&THREE_7_3.reps, ScanTarget::Double).unwrap();
    assert_eq!(
        (dbl.compatible_rectangles, dbl.compatible_columns, dbl.classes.len()),
        (6, 8, 2)
    );
    let ses = scan_catalog(&THREE_7_3.reps, ScanTarget::Sesqui).unwrap();
    assert_eq!(
        (ses.compatible_rectangles, ses.compatible_columns, ses.classes.len()),
        (2, 2, 2)
    );
    println!("criterion 11a: pass (7,3) doubles 6/8/2, sesquis 2/2/2");
}

#[test]
fn criterion_11b_three_size_scans_7_4() {
    let dbl = scan_catalog(&THREE_7_4.reps, ScanTarget::Double).unwrap();
    let sqt = scan_catalog(&THREE_7_4.reps, ScanTarget::SesquiTranspose).unwrap();
    // Class counts agree with the reference either way.
    assert_eq!(dbl.classes.len(), 2);
    assert_eq!(sqt.classes.len(), 2);
    // Regression guard over the complete census.
    assert_eq!(
        (dbl.compatible_rectangles, dbl.compatible_columns),
        (204, 233),
        "complete-census double scan changed"
    );
    assert_eq!(
        (sqt.compatible_rectangles, sqt.compatible_columns),
        (83, 88),
        "complete-census sesqui-transpose scan changed"
    );
    // Reference values from the published tables, tied to the 872-class
    // source census (see criterion 7b); kept as stated.
    assert_eq!(
        (dbl.compatible_rectangles, dbl.compatible_columns, dbl.classes.len()),
        (97, 104, 2),
        "published reference (97/104/2) reflects the incomplete 872-class census; \
         the complete census gives 204/233/2"
    );
}

#[test]
fn criterion_11c_sesqui_classes_fold_to_two() {
    // All proper sesqui arrays from (7,3) plus all transposed ones from
    // (7,4), folded over transposes, give exactly two classes, one of them
    // the known 4x3 example.
    let ses = scan_catalog(&THREE_7_3.reps, ScanTarget::Sesqui).unwrap();
    let sqt = scan_catalog(&THREE_7_4.reps, ScanTarget::SesquiTranspose).unwrap();
    let mut folded = BTreeSet::new();
    for a in ses.classes.iter().chain(&sqt.classes) {
        folded.insert(array_canonical_form_folded(a).unwrap());
    }
    assert_eq!(folded.len(), 2);
    let known = array_canonical_form_folded(&samples::sesqui_transpose_4x3()).unwrap();
    assert!(folded.contains(&known), "the known sesqui class recurs");
    println!("criterion 11c: pass sesqui classes fold to 2, known class recurs");
}

#[test]
fn criterion_12a_construction_outputs_thm4_thm5() {
    // Every column of every Youden rectangle yields an array with no
    // repeats, equireplicate with e = k - lambda, and constant column
    // intersections lambda; for lambda = 1 the label is always a proper
    // double array.
    for cat in [&*YOUDEN_7_3, &*YOUDEN_7_4, &*YOUDEN_13_4, &*YOUDEN_11_5] {
        let lam = lambda_exact(&cat.params).unwrap() as u32;
        let k = cat.params.k() as u32;
        for rep in &cat.reps {
            for c in 0..rep.n() {
                let arr = remove_and_swap(rep, c).unwrap();
                let cls = classify_array(&arr).unwrap();
                assert!(cls.ta1 && cls.ta2 && cls.ta4);
                assert_eq!(cls.e, Some(k - lam));
                assert_eq!(cls.lambda_cc, Some(lam));
                if lam == 1 {
                    assert_eq!(cls.label, ArrayLabel::ProperDouble);
                }
            }
        }
        println!(
            "criterion 12a: pass construction conditions on ({},{})",
            cat.params.n(),
            cat.params.k()
        );
    }
}

#[test]
fn criterion_12b_rl_sum_constant_on_triples() {
    let scan = scan_catalog(&YOUDEN_11_5.reps, ScanTarget::Triple).unwrap();
    assert_eq!(scan.classes.len(), 7);
    for t in &scan.classes {
        let e = classify_array(t).unwrap().e.unwrap();
        let rl = rl_form(t).unwrap();
        for c1 in 0..rl.cols() {
            for c2 in c1 + 1..rl.cols() {
                let common_rows = (0..rl.rows())
                    .filter(|&r| rl.get(r, c1).is_some() && rl.get(r, c2).is_some())
                    .count() as u32;
                let m1 = (0..rl.rows()).filter_map(|r| rl.get(r, c1)).fold(0u64, |m, s| m | 1 << s);
                let m2 = (0..rl.rows()).filter_map(|r| rl.get(r, c2)).fold(0u64, |m, s| m | 1 << s);
                assert_eq!(common_rows + (m1 & m2).count_ones(), e);
            }
        }
    }
    println!("criterion 12b: pass sum-constant on all RL-forms of found triples");
}

#[test]
fn criterion_12c_exact_identity_small_catalogs() {
    // The covering-variance identity holds with exact rational arithmetic
    // on every catalog member with n <= 8, and every near Youden member's
    // column distributions match the closed forms.
    let mut checked = 0usize;
    for row in NYR_ROWS.iter().filter(|r| r.n <= 8) {
        let cat = catalog(row.n, row.k, RectangleKind::NearYouden);
        let (lo, hi) = lambda_bounds(&cat.params);
        let n = cat.params.n() as i64;
        let k = cat.params.k() as i64;
        let n1 = (hi as i64 * (n - 1) - k * (k - 1)) as u32;
        let n2 = (-(lo as i64) * (n - 1) + k * (k - 1)) as u32;
        for rep in &cat.reps {
            let (lhs, rhs) = tsuji_sides(rep).unwrap();
            assert_eq!(lhs, rhs);
            let cov = covering_table(rep).unwrap();
            assert!(cov.counts().values().all(|&l| l as u64 == lo || l as u64 == hi));
            for c in 0..rep.n() {
                let dist = intersection_distribution(rep, c).unwrap();
                let mut want = BTreeMap::new();
                if n1 > 0 {
                    want.insert(lo as u32, n1);
                }
                if n2 > 0 {
                    want.insert(hi as u32, n2);
                }
                assert_eq!(dist, want);
            }
            checked += 1;
        }
    }
    for cat in [&*YOUDEN_7_3, &*YOUDEN_7_4, &*THREE_7_3, &*THREE_7_4] {
        for rep in &cat.reps {
            let (lhs, rhs) = tsuji_sides(rep).unwrap();
            assert_eq!(lhs, rhs);
            checked += 1;
        }
    }
    println!("criterion 12c: pass exact identity on {checked} rectangles");
}

#[test]
fn criterion_12d_canonical_orbit_constancy() {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let nyr64 = catalog(6, 4, RectangleKind::NearYouden);
    let mut reps: Vec<_> = YOUDEN_7_4.reps.clone();
    reps.extend(nyr64.reps.iter().cloned());
    reps.extend(THREE_7_3.reps.iter().cloned());
    for rep in &reps {
        let canon = canonical_form(rep).unwrap();
        for _ in 0..100 {
            let mut row: Vec<u8> = (0..rep.k() as u8).collect();
            let mut col: Vec<u8> = (0..rep.n() as u8).collect();
            let mut sym: Vec<u8> = (0..rep.n() as u8).collect();
            row.shuffle(&mut rng);
            col.shuffle(&mut rng);
            sym.shuffle(&mut rng);
            let g = Isotopism::new(row, col, sym).unwrap();
            assert_eq!(canonical_form(&apply(&g, rep).unwrap()).unwrap(), canon);
        }
    }
    println!("criterion 12d: pass orbit constancy on {} representatives x100", reps.len());
}

#[test]
fn criterion_12e_conjugation_involution() {
    let nyr64 = catalog(6, 4, RectangleKind::NearYouden);
    for rep in YOUDEN_7_4.reps.iter().chain(&nyr64.reps).chain(&THREE_7_3.reps) {
        let conj = conjugate(rep).unwrap();
        assert_eq!(conjugate(&conj).unwrap(), *rep);
        // Conjugates stay Latin and keep their intersection structure class
        // on the self-conjugate members.
        if is_self_conjugate(rep).unwrap() {
            assert_eq!(classify_rectangle(&conj), classify_rectangle(rep));
        }
    }
    println!("criterion 12e: pass conjugation involution");
}

#[test]
fn criterion_12f_oracle_equivalence() {
    let cases: &[(usize, usize, RectangleKind)] = &[
        (5, 2, RectangleKind::NearYouden),
        (5, 3, RectangleKind::NearYouden),
        (6, 2, RectangleKind::NearYouden),
        (6, 3, RectangleKind::NearYouden),
        (6, 4, RectangleKind::NearYouden),
        (7, 3, RectangleKind::Youden),
        (7, 4, RectangleKind::Youden),
        (7, 3, RectangleKind::ThreeLambda),
        (7, 4, RectangleKind::ThreeLambda),
    ];
    for &(n, k, kind) in cases {
        let p = Params::new(n, k).unwrap();
        let oracle = brute_enumerate(&p, kind).unwrap();
        let fast = catalog(n, k, kind);
        assert_eq!(oracle.catalog, fast, "({n},{k},{kind:?})");
        println!("criterion 12f: pass oracle equivalence ({n},{k},{})", kind.as_str());
    }
}

#[test]
fn criterion_12g_complementary_near_youden_cells() {
    // Wherever the tables pair (n,k) with (n,n-k), both cells are nonempty.
    for (n, k) in [(5, 2), (6, 2), (7, 2), (8, 3)] {
        let small = catalog(n, k, RectangleKind::NearYouden);
        let large = catalog(n, n - k, RectangleKind::NearYouden);
        assert!(!small.is_empty() && !large.is_empty(), "({n},{k})");
    }
    println!("criterion 12g: pass complementary cells nonempty");
}

#[test]
fn criterion_13_determinism_across_jobs() {
    for (n, k, kind) in [(7, 4, RectangleKind::Youden), (6, 4, RectangleKind::NearYouden)] {
        let p = Params::new(n, k).unwrap();
        let mut texts = Vec::new();
        for (jobs, split) in [(1usize, 2usize), (2, 3), (8, 4)] {
            let cat = enumerate_classes(
                &p,
                kind,
                &SearchConfig { jobs, split_depth: split, ..SearchConfig::default() },
            )
            .unwrap();
            texts.push(write_rectangles(&cat.reps));
        }
        assert_eq!(texts[0], texts[1], "({n},{k})");
        assert_eq!(texts[0], texts[2], "({n},{k})");
        println!("criterion 13: pass byte-identical catalogs for ({n},{k})");
    }
}
