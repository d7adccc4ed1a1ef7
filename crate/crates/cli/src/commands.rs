//! Implementations behind the CLI subcommands. Each returns the process
//! exit code: 0 success, 1 verification mismatch, 2 usage or parse error,
//! 3 guard refusal.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use design_forge_core::arrays::{scan_catalog, ScanSummary, ScanTarget};
use design_forge_core::design::{
    classify_rectangle, covering_table, intersection_profile, lambda_bounds, tsuji_sides, Params,
    Rectangle, RectangleKind,
};
use design_forge_core::enumerate::{
    count_by_aut, develop, enumerate_classes, ClassCatalog, SearchConfig,
};
use design_forge_core::error::Error;
use design_forge_core::isotopy::{
    autotopism_order, conjugation_counts, normalize, ConjugationCounts,
};
use design_forge_core::oracle::{brute_enumerate, brute_enumerate_unguarded};

use crate::format::{parse_rectangles, write_arrays, write_rectangles};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_GUARD: u8 = 3;

/// Default worker count: `--jobs`, else `DESIGN_FORGE_JOBS`, else all cores.
pub fn resolve_jobs(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var("DESIGN_FORGE_JOBS").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(0)
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Guard(_) => EXIT_GUARD,
        _ => EXIT_USAGE,
    }
}

fn usage_err(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn read_catalog(path: &Path) -> Result<Vec<Rectangle>, u8> {
    let text = fs::read_to_string(path).map_err(|e| usage_err(format!("{}: {e}", path.display())))?;
    parse_rectangles(&text).map_err(|e| usage_err(format!("{}: {e}", path.display())))
}

fn write_out(path: &Path, contents: &str) -> Result<(), u8> {
    fs::write(path, contents).map_err(|e| usage_err(format!("{}: {e}", path.display())))
}

/// Renders the machine-parseable summary. Volatile fields (elapsed time,
/// job count) are comment lines so the body is deterministic.
///
/// `self-conjugate` is the class count folded over conjugation, the
/// quantity the published tables carry under that name;
/// `self-conjugate-fixed` is the number of classes actually isotopic to
/// their own conjugate.
pub fn render_summary(
    cat: &ClassCatalog,
    conj: Option<ConjugationCounts>,
    elapsed_seconds: f64,
    jobs: usize,
) -> String {
    use std::fmt::Write as _;
    let mut out = String::new();
    let _ = writeln!(out, "# design-forge enumeration summary");
    let _ = writeln!(out, "# elapsed-seconds {elapsed_seconds:.3}");
    let _ = writeln!(out, "# jobs {jobs}");
    let (lo, hi) = lambda_bounds(&cat.params);
    let _ = writeln!(out, "n {}", cat.params.n());
    let _ = writeln!(out, "k {}", cat.params.k());
    let _ = writeln!(out, "kind {}", kind_flag(cat.kind));
    let _ = writeln!(out, "lambda-min {lo}");
    let _ = writeln!(out, "lambda-max {hi}");
    let _ = writeln!(out, "classes {}", cat.len());
    let report = count_by_aut(cat);
    for (order, count) in &report.by_aut_order {
        let _ = writeln!(out, "aut {order} {count}");
    }
    if let Some(c) = conj {
        let _ = writeln!(out, "self-conjugate {}", c.folded);
        let _ = writeln!(out, "self-conjugate-fixed {}", c.fixed);
    }
    out
}

fn kind_flag(kind: RectangleKind) -> &'static str {
    match kind {
        RectangleKind::Youden => "youden",
        RectangleKind::NearYouden => "nyr",
        RectangleKind::ThreeLambda => "3lambda",
        RectangleKind::LatinOnly => "latin-only",
        RectangleKind::NotLatin => "not-latin",
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_enumerate(
    n: usize,
    k: usize,
    kind: RectangleKind,
    jobs: Option<usize>,
    split_depth: Option<usize>,
    out: Option<PathBuf>,
    summary: Option<PathBuf>,
    self_conjugate: bool,
) -> u8 {
    let params = match Params::new(n, k) {
        Ok(p) => p,
        Err(e) => return usage_err(e),
    };
    let jobs = resolve_jobs(jobs);
    let cfg = SearchConfig {
        jobs,
        split_depth: split_depth.unwrap_or(0),
        ..SearchConfig::default()
    };
    let t0 = Instant::now();
    let cat = match enumerate_classes(&params, kind, &cfg) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_for(&e);
        }
    };
    let sc = if self_conjugate {
        match conjugation_counts(&cat.reps) {
            Ok(c) => Some(c),
            Err(e) => {
                eprintln!("error: {e}");
                return exit_for(&e);
            }
        }
    } else {
        None
    };
    let elapsed = t0.elapsed().as_secs_f64();
    if let Some(path) = &out {
        if write_out(path, &write_rectangles(&cat.reps)).is_err() {
            return EXIT_USAGE;
        }
    }
    let shown_jobs = if jobs > 0 {
        jobs
    } else {
        std::thread::available_parallelism().map(|v| v.get()).unwrap_or(1)
    };
    let text = render_summary(&cat, sc, elapsed, shown_jobs);
    match &summary {
        Some(path) => {
            if write_out(path, &text).is_err() {
                return EXIT_USAGE;
            }
        }
        None => print!("{text}"),
    }
    EXIT_OK
}

fn summarize_counts<I: Iterator<Item = u32>>(values: I) -> String {
    let mut hist: BTreeMap<u32, u32> = BTreeMap::new();
    for v in values {
        *hist.entry(v).or_insert(0) += 1;
    }
    hist.iter()
        .map(|(v, c)| format!("{v}:{c}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn cmd_check(file: &Path, expect: Option<RectangleKind>, with_aut: bool) -> u8 {
    let rects = match read_catalog(file) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let mut mismatch = false;
    for (i, r) in rects.iter().enumerate() {
        let kind = classify_rectangle(r);
        println!("rectangle {} {}x{} {}", i + 1, r.k(), r.n(), kind.as_str());
        if kind == RectangleKind::NotLatin {
            println!("  latin no");
            continue;
        }
        let profile = intersection_profile(r).expect("latin");
        println!(
            "  intersections {}",
            summarize_counts(
                profile
                    .multiset_summary()
                    .iter()
                    .flat_map(|(&v, &c)| std::iter::repeat(v).take(c as usize))
            )
        );
        let cov = covering_table(r).expect("latin");
        println!("  coverings {}", summarize_counts(cov.counts().values().copied()));
        match tsuji_sides(r) {
            Ok((lhs, rhs)) => println!("  tsuji-residual {}", lhs - rhs),
            Err(e) => println!("  tsuji-residual unavailable ({e})"),
        }
        if with_aut {
            let norm = normalize(r).expect("latin");
            match autotopism_order(&norm) {
                Ok(a) => println!("  aut-order {a}"),
                Err(e) => println!("  aut-order unavailable ({e})"),
            }
        }
        if let Some(want) = expect {
            if kind != want {
                mismatch = true;
                println!("  kind-mismatch expected {}", want.as_str());
            }
        }
    }
    if mismatch {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    }
}

fn render_scan(s: &ScanSummary, fold: bool) -> String {
    use std::fmt::Write as _;
    let mut out = String::new();
    let _ = writeln!(out, "target {}", s.target.as_str());
    let _ = writeln!(out, "compatible-rectangles {}", s.compatible_rectangles);
    let _ = writeln!(out, "compatible-columns {}", s.compatible_columns);
    let _ = writeln!(out, "classes {}", s.classes.len());
    let _ = writeln!(out, "classes-folded {}", s.classes_folded.len());
    let blocks = if fold { &s.classes_folded } else { &s.classes };
    if !blocks.is_empty() {
        out.push('\n');
        out.push_str(&write_arrays(blocks));
    }
    out
}

pub fn cmd_scan(file: &Path, targets: &[ScanTarget], fold: bool, out: Option<&Path>) -> u8 {
    let rects = match read_catalog(file) {
        Ok(r) => r,
        Err(code) => return code,
    };
    if rects.is_empty() {
        return usage_err("catalog is empty");
    }
    for (i, r) in rects.iter().enumerate() {
        let kind = classify_rectangle(r);
        if kind != RectangleKind::Youden && kind != RectangleKind::ThreeLambda {
            return usage_err(format!(
                "rectangle {} is {}, scans need a Youden or 3-lambda catalog",
                i + 1,
                kind.as_str()
            ));
        }
    }
    let mut rendered = String::new();
    for (i, &target) in targets.iter().enumerate() {
        let summary = match scan_catalog(&rects, target) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {e}");
                return exit_for(&e);
            }
        };
        if i > 0 {
            rendered.push('\n');
        }
        rendered.push_str(&render_scan(&summary, fold));
    }
    match out {
        Some(path) => {
            if write_out(path, &rendered).is_err() {
                return EXIT_USAGE;
            }
        }
        None => print!("{rendered}"),
    }
    EXIT_OK
}

pub fn cmd_develop(n: usize, first_column: &str) -> u8 {
    let residues: Result<Vec<u64>, _> =
        first_column.split(',').map(|t| t.trim().parse::<u64>()).collect();
    let residues = match residues {
        Ok(r) => r,
        Err(e) => return usage_err(format!("bad --first-column: {e}")),
    };
    let rect = match develop(&residues, n) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_for(&e);
        }
    };
    print!("{}", write_rectangles(std::slice::from_ref(&rect)));
    println!("kind {}", classify_rectangle(&rect).as_str());
    let norm = normalize(&rect).expect("developments are Latin");
    match autotopism_order(&norm) {
        Ok(a) => println!("aut-order {a}"),
        Err(e) => println!("aut-order unavailable ({e})"),
    }
    EXIT_OK
}

pub fn cmd_oracle(
    n: usize,
    k: usize,
    kind: RectangleKind,
    catalog: &Path,
    allow_large: bool,
) -> u8 {
    let params = match Params::new(n, k) {
        Ok(p) => p,
        Err(e) => return usage_err(e),
    };
    let fast = match read_catalog(catalog) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let result = if allow_large {
        brute_enumerate_unguarded(&params, kind)
    } else {
        brute_enumerate(&params, kind)
    };
    let oracle = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_for(&e);
        }
    };
    let want: Vec<&Rectangle> = oracle.catalog.reps.iter().collect();
    let got: Vec<&Rectangle> = fast.iter().collect();
    let missing: Vec<_> = want.iter().filter(|r| !got.contains(r)).collect();
    let extra: Vec<_> = got.iter().filter(|r| !want.contains(r)).collect();
    println!("oracle-classes {}", want.len());
    println!("catalog-classes {}", got.len());
    println!("missing {}", missing.len());
    println!("extra {}", extra.len());
    if missing.is_empty() && extra.is_empty() {
        println!("verdict identical");
        EXIT_OK
    } else {
        for r in missing {
            println!("missing-rep {:?}", r.cells());
        }
        for r in extra {
            println!("extra-rep {:?}", r.cells());
        }
        println!("verdict mismatch");
        EXIT_MISMATCH
    }
}
