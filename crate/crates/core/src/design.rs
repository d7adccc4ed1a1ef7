//! Rectangle data model and the intersection/covering predicates.
//!
//! A `k x n` Latin rectangle on symbols `0..n-1` has no repeated symbol in
//! any row or column. When all pairwise column intersections have the same
//! size `lambda = k(k-1)/(n-1)` the rectangle is a Youden rectangle; two
//! adjacent sizes give a near Youden rectangle, three give a 3-lambda Latin
//! rectangle.

use std::collections::BTreeMap;

use num_rational::Rational64;

use crate::error::{Error, Result};

/// Maximum symbol count. Column symbol sets are `u64` bit masks, so
/// intersection size is a single popcount.
pub const MAX_N: usize = 64;

/// Validated `(n, k)` pair: `n` columns and symbols, `k` rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Params {
    n: usize,
    k: usize,
}

impl Params {
    /// Rejects `k < 2` and `k > n-2` (for those row counts every Latin
    /// rectangle satisfies the design condition) and `n > 64`.
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::Params(format!("n={n} exceeds the limit {MAX_N}")));
        }
        if n < 2 || k < 2 || k + 2 > n {
            return Err(Error::TrivialParams { n, k });
        }
        Ok(Params { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `k(k-1)/(n-1)` as an exact rational.
    pub fn lambda(&self) -> Rational64 {
        Rational64::new((self.k * (self.k - 1)) as i64, (self.n - 1) as i64)
    }
}

/// `k(k-1)/(n-1)` when it is an integer, `None` otherwise.
pub fn lambda_exact(p: &Params) -> Option<u64> {
    let num = p.k * (p.k - 1);
    let den = p.n - 1;
    (num % den == 0).then(|| (num / den) as u64)
}

/// `(floor(lambda), ceil(lambda))`; equal exactly when lambda is integral.
pub fn lambda_bounds(p: &Params) -> (u64, u64) {
    let num = (p.k * (p.k - 1)) as u64;
    let den = (p.n - 1) as u64;
    let lo = num / den;
    let hi = if num % den == 0 { lo } else { lo + 1 };
    (lo, hi)
}

/// Classification of a rectangle by its column intersection profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RectangleKind {
    /// All column intersections equal the integral lambda.
    Youden,
    /// Lambda non-integral; intersections take only `floor` and `ceil`.
    NearYouden,
    /// Lambda integral; intersections take exactly `lambda-1`, `lambda`,
    /// `lambda+1`, with all three sizes present.
    ThreeLambda,
    /// Latin, but none of the above.
    LatinOnly,
    /// The Latin condition fails.
    NotLatin,
}

impl RectangleKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RectangleKind::Youden => "youden",
            RectangleKind::NearYouden => "near-youden",
            RectangleKind::ThreeLambda => "3-lambda",
            RectangleKind::LatinOnly => "latin-only",
            RectangleKind::NotLatin => "not-latin",
        }
    }
}

/// A `k x n` grid of symbols in `0..n-1`, stored row-major.
///
/// Construction validates structure only (dimensions and symbol range);
/// the Latin condition is a predicate, not an invariant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rectangle {
    params: Params,
    cells: Vec<u8>,
}

impl Rectangle {
    pub fn new(params: Params, cells: Vec<u8>) -> Result<Self> {
        if cells.len() != params.k * params.n {
            return Err(Error::Structure(format!(
                "expected {} cells for a {}x{} rectangle, got {}",
                params.k * params.n,
                params.k,
                params.n,
                cells.len()
            )));
        }
        if let Some(&bad) = cells.iter().find(|&&v| (v as usize) >= params.n) {
            return Err(Error::Structure(format!(
                "symbol {bad} out of range 0..{}",
                params.n
            )));
        }
        Ok(Rectangle { params, cells })
    }

    /// Builds a rectangle from row slices, inferring `n` from the row width.
    pub fn from_rows(rows: &[&[u8]]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Structure("no rows given".into()));
        }
        let n = rows[0].len();
        let k = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Structure("rows have unequal lengths".into()));
        }
        let params = Params::new(n, k)?;
        let mut cells = Vec::with_capacity(k * n);
        for row in rows {
            cells.extend_from_slice(row);
        }
        Rectangle::new(params, cells)
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn k(&self) -> usize {
        self.params.k
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.cells[row * self.params.n + col]
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.cells[row * self.params.n..(row + 1) * self.params.n]
    }

    /// Row-major cell slice; the tie-breaking order used everywhere.
    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    /// Bit mask of the symbols in column `col`.
    pub fn column_mask(&self, col: usize) -> u64 {
        let mut m = 0u64;
        for r in 0..self.params.k {
            m |= 1u64 << self.get(r, col);
        }
        m
    }

    /// First row is `0..n-1` and first column is `0..k-1`.
    pub fn is_normalized(&self) -> bool {
        (0..self.params.n).all(|c| self.get(0, c) as usize == c)
            && (0..self.params.k).all(|r| self.get(r, 0) as usize == r)
    }
}

/// True iff no symbol repeats in any row or any column.
pub fn is_latin(r: &Rectangle) -> bool {
    let (n, k) = (r.n(), r.k());
    for i in 0..k {
        let mut seen = 0u64;
        for c in 0..n {
            let bit = 1u64 << r.get(i, c);
            if seen & bit != 0 {
                return false;
            }
            seen |= bit;
        }
    }
    for c in 0..n {
        let mut seen = 0u64;
        for i in 0..k {
            let bit = 1u64 << r.get(i, c);
            if seen & bit != 0 {
                return false;
            }
            seen |= bit;
        }
    }
    true
}

fn ensure_latin(r: &Rectangle, what: &str) -> Result<()> {
    if is_latin(r) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} requires a Latin rectangle")))
    }
}

/// Number of symbols shared by columns `i` and `j` (`i != j`).
pub fn column_intersection(r: &Rectangle, i: usize, j: usize) -> Result<u32> {
    if i >= r.n() || j >= r.n() {
        return Err(Error::Bounds(format!("column index out of range: {i}, {j}")));
    }
    if i == j {
        return Err(Error::Bounds(format!("columns must be distinct, got {i} twice")));
    }
    Ok((r.column_mask(i) & r.column_mask(j)).count_ones())
}

/// Full symmetric table of pairwise column intersection sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionProfile {
    n: usize,
    sizes: Vec<u32>,
    multiset_summary: BTreeMap<u32, u32>,
}

impl IntersectionProfile {
    /// Intersection size of columns `i` and `j` (diagonal unused, returns 0).
    pub fn size(&self, i: usize, j: usize) -> u32 {
        self.sizes[i * self.n + j]
    }

    /// Map from intersection size to the number of unordered column pairs
    /// attaining it; counts sum to `n(n-1)/2`.
    pub fn multiset_summary(&self) -> &BTreeMap<u32, u32> {
        &self.multiset_summary
    }
}

pub fn intersection_profile(r: &Rectangle) -> Result<IntersectionProfile> {
    ensure_latin(r, "intersection_profile")?;
    let n = r.n();
    let masks: Vec<u64> = (0..n).map(|c| r.column_mask(c)).collect();
    let mut sizes = vec![0u32; n * n];
    let mut summary = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let m = (masks[i] & masks[j]).count_ones();
            sizes[i * n + j] = m;
            sizes[j * n + i] = m;
            *summary.entry(m).or_insert(0) += 1;
        }
    }
    Ok(IntersectionProfile { n, sizes, multiset_summary: summary })
}

pub fn classify_rectangle(r: &Rectangle) -> RectangleKind {
    if !is_latin(r) {
        return RectangleKind::NotLatin;
    }
    let n = r.n();
    let masks: Vec<u64> = (0..n).map(|c| r.column_mask(c)).collect();
    let mut seen = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            seen |= 1u64 << (masks[i] & masks[j]).count_ones();
        }
    }
    match lambda_exact(&r.params()) {
        Some(lam) => {
            if seen == 1u64 << lam {
                RectangleKind::Youden
            } else if lam >= 1 && seen == (1u64 << (lam - 1)) | (1u64 << lam) | (1u64 << (lam + 1))
            {
                // All three adjacent sizes must actually occur.
                RectangleKind::ThreeLambda
            } else {
                RectangleKind::LatinOnly
            }
        }
        None => {
            let (lo, hi) = lambda_bounds(&r.params());
            if seen & !((1u64 << lo) | (1u64 << hi)) == 0 {
                RectangleKind::NearYouden
            } else {
                RectangleKind::LatinOnly
            }
        }
    }
}

/// Covering numbers: for each unordered symbol pair, the number of columns
/// containing both. Pairs never co-occurring are present with count 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageTable {
    counts: BTreeMap<(u8, u8), u32>,
}

impl CoverageTable {
    pub fn get(&self, p: u8, q: u8) -> u32 {
        let key = if p <= q { (p, q) } else { (q, p) };
        self.counts.get(&key).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<(u8, u8), u32> {
        &self.counts
    }

    /// Sum of all covering numbers; equals `n * C(k,2)` since each column
    /// contributes `C(k,2)` pairs.
    pub fn total(&self) -> u64 {
        self.counts.values().map(|&v| v as u64).sum()
    }
}

pub fn covering_table(r: &Rectangle) -> Result<CoverageTable> {
    ensure_latin(r, "covering_table")?;
    let n = r.n();
    let mut counts = BTreeMap::new();
    for p in 0..n as u8 {
        for q in p + 1..n as u8 {
            counts.insert((p, q), 0u32);
        }
    }
    for c in 0..n {
        let mask = r.column_mask(c);
        for p in 0..n as u8 {
            if mask & (1 << p) == 0 {
                continue;
            }
            for q in p + 1..n as u8 {
                if mask & (1 << q) != 0 {
                    *counts.get_mut(&(p, q)).unwrap() += 1;
                }
            }
        }
    }
    Ok(CoverageTable { counts })
}

/// Both sides of the variance identity (Tsuji) linking covering numbers to
/// column intersection sizes, evaluated as exact rationals.
///
/// Left side: `sum over symbol 2-subsets of (l_pq - lambda)^2`. Right side:
/// `sum over column 2-subsets of m^2 - (1 + 2(k-1)^2/(n-2)) m
/// + lambda (1 - 2(k-1)/(n-2) + n k (k-1)/((n-1)(n-2)))`.
pub fn tsuji_sides(r: &Rectangle) -> Result<(Rational64, Rational64)> {
    ensure_latin(r, "tsuji_sides")?;
    let n = r.n() as i64;
    let k = r.k() as i64;
    if n <= 2 {
        return Err(Error::Params("identity needs n > 2".into()));
    }
    let lam = r.params().lambda();

    let cov = covering_table(r)?;
    let mut lhs = Rational64::from_integer(0);
    for &l in cov.counts().values() {
        let d = Rational64::from_integer(l as i64) - lam;
        lhs += d * d;
    }

    let lin = Rational64::from_integer(1)
        + Rational64::new(2 * (k - 1) * (k - 1), n - 2);
    let con = lam
        * (Rational64::from_integer(1) - Rational64::new(2 * (k - 1), n - 2)
            + Rational64::new(n * k * (k - 1), (n - 1) * (n - 2)));
    let profile = intersection_profile(r)?;
    let mut rhs = Rational64::from_integer(0);
    for i in 0..r.n() {
        for j in i + 1..r.n() {
            let m = Rational64::from_integer(profile.size(i, j) as i64);
            rhs += m * m - lin * m + con;
        }
    }
    Ok((lhs, rhs))
}

/// For a near Youden rectangle, the distribution of intersection sizes
/// between column `c` and every other column, as a size -> count map.
pub fn intersection_distribution(r: &Rectangle, c: usize) -> Result<BTreeMap<u32, u32>> {
    if c >= r.n() {
        return Err(Error::Bounds(format!("column index {c} out of range")));
    }
    if classify_rectangle(r) != RectangleKind::NearYouden {
        return Err(Error::Precondition(
            "intersection_distribution requires a near Youden rectangle".into(),
        ));
    }
    let mask = r.column_mask(c);
    let mut dist = BTreeMap::new();
    for j in 0..r.n() {
        if j != c {
            let m = (mask & r.column_mask(j)).count_ones();
            *dist.entry(m).or_insert(0) += 1;
        }
    }
    Ok(dist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_exact(&Params::new(7, 3).unwrap()), Some(1));
        assert_eq!(lambda_exact(&Params::new(7, 4).unwrap()), Some(2));
        assert_eq!(lambda_exact(&Params::new(6, 4).unwrap()), None);
        assert_eq!(lambda_bounds(&Params::new(6, 4).unwrap()), (2, 3));
        assert_eq!(lambda_bounds(&Params::new(7, 3).unwrap()), (1, 1));
        assert_eq!(lambda_bounds(&Params::new(8, 5).unwrap()), (2, 3));
    }

    #[test]
    fn trivial_params_rejected() {
        assert!(matches!(Params::new(7, 1), Err(Error::TrivialParams { .. })));
        assert!(matches!(Params::new(7, 6), Err(Error::TrivialParams { .. })));
        assert!(matches!(Params::new(7, 7), Err(Error::TrivialParams { .. })));
        assert!(matches!(Params::new(65, 5), Err(Error::Params(_))));
    }

    #[test]
    fn latin_condition() {
        assert!(is_latin(&samples::youden_4x13_column_transitive()));
        assert!(is_latin(&samples::near_youden_4x6()));
        // Column 0 repeats symbol 0.
        let bad = Rectangle::from_rows(&[&[0, 1, 2, 3, 4], &[0, 2, 1, 4, 3]]).unwrap();
        assert!(!is_latin(&bad));
        assert_eq!(classify_rectangle(&bad), RectangleKind::NotLatin);
    }

    #[test]
    fn structural_errors() {
        let p = Params::new(5, 2).unwrap();
        assert!(matches!(Rectangle::new(p, vec![0; 9]), Err(Error::Structure(_))));
        assert!(matches!(Rectangle::new(p, vec![9; 10]), Err(Error::Structure(_))));
    }

    #[test]
    fn column_intersections_of_near_youden() {
        let r = samples::near_youden_4x6();
        // First column meets the next three in 2 symbols, the rest in 3.
        assert_eq!(column_intersection(&r, 0, 1).unwrap(), 2);
        assert_eq!(column_intersection(&r, 0, 2).unwrap(), 2);
        assert_eq!(column_intersection(&r, 0, 3).unwrap(), 2);
        assert_eq!(column_intersection(&r, 0, 4).unwrap(), 3);
        assert_eq!(column_intersection(&r, 0, 5).unwrap(), 3);
        assert!(column_intersection(&r, 2, 2).is_err());
        assert!(column_intersection(&r, 0, 6).is_err());
    }

    #[test]
    fn profile_summaries() {
        let y13 = samples::youden_4x13_column_transitive();
        let profile = intersection_profile(&y13).unwrap();
        assert_eq!(profile.multiset_summary(), &BTreeMap::from([(1, 78)]));

        let nyr = samples::near_youden_4x6();
        let profile = intersection_profile(&nyr).unwrap();
        assert_eq!(profile.multiset_summary(), &BTreeMap::from([(2, 9), (3, 6)]));

        let tl = samples::three_lambda_4x13();
        let profile = intersection_profile(&tl).unwrap();
        let sizes: Vec<u32> = profile.multiset_summary().keys().copied().collect();
        assert_eq!(sizes, vec![0, 1, 2]);
    }

    #[test]
    fn classification_of_samples() {
        assert_eq!(
            classify_rectangle(&samples::youden_4x13_column_transitive()),
            RectangleKind::Youden
        );
        assert_eq!(classify_rectangle(&samples::near_youden_4x6()), RectangleKind::NearYouden);
        assert_eq!(classify_rectangle(&samples::three_lambda_4x13()), RectangleKind::ThreeLambda);
    }

    #[test]
    fn covering_tables() {
        let y13 = samples::youden_4x13_column_transitive();
        let cov = covering_table(&y13).unwrap();
        assert!(cov.counts().values().all(|&l| l == 1));
        assert_eq!(cov.total(), 13 * 6);

        let nyr = samples::near_youden_4x6();
        let cov = covering_table(&nyr).unwrap();
        assert!(cov.counts().values().all(|&l| l == 2 || l == 3));
        assert_eq!(cov.total(), 6 * 6);
    }

    #[test]
    fn tsuji_identity_exact() {
        for r in [
            samples::youden_4x13_column_transitive(),
            samples::near_youden_4x6(),
            samples::three_lambda_4x13(),
        ] {
            let (lhs, rhs) = tsuji_sides(&r).unwrap();
            assert_eq!(lhs, rhs);
        }
        let y13 = samples::youden_4x13_column_transitive();
        let (lhs, rhs) = tsuji_sides(&y13).unwrap();
        assert_eq!(lhs, Rational64::from_integer(0));
        assert_eq!(rhs, Rational64::from_integer(0));
    }

    #[test]
    fn distribution_closed_forms() {
        let nyr = samples::near_youden_4x6();
        // n1 = lam2(n-1) - k(k-1) = 3*5 - 12 = 3, n2 = -lam1(n-1) + k(k-1) = 2.
        for c in 0..6 {
            let d = intersection_distribution(&nyr, c).unwrap();
            assert_eq!(d, BTreeMap::from([(2, 3), (3, 2)]));
        }
        // Non-nYR input is a precondition error.
        let y13 = samples::youden_4x13_column_transitive();
        assert!(intersection_distribution(&y13, 0).is_err());
    }

    #[test]
    fn distribution_closed_form_8_5() {
        // n1 = 3*7 - 20 = 1, n2 = -2*7 + 20 = 6 for any (8,5) near Youden
        // rectangle; checked against the formulas, the actual rectangle is
        // exercised by the enumeration tests.
        let p = Params::new(8, 5).unwrap();
        let (lo, hi) = lambda_bounds(&p);
        let n1 = hi as i64 * 7 - 20;
        let n2 = -(lo as i64) * 7 + 20;
        assert_eq!((n1, n2), (1, 6));
        assert_eq!(n1 + n2, 7);
    }
}
