//! Isomorph-free exhaustive generation of Youden, near Youden and 3-lambda
//! Latin rectangles by column extension, plus difference-set development.
//!
//! The search walks normalized rectangles column by column (column `t` has
//! first-row entry `t`), pruning prefixes that provably cannot start the
//! column-major least normalized member of their class. Completions are
//! reduced to canonical form and merged by set union, so the catalog is
//! exact regardless of pruning strength; pruning only controls tree size.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::design::{
    classify_rectangle, lambda_bounds, lambda_exact, Params, Rectangle, RectangleKind,
};
use crate::error::{Error, Result};
use crate::isotopy::{autotopism_order, canonical_form};

const UNSET: u8 = u8::MAX;

/// Intersection window `(lo, hi)` a kind imposes on every column pair, and
/// the covering-number cap used for culling (none for 3-lambda).
fn kind_window(p: &Params, kind: RectangleKind) -> Result<(u8, u8, Option<u8>)> {
    match kind {
        RectangleKind::Youden => match lambda_exact(p) {
            Some(lam) => Ok((lam as u8, lam as u8, Some(lam as u8))),
            None => Err(Error::KindMismatch(format!(
                "no Youden rectangles for n={}, k={}: lambda is not an integer",
                p.n(),
                p.k()
            ))),
        },
        RectangleKind::NearYouden => {
            if lambda_exact(p).is_some() {
                return Err(Error::KindMismatch(format!(
                    "near Youden rectangles need non-integral lambda; n={}, k={} has an integer",
                    p.n(),
                    p.k()
                )));
            }
            let (lo, hi) = lambda_bounds(p);
            Ok((lo as u8, hi as u8, Some(hi as u8)))
        }
        RectangleKind::ThreeLambda => match lambda_exact(p) {
            Some(lam) if lam >= 1 => Ok((lam as u8 - 1, lam as u8 + 1, None)),
            Some(_) => Err(Error::KindMismatch(
                "3-lambda rectangles need lambda >= 1".into(),
            )),
            None => Err(Error::KindMismatch(format!(
                "3-lambda rectangles need integral lambda; n={}, k={} has none",
                p.n(),
                p.k()
            ))),
        },
        other => Err(Error::KindMismatch(format!(
            "cannot enumerate kind {}",
            other.as_str()
        ))),
    }
}

/// A rectangle under construction: `t` complete columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialRectangle {
    params: Params,
    kind: RectangleKind,
    cols: Vec<Vec<u8>>,
}

impl PartialRectangle {
    /// Validates the Latin condition on the prefix and the kind's
    /// intersection window on every column pair.
    pub fn new(params: Params, kind: RectangleKind, cols: Vec<Vec<u8>>) -> Result<Self> {
        let (lo, hi, _) = kind_window(&params, kind)?;
        let (n, k) = (params.n(), params.k());
        if cols.len() > n {
            return Err(Error::Structure("more columns than n".into()));
        }
        let mut masks = Vec::with_capacity(cols.len());
        for col in &cols {
            if col.len() != k {
                return Err(Error::Structure("column height must be k".into()));
            }
            let mut m = 0u64;
            for &s in col {
                if (s as usize) >= n {
                    return Err(Error::Structure(format!("symbol {s} out of range")));
                }
                if m >> s & 1 != 0 {
                    return Err(Error::Structure("repeated symbol in a column".into()));
                }
                m |= 1 << s;
            }
            masks.push(m);
        }
        for row in 0..k {
            let mut seen = 0u64;
            for col in &cols {
                let s = col[row];
                if seen >> s & 1 != 0 {
                    return Err(Error::Structure("repeated symbol in a row".into()));
                }
                seen |= 1 << s;
            }
        }
        for i in 0..masks.len() {
            for j in i + 1..masks.len() {
                let m = (masks[i] & masks[j]).count_ones() as u8;
                if m < lo || m > hi {
                    return Err(Error::Structure(format!(
                        "columns {i} and {j} intersect in {m} symbols, outside {lo}..={hi}"
                    )));
                }
            }
        }
        Ok(PartialRectangle { params, kind, cols })
    }

    /// The one-column normalized root: `(0, 1, .., k-1)`.
    pub fn root(params: Params, kind: RectangleKind) -> Result<Self> {
        let col: Vec<u8> = (0..params.k() as u8).collect();
        PartialRectangle::new(params, kind, vec![col])
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn kind(&self) -> RectangleKind {
        self.kind
    }

    pub fn columns(&self) -> &[Vec<u8>] {
        &self.cols
    }

    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    /// First-row entries are `0..t-1` and the first column is `0..k-1`.
    pub fn is_normalized_prefix(&self) -> bool {
        self.cols.iter().enumerate().all(|(j, col)| col[0] as usize == j)
            && !self.cols.is_empty()
            && self.cols[0].iter().enumerate().all(|(i, &s)| s as usize == i)
    }

    fn to_rectangle(&self) -> Result<Rectangle> {
        let (n, k) = (self.params.n(), self.params.k());
        if self.cols.len() != n {
            return Err(Error::Structure("rectangle is not complete".into()));
        }
        let mut cells = vec![0u8; k * n];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, &s) in col.iter().enumerate() {
                cells[i * n + j] = s;
            }
        }
        Rectangle::new(self.params, cells)
    }
}

/// All one-column extensions of `p` satisfying the Latin condition and the
/// kind's intersection window, in lexicographic column order.
pub fn extend_column(p: &PartialRectangle) -> Result<Vec<PartialRectangle>> {
    let (n, k) = (p.params.n(), p.params.k());
    let t = p.cols.len();
    if t >= n {
        return Err(Error::Precondition("rectangle already has n columns".into()));
    }
    let (lo, hi, _) = kind_window(&p.params, p.kind)?;
    let masks: Vec<u64> = p
        .cols
        .iter()
        .map(|col| col.iter().fold(0u64, |m, &s| m | 1 << s))
        .collect();
    let mut row_used = vec![0u64; k];
    for col in &p.cols {
        for (i, &s) in col.iter().enumerate() {
            row_used[i] |= 1 << s;
        }
    }

    let mut out = Vec::new();
    let mut col = vec![0u8; k];
    let mut inter = vec![0u8; t];
    fn rec(
        row: usize,
        k: usize,
        n: usize,
        lo: u8,
        hi: u8,
        colmask: u64,
        col: &mut [u8],
        inter: &mut [u8],
        masks: &[u64],
        row_used: &[u64],
        out: &mut Vec<Vec<u8>>,
    ) {
        if row == k {
            if inter.iter().all(|&m| m >= lo) {
                out.push(col.to_vec());
            }
            return;
        }
        let remaining = (k - row) as u8;
        if inter.iter().any(|&m| m + remaining < lo) {
            return;
        }
        for s in 0..n as u8 {
            let bit = 1u64 << s;
            if colmask & bit != 0 || row_used[row] & bit != 0 {
                continue;
            }
            let mut ok = true;
            for (j, m) in masks.iter().enumerate() {
                if m & bit != 0 {
                    if inter[j] + 1 > hi {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            for (j, m) in masks.iter().enumerate() {
                if m & bit != 0 {
                    inter[j] += 1;
                }
            }
            col[row] = s;
            rec(row + 1, k, n, lo, hi, colmask | bit, col, inter, masks, row_used, out);
            for (j, m) in masks.iter().enumerate() {
                if m & bit != 0 {
                    inter[j] -= 1;
                }
            }
        }
    }
    let mut raw = Vec::new();
    rec(0, k, n, lo, hi, 0, &mut col, &mut inter, &masks, &row_used, &mut raw);
    for new_col in raw {
        let mut cols = p.cols.clone();
        cols.push(new_col);
        out.push(PartialRectangle { params: p.params, kind: p.kind, cols });
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum PrefixMode {
    /// Decide whether some isotopic normalized prefix is strictly smaller.
    Test,
    /// Compute the exact minimum (partial canonical form).
    Minimize,
}

/// Minimization of a normalized prefix over all isotopisms onto normalized
/// prefixes, reading the `t` columns column-major (first row skipped: it is
/// `0..t-1` on both sides).
///
/// A seed fixes which old column becomes image column 0 and which old row
/// becomes image row 0; the image position of an old column is then the
/// relabeled row-`r0` entry, so placed-column row-`r0` symbols must map
/// onto `0..t-1` and the chosen column's symbols onto `0..k-1` (the seed is
/// skipped when those two sets cannot align). Rows and position symbols are
/// chosen lazily during the scan; free labels are forced greedily.
struct PrefixCanon<'a> {
    cols: &'a [Vec<u8>],
    t: usize,
    k: usize,
    n: usize,
    mode: PrefixMode,
    best: Vec<u8>,
    cur: Vec<u8>,
    found_smaller: bool,
    // per-seed state
    c0: usize,
    c0_mask: u64,
    w_mask: u64,
    col_of_r0sym: [u8; 64],
    sym_img: [u8; 64],
    lab_sym: [u8; 64],
    lab_used: u64,
    row_of: [u8; 64],
    rows_used: u64,
}

impl<'a> PrefixCanon<'a> {
    fn new(cols: &'a [Vec<u8>], n: usize, mode: PrefixMode) -> Self {
        let t = cols.len();
        let k = cols[0].len();
        let own: Vec<u8> = (0..t).flat_map(|q| cols[q][1..].iter().copied()).collect();
        PrefixCanon {
            cols,
            t,
            k,
            n,
            mode,
            cur: own.clone(),
            best: own,
            found_smaller: false,
            c0: 0,
            c0_mask: 0,
            w_mask: 0,
            col_of_r0sym: [UNSET; 64],
            sym_img: [UNSET; 64],
            lab_sym: [UNSET; 64],
            lab_used: 0,
            row_of: [UNSET; 64],
            rows_used: 0,
        }
    }

    fn run(&mut self) {
        for c0 in 0..self.t {
            for r0 in 0..self.k {
                if !self.seed(c0, r0) {
                    continue;
                }
                self.dfs_pos(1, std::cmp::Ordering::Equal);
                if self.mode == PrefixMode::Test && self.found_smaller {
                    return;
                }
            }
        }
    }

    fn seed(&mut self, c0: usize, r0: usize) -> bool {
        let c0_mask: u64 = self.cols[c0].iter().fold(0, |m, &s| m | 1 << s);
        let mut w_mask = 0u64;
        self.col_of_r0sym = [UNSET; 64];
        for (c, col) in self.cols.iter().enumerate() {
            w_mask |= 1 << col[r0];
            self.col_of_r0sym[col[r0] as usize] = c as u8;
        }
        // Placed columns land on positions 0..t-1 and the chosen column's
        // symbols on labels 0..k-1; the label classes only align when one
        // of the two sets contains the other.
        if self.t <= self.k {
            if w_mask & !c0_mask != 0 {
                return false;
            }
        } else if c0_mask & !w_mask != 0 {
            return false;
        }
        self.c0 = c0;
        self.c0_mask = c0_mask;
        self.w_mask = w_mask;
        self.sym_img = [UNSET; 64];
        self.lab_sym = [UNSET; 64];
        self.lab_used = 1;
        self.row_of = [UNSET; 64];
        self.row_of[0] = r0 as u8;
        self.rows_used = 1 << r0;
        let s0 = self.cols[c0][r0];
        self.sym_img[s0 as usize] = 0;
        self.lab_sym[0] = s0;
        true
    }

    /// Valid labels for symbol `y`: in `0..t` iff `y` is a row-`r0` symbol
    /// of the prefix, and in `0..k` iff `y` lies in the chosen column.
    fn free_label(&self, y: u8, extra: u64) -> Option<u8> {
        let low_t = (1u64 << self.t) - 1;
        let low_k = (1u64 << self.k) - 1;
        let mut valid = (1u64 << self.n) - 1;
        valid &= if self.w_mask >> y & 1 != 0 { low_t } else { !low_t };
        valid &= if self.c0_mask >> y & 1 != 0 { low_k } else { !low_k };
        valid &= !(self.lab_used | extra);
        (valid != 0).then(|| valid.trailing_zeros() as u8)
    }

    fn assign(&mut self, y: u8, v: u8) {
        self.sym_img[y as usize] = v;
        self.lab_sym[v as usize] = y;
        self.lab_used |= 1 << v;
    }

    fn unassign(&mut self, y: u8, v: u8) {
        self.sym_img[y as usize] = UNSET;
        self.lab_sym[v as usize] = UNSET;
        self.lab_used &= !(1 << v);
    }

    /// `ord` is the comparison of the emitted prefix against `best`
    /// (`Equal` or `Less`; `Greater` branches are pruned).
    fn dfs_pos(&mut self, q: usize, ord: std::cmp::Ordering) {
        if q == self.t {
            if ord == std::cmp::Ordering::Less {
                if self.mode == PrefixMode::Test {
                    self.found_smaller = true;
                } else if self.cur < self.best {
                    self.best.copy_from_slice(&self.cur);
                }
            }
            return;
        }
        let holder = self.lab_sym[q];
        if holder != UNSET {
            let col = self.col_of_r0sym[holder as usize];
            debug_assert_ne!(col, UNSET);
            self.dfs_cell(q, col as usize, 1, ord);
        } else {
            for y in 0..self.n as u8 {
                if self.w_mask >> y & 1 == 0 || self.sym_img[y as usize] != UNSET {
                    continue;
                }
                // Label q: q < t by construction; class against c0 membership.
                if (self.c0_mask >> y & 1 != 0) != (q < self.k) {
                    continue;
                }
                self.assign(y, q as u8);
                let col = self.col_of_r0sym[y as usize];
                self.dfs_cell(q, col as usize, 1, ord);
                self.unassign(y, q as u8);
                if self.mode == PrefixMode::Test && self.found_smaller {
                    return;
                }
            }
        }
    }

    fn dfs_cell(&mut self, q: usize, col: usize, i: usize, ord: std::cmp::Ordering) {
        if i == self.k {
            self.dfs_pos(q + 1, ord);
            return;
        }
        let idx = q * (self.k - 1) + (i - 1);
        let bound = self.best[idx];
        if self.row_of[i] == UNSET {
            for old_r in 0..self.k {
                if self.rows_used >> old_r & 1 != 0 {
                    continue;
                }
                // Assigning image row i pins the chosen column's symbol in
                // that old row to label i.
                let yc = self.cols[self.c0][old_r];
                let cur_img = self.sym_img[yc as usize];
                let fresh = if cur_img == UNSET {
                    if self.lab_sym[i] != UNSET {
                        continue;
                    }
                    // Class check: i < t iff yc is a row-r0 symbol.
                    if (self.w_mask >> yc & 1 != 0) != (i < self.t) {
                        continue;
                    }
                    self.assign(yc, i as u8);
                    true
                } else if cur_img as usize != i {
                    continue;
                } else {
                    false
                };
                self.row_of[i] = old_r as u8;
                self.rows_used |= 1 << old_r;
                self.emit_cell(q, col, i, old_r, bound, idx, ord);
                self.rows_used &= !(1 << old_r);
                self.row_of[i] = UNSET;
                if fresh {
                    self.unassign(yc, i as u8);
                }
                if self.mode == PrefixMode::Test && self.found_smaller {
                    return;
                }
            }
        } else {
            let old_r = self.row_of[i] as usize;
            self.emit_cell(q, col, i, old_r, bound, idx, ord);
        }
    }

    fn emit_cell(
        &mut self,
        q: usize,
        col: usize,
        i: usize,
        old_r: usize,
        bound: u8,
        idx: usize,
        ord: std::cmp::Ordering,
    ) {
        use std::cmp::Ordering::*;
        let z = self.cols[col][old_r];
        let known = self.sym_img[z as usize];
        let v = if known != UNSET {
            known
        } else {
            match self.free_label(z, 0) {
                Some(v) => v,
                None => return,
            }
        };
        let next = match ord {
            Less => Less,
            Equal => {
                if v > bound {
                    return;
                } else if v < bound {
                    if self.mode == PrefixMode::Test {
                        self.found_smaller = true;
                        return;
                    }
                    Less
                } else {
                    Equal
                }
            }
            Greater => unreachable!(),
        };
        if known == UNSET {
            self.assign(z, v);
        }
        self.cur[idx] = v;
        self.dfs_cell(q, col, i + 1, next);
        if known == UNSET {
            self.unassign(z, v);
        }
    }
}

/// Sound pruning test: false only when `p` provably cannot be a prefix of
/// the search's distinguished representative of any class (some isotopic
/// normalized prefix is strictly smaller in column-major order). Requires a
/// normalized prefix.
pub fn accepts_prefix(p: &PartialRectangle) -> Result<bool> {
    if p.is_empty() {
        return Err(Error::Precondition("prefix must be nonempty".into()));
    }
    if !p.is_normalized_prefix() {
        return Err(Error::Precondition("accepts_prefix expects a normalized prefix".into()));
    }
    Ok(accepts_prefix_cols(&p.cols, p.params.n()))
}

fn accepts_prefix_cols(cols: &[Vec<u8>], n: usize) -> bool {
    if cols.len() <= 1 {
        return true;
    }
    let mut canon = PrefixCanon::new(cols, n, PrefixMode::Test);
    canon.run();
    !canon.found_smaller
}

/// Column-major cell string of the least isotopic normalized prefix; the
/// dedup key for partial-object reduction.
pub fn partial_canonical_key(p: &PartialRectangle) -> Result<Vec<u8>> {
    if p.is_empty() || !p.is_normalized_prefix() {
        return Err(Error::Precondition("partial canonical form expects a normalized prefix".into()));
    }
    let mut canon = PrefixCanon::new(&p.cols, p.params.n(), PrefixMode::Minimize);
    canon.run();
    Ok(canon.best)
}

/// Knobs for the parallel search.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Worker count; 0 means all available cores.
    pub jobs: usize,
    /// Prefix length at which the tree is split into independent jobs;
    /// 0 picks a default.
    pub split_depth: usize,
    /// Prefix lengths at which the frontier is reduced by partial-object
    /// isotopism; `None` defaults to `{ceil(n/2)}`. Only depths up to the
    /// split depth apply, and the reduction is a no-op while pruning is on
    /// (accepted prefixes are already canonical).
    pub dedup_depths: Option<BTreeSet<usize>>,
    /// Disable to run the accept-all search (final canonicalization still
    /// guarantees an exact catalog); exists so tests can check that pruning
    /// never changes results.
    pub prune: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { jobs: 0, split_depth: 0, dedup_depths: None, prune: true }
    }
}

/// One isotopism class per representative, sorted, with autotopism orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCatalog {
    pub params: Params,
    pub kind: RectangleKind,
    pub reps: Vec<Rectangle>,
    pub aut_orders: Vec<u64>,
}

impl ClassCatalog {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// Histogram of autotopism group orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub total: u64,
    pub by_aut_order: BTreeMap<u64, u64>,
}

pub fn count_by_aut(cat: &ClassCatalog) -> CountReport {
    let mut by = BTreeMap::new();
    for &a in &cat.aut_orders {
        *by.entry(a).or_insert(0u64) += 1;
    }
    CountReport { total: cat.reps.len() as u64, by_aut_order: by }
}

/// Depth-first search state over normalized prefixes.
struct Searcher {
    n: usize,
    k: usize,
    kind: RectangleKind,
    lo: u8,
    hi: u8,
    cov_cap: Option<u8>,
    prune: bool,
    collect_depth: usize,
    cols: Vec<Vec<u8>>,
    col_masks: Vec<u64>,
    row_used: Vec<u64>,
    sym_count: Vec<u8>,
    sym_cols: Vec<u64>,
    cov: Vec<u8>,
    params: Params,
    out: Vec<Rectangle>,
    frontier: Vec<Vec<Vec<u8>>>,
}

impl Searcher {
    fn from_prefix(
        params: Params,
        kind: RectangleKind,
        prefix: &[Vec<u8>],
        prune: bool,
    ) -> Result<Searcher> {
        let (lo, hi, cov_cap) = kind_window(&params, kind)?;
        let (n, k) = (params.n(), params.k());
        let mut s = Searcher {
            n,
            k,
            kind,
            lo,
            hi,
            cov_cap,
            prune,
            collect_depth: usize::MAX,
            cols: Vec::with_capacity(n),
            col_masks: Vec::with_capacity(n),
            row_used: vec![0; k],
            sym_count: vec![0; n],
            sym_cols: vec![0; n],
            cov: vec![0; n * n],
            params,
            out: Vec::new(),
            frontier: Vec::new(),
        };
        for col in prefix {
            s.push_column(col);
        }
        Ok(s)
    }

    fn push_column(&mut self, col: &[u8]) {
        let t = self.cols.len();
        let mut mask = 0u64;
        for (i, &sym) in col.iter().enumerate() {
            mask |= 1 << sym;
            self.row_used[i] |= 1 << sym;
            self.sym_count[sym as usize] += 1;
            self.sym_cols[sym as usize] |= 1 << t;
            for &other in &col[..i] {
                self.cov[sym as usize * self.n + other as usize] += 1;
                self.cov[other as usize * self.n + sym as usize] += 1;
            }
        }
        self.col_masks.push(mask);
        self.cols.push(col.to_vec());
    }

    fn pop_column(&mut self) {
        let col = self.cols.pop().unwrap();
        self.col_masks.pop();
        let t = self.cols.len();
        for (i, &sym) in col.iter().enumerate() {
            self.row_used[i] &= !(1 << sym);
            self.sym_count[sym as usize] -= 1;
            self.sym_cols[sym as usize] &= !(1 << t);
            for &other in &col[..i] {
                self.cov[sym as usize * self.n + other as usize] -= 1;
                self.cov[other as usize * self.n + sym as usize] -= 1;
            }
        }
    }

    /// Every symbol still needs `k - count` appearances and each remaining
    /// column can host it at most once; for Youden and near Youden runs the
    /// remaining covering demand must also fit.
    fn feasible(&self) -> bool {
        let t = self.cols.len();
        let left = (self.n - t) as u8;
        for s in 0..self.n {
            if self.k as u8 - self.sym_count[s] > left {
                return false;
            }
        }
        if let Some(_cap) = self.cov_cap {
            let floor_cov = self.lo;
            for p in 0..self.n {
                let rem_p = self.k as u8 - self.sym_count[p];
                for q in p + 1..self.n {
                    let have = self.cov[p * self.n + q];
                    if have >= floor_cov {
                        continue;
                    }
                    let need = floor_cov - have;
                    let rem_q = self.k as u8 - self.sym_count[q];
                    if need > rem_p.min(rem_q) || need > left {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn search(&mut self) {
        let t = self.cols.len();
        if t == self.n {
            self.emit();
            return;
        }
        let mut col = [0u8; 64];
        let mut inter = [0u8; 64];
        let top = t as u8;
        col[0] = top;
        for j in 0..t {
            inter[j] = (self.col_masks[j] >> top & 1) as u8;
        }
        // The next column's first-row entry is t; it must still be usable.
        if self.sym_count[t] < self.k as u8 {
            self.cell_dfs(1, 1 << top, &mut col, &mut inter);
        }
    }

    fn cell_dfs(&mut self, row: usize, colmask: u64, col: &mut [u8; 64], inter: &mut [u8; 64]) {
        let t = self.cols.len();
        if row == self.k {
            for j in 0..t {
                if inter[j] < self.lo {
                    return;
                }
            }
            self.commit(col);
            return;
        }
        let remaining = (self.k - row) as u8;
        for j in 0..t {
            if inter[j] + remaining < self.lo {
                return;
            }
        }
        let mut avail = !self.row_used[row] & !colmask & ((1u64 << self.n) - 1);
        while avail != 0 {
            let s = avail.trailing_zeros() as usize;
            avail &= avail - 1;
            if self.sym_count[s] >= self.k as u8 {
                continue;
            }
            if let Some(cap) = self.cov_cap {
                let mut m = colmask;
                let mut ok = true;
                while m != 0 {
                    let other = m.trailing_zeros() as usize;
                    m &= m - 1;
                    if self.cov[s * self.n + other] >= cap {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
            }
            let occ = self.sym_cols[s];
            let mut m = occ;
            let mut ok = true;
            while m != 0 {
                let j = m.trailing_zeros() as usize;
                m &= m - 1;
                if inter[j] >= self.hi {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            let mut m = occ;
            while m != 0 {
                let j = m.trailing_zeros() as usize;
                m &= m - 1;
                inter[j] += 1;
            }
            col[row] = s as u8;
            self.cell_dfs(row + 1, colmask | 1 << s, col, inter);
            let mut m = occ;
            while m != 0 {
                let j = m.trailing_zeros() as usize;
                m &= m - 1;
                inter[j] -= 1;
            }
        }
    }

    /// A complete column within the window: push it, run the cheap culls
    /// and the canonicity test, then recurse or record.
    fn commit(&mut self, col: &[u8; 64]) {
        let t = self.cols.len();
        self.push_column(&col[..self.k]);
        let keep = self.feasible() && (!self.prune || accepts_prefix_cols(&self.cols, self.n));
        if keep {
            if t + 1 == self.collect_depth {
                self.frontier.push(self.cols.clone());
            } else {
                self.search();
            }
        }
        self.pop_column();
    }

    fn emit(&mut self) {
        let p = PartialRectangle {
            params: self.params,
            kind: self.kind,
            cols: self.cols.clone(),
        };
        let rect = p.to_rectangle().expect("complete prefix");
        if self.kind == RectangleKind::ThreeLambda
            && classify_rectangle(&rect) != RectangleKind::ThreeLambda
        {
            // Window respected but not all three sizes present.
            return;
        }
        debug_assert_eq!(classify_rectangle(&rect), self.kind);
        let canon = canonical_form(&rect).expect("completion is Latin");
        self.out.push(canon.into_rect());
    }
}

fn resolve_jobs(jobs: usize) -> usize {
    if jobs > 0 {
        jobs
    } else {
        std::thread::available_parallelism().map(|v| v.get()).unwrap_or(1)
    }
}

/// Exhaustive, exact enumeration of the isotopism classes of the given kind:
/// one canonical representative per class, sorted, with autotopism orders.
pub fn enumerate_classes(
    p: &Params,
    kind: RectangleKind,
    cfg: &SearchConfig,
) -> Result<ClassCatalog> {
    kind_window(p, kind)?;
    let n = p.n();
    let jobs = resolve_jobs(cfg.jobs);
    let split_depth = if cfg.split_depth > 0 {
        cfg.split_depth.min(n - 1)
    } else {
        4.min(n - 1)
    };
    let dedup_depths = cfg
        .dedup_depths
        .clone()
        .unwrap_or_else(|| BTreeSet::from([n.div_ceil(2)]));

    // Breadth-first to the split depth.
    let root: Vec<Vec<u8>> = vec![(0..p.k() as u8).collect()];
    let mut frontier = vec![root];
    let mut depth = 1;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Params(format!("cannot build thread pool: {e}")))?;
    while depth < split_depth && !frontier.is_empty() {
        let kindc = kind;
        let pc = *p;
        let prune = cfg.prune;
        let mut next: Vec<Vec<Vec<u8>>> = pool.install(|| {
            frontier
                .par_iter()
                .map(|prefix| -> Result<Vec<Vec<Vec<u8>>>> {
                    let mut s = Searcher::from_prefix(pc, kindc, prefix, prune)?;
                    s.collect_depth = prefix.len() + 1;
                    s.search();
                    Ok(s.frontier)
                })
                .collect::<Result<Vec<_>>>()
        })?
        .into_iter()
        .flatten()
        .collect();
        depth += 1;
        if !cfg.prune && dedup_depths.contains(&depth) {
            next = dedup_frontier(p, kind, next)?;
        }
        frontier = next;
    }

    // Independent jobs below the split depth.
    let kindc = kind;
    let pc = *p;
    let prune = cfg.prune;
    let mut reps: Vec<Rectangle> = pool.install(|| {
        frontier
            .par_iter()
            .map(|prefix| -> Result<Vec<Rectangle>> {
                let mut s = Searcher::from_prefix(pc, kindc, prefix, prune)?;
                s.search();
                Ok(s.out)
            })
            .collect::<Result<Vec<_>>>()
    })?
    .into_iter()
    .flatten()
    .collect();

    reps.sort();
    reps.dedup();
    let aut_orders: Vec<u64> = pool.install(|| {
        reps.par_iter()
            .map(|r| autotopism_order(r))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(ClassCatalog { params: *p, kind, reps, aut_orders })
}

/// Keeps one member per partial-isotopism class (the lexicographically
/// least of each group).
fn dedup_frontier(
    p: &Params,
    kind: RectangleKind,
    frontier: Vec<Vec<Vec<u8>>>,
) -> Result<Vec<Vec<Vec<u8>>>> {
    let mut groups: BTreeMap<Vec<u8>, Vec<Vec<u8>>> = BTreeMap::new();
    for cols in frontier {
        let partial = PartialRectangle { params: *p, kind, cols };
        let key = partial_canonical_key(&partial)?;
        match groups.get_mut(&key) {
            Some(existing) if *existing <= partial.cols => {}
            _ => {
                groups.insert(key, partial.cols);
            }
        }
    }
    Ok(groups.into_values().collect())
}

/// Develops a first column into a full rectangle: column `j` adds `j` to
/// every entry mod `n`. A difference-set first column yields a Youden
/// rectangle whose autotopism group contains the order-`n` cyclic shift.
pub fn develop(first_col: &[u64], n: usize) -> Result<Rectangle> {
    if n < 2 || n > 64 {
        return Err(Error::Params(format!("n={n} out of range")));
    }
    let mut residues: Vec<u8> = first_col.iter().map(|&x| (x % n as u64) as u8).collect();
    residues.sort_unstable();
    let k = residues.len();
    if residues.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Params("first column has a repeated residue mod n".into()));
    }
    let params = Params::new(n, k)?;
    let mut cells = vec![0u8; k * n];
    for (i, &x) in residues.iter().enumerate() {
        for j in 0..n {
            cells[i * n + j] = ((x as usize + j) % n) as u8;
        }
    }
    Rectangle::new(params, cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{classify_rectangle, RectangleKind};
    use crate::isotopy;

    fn quick_cfg() -> SearchConfig {
        SearchConfig { jobs: 2, ..SearchConfig::default() }
    }

    #[test]
    fn youden_7_3_unique() {
        let p = Params::new(7, 3).unwrap();
        let cat = enumerate_classes(&p, RectangleKind::Youden, &quick_cfg()).unwrap();
        assert_eq!(cat.len(), 1);
        assert_eq!(cat.aut_orders, vec![21]);
    }

    #[test]
    fn youden_7_4_six_classes() {
        let p = Params::new(7, 4).unwrap();
        let cat = enumerate_classes(&p, RectangleKind::Youden, &quick_cfg()).unwrap();
        assert_eq!(cat.len(), 6);
        let report = count_by_aut(&cat);
        assert_eq!(report.total, 6);
        assert_eq!(report.by_aut_order, BTreeMap::from([(1, 2), (3, 3), (21, 1)]));
        for rep in &cat.reps {
            assert_eq!(classify_rectangle(rep), RectangleKind::Youden);
            assert!(rep.is_normalized());
            assert_eq!(isotopy::canonical_form(rep).unwrap().rect(), rep);
        }
    }

    #[test]
    fn near_youden_small_counts() {
        for (n, k, classes, auts) in [
            (5usize, 2usize, 1usize, vec![10u64]),
            (5, 3, 2, vec![2, 10]),
            (6, 2, 2, vec![12, 36]),
            (6, 3, 2, vec![6, 6]),
        ] {
            let p = Params::new(n, k).unwrap();
            let cat = enumerate_classes(&p, RectangleKind::NearYouden, &quick_cfg()).unwrap();
            assert_eq!(cat.len(), classes, "({n},{k})");
            let mut sorted = cat.aut_orders.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, auts, "({n},{k})");
        }
    }

    #[test]
    fn near_youden_6_4() {
        let p = Params::new(6, 4).unwrap();
        let cat = enumerate_classes(&p, RectangleKind::NearYouden, &quick_cfg()).unwrap();
        assert_eq!(cat.len(), 34);
        let report = count_by_aut(&cat);
        assert_eq!(
            report.by_aut_order,
            BTreeMap::from([(1, 9), (2, 11), (4, 5), (6, 3), (12, 4), (18, 1), (36, 1)])
        );
    }

    #[test]
    fn three_lambda_7_3() {
        let p = Params::new(7, 3).unwrap();
        let cat = enumerate_classes(&p, RectangleKind::ThreeLambda, &quick_cfg()).unwrap();
        assert_eq!(cat.len(), 43);
        let report = count_by_aut(&cat);
        assert_eq!(
            report.by_aut_order,
            BTreeMap::from([(1, 18), (2, 21), (3, 1), (6, 2), (14, 1)])
        );
    }

    #[test]
    fn kind_mismatch_errors() {
        let p = Params::new(6, 4).unwrap();
        assert!(matches!(
            enumerate_classes(&p, RectangleKind::Youden, &quick_cfg()),
            Err(Error::KindMismatch(_))
        ));
        let p = Params::new(7, 4).unwrap();
        assert!(matches!(
            enumerate_classes(&p, RectangleKind::NearYouden, &quick_cfg()),
            Err(Error::KindMismatch(_))
        ));
        assert!(matches!(
            enumerate_classes(&p, RectangleKind::LatinOnly, &quick_cfg()),
            Err(Error::KindMismatch(_))
        ));
    }

    #[test]
    fn pruning_does_not_change_results() {
        for (n, k, kind) in [
            (6, 4, RectangleKind::NearYouden),
            (7, 3, RectangleKind::Youden),
            (7, 3, RectangleKind::ThreeLambda),
        ] {
            let p = Params::new(n, k).unwrap();
            let pruned = enumerate_classes(&p, kind, &quick_cfg()).unwrap();
            let cfg = SearchConfig { prune: false, ..quick_cfg() };
            let unpruned = enumerate_classes(&p, kind, &cfg).unwrap();
            assert_eq!(pruned, unpruned, "({n},{k},{kind:?})");
        }
    }

    #[test]
    fn determinism_across_jobs_and_split() {
        let p = Params::new(7, 4).unwrap();
        let base = enumerate_classes(&p, RectangleKind::Youden, &quick_cfg()).unwrap();
        for (jobs, split) in [(1, 2), (2, 3), (8, 5)] {
            let cfg = SearchConfig { jobs, split_depth: split, ..SearchConfig::default() };
            let cat = enumerate_classes(&p, RectangleKind::Youden, &cfg).unwrap();
            assert_eq!(cat, base);
        }
    }

    #[test]
    fn develop_difference_set() {
        let r = develop(&[0, 1, 3], 7).unwrap();
        assert_eq!(classify_rectangle(&r), RectangleKind::Youden);
        let norm = isotopy::normalize(&r).unwrap();
        assert_eq!(isotopy::autotopism_order(&norm).unwrap(), 21);

        // Not a difference set: intersections are non-constant (in fact the
        // development realizes all of 0, 1 and 2), so it is not Youden.
        let r = develop(&[0, 1, 2], 7).unwrap();
        assert_eq!(classify_rectangle(&r), RectangleKind::ThreeLambda);

        assert!(develop(&[0, 0, 1], 5).is_err());
    }

    #[test]
    fn developed_youden_aut_divisible_by_n() {
        // The cyclic shift of columns and symbols fixes any development.
        for (set, n) in [(vec![0u64, 1, 3], 7usize), (vec![0, 1, 3, 9], 13)] {
            let r = develop(&set, n).unwrap();
            if classify_rectangle(&r) == RectangleKind::Youden {
                let norm = isotopy::normalize(&r).unwrap();
                let aut = isotopy::autotopism_order(&norm).unwrap();
                assert_eq!(aut % n as u64, 0, "{set:?}");
            }
        }
    }

    #[test]
    fn extend_column_from_root() {
        let p = Params::new(7, 3).unwrap();
        let root = PartialRectangle::root(p, RectangleKind::Youden).unwrap();
        let exts = extend_column(&root).unwrap();
        assert!(!exts.is_empty());
        for e in &exts {
            assert_eq!(e.len(), 2);
        }
        // Invalid partial: intersection outside the window is rejected at
        // construction.
        let bad = PartialRectangle::new(
            p,
            RectangleKind::Youden,
            vec![vec![0, 1, 2], vec![3, 0, 1]],
        );
        assert!(bad.is_err());
    }

    /// Rebuilds the prefix named by a partial canonical key.
    fn prefix_from_key(p: Params, kind: RectangleKind, key: &[u8], k: usize) -> PartialRectangle {
        let t = key.len() / (k - 1) + usize::from(key.is_empty());
        let t = if key.is_empty() { 1 } else { t };
        let cols: Vec<Vec<u8>> = (0..t)
            .map(|q| {
                let mut col = vec![q as u8];
                col.extend_from_slice(&key[q * (k - 1)..(q + 1) * (k - 1)]);
                col
            })
            .collect();
        PartialRectangle::new(p, kind, cols).unwrap()
    }

    #[test]
    fn accepts_prefix_examples() {
        let p = Params::new(7, 3).unwrap();
        let cat = enumerate_classes(&p, RectangleKind::Youden, &quick_cfg()).unwrap();
        let rep = &cat.reps[0];
        let cols: Vec<Vec<u8>> =
            (0..7).map(|j| (0..3).map(|i| rep.get(i, j)).collect()).collect();
        // Every truncation of the search's distinguished representative is
        // accepted: recover it as the partial canonical form of the
        // truncated catalog entry.
        for t in 2..=7 {
            let partial =
                PartialRectangle::new(p, RectangleKind::Youden, cols[..t].to_vec()).unwrap();
            let key = partial_canonical_key(&partial).unwrap();
            let canon_prefix = prefix_from_key(p, RectangleKind::Youden, &key, 3);
            assert!(accepts_prefix(&canon_prefix).unwrap(), "t={t}");
            // A prefix isotopic to a strictly smaller one is rejected.
            if !accepts_prefix(&partial).unwrap() {
                assert_ne!(partial.columns(), canon_prefix.columns());
            }
        }
        let root = PartialRectangle::root(p, RectangleKind::Youden).unwrap();
        assert!(accepts_prefix(&root).unwrap());
    }
}
