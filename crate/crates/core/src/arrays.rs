//! Row-column arrays derived from rectangles: the remove-and-swap
//! construction, TA1-TA5 classification into triple/double/sesqui arrays,
//! RL-forms, array canonical forms and catalog-wide compatibility scans.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::design::{classify_rectangle, is_latin, Rectangle, RectangleKind};
use crate::error::{Error, Result};

const UNSET: u8 = u8::MAX;

/// An `rows x cols` grid on symbols `0..v-1` with possibly empty cells.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridArray {
    rows: usize,
    cols: usize,
    v: usize,
    cells: Vec<Option<u8>>,
}

impl GridArray {
    pub fn new(rows: usize, cols: usize, v: usize, cells: Vec<Option<u8>>) -> Result<Self> {
        if rows == 0 || cols == 0 || v == 0 {
            return Err(Error::Structure("array dimensions must be positive".into()));
        }
        if v > 64 {
            return Err(Error::Params(format!("symbol count {v} exceeds the limit 64")));
        }
        if cells.len() != rows * cols {
            return Err(Error::Structure(format!(
                "expected {} cells, got {}",
                rows * cols,
                cells.len()
            )));
        }
        if cells.iter().flatten().any(|&s| (s as usize) >= v) {
            return Err(Error::Structure(format!("symbol out of range 0..{v}")));
        }
        Ok(GridArray { rows, cols, v, cells })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn symbol_count(&self) -> usize {
        self.v
    }

    pub fn get(&self, r: usize, c: usize) -> Option<u8> {
        self.cells[r * self.cols + c]
    }

    pub fn cells(&self) -> &[Option<u8>] {
        &self.cells
    }

    pub fn is_full(&self) -> bool {
        self.cells.iter().all(|c| c.is_some())
    }

    pub fn transpose(&self) -> GridArray {
        let mut cells = vec![None; self.rows * self.cols];
        for r in 0..self.rows {
            for c in 0..self.cols {
                cells[c * self.rows + r] = self.get(r, c);
            }
        }
        GridArray { rows: self.cols, cols: self.rows, v: self.v, cells }
    }

    fn row_mask(&self, r: usize) -> u64 {
        (0..self.cols)
            .filter_map(|c| self.get(r, c))
            .fold(0u64, |m, s| m | 1 << s)
    }

    fn col_mask(&self, c: usize) -> u64 {
        (0..self.rows)
            .filter_map(|r| self.get(r, c))
            .fold(0u64, |m, s| m | 1 << s)
    }
}

/// Design label derived from the TA1-TA5 truth vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArrayLabel {
    /// TA1-TA5 all hold.
    Triple,
    /// TA1-TA4 hold, TA5 fails.
    ProperDouble,
    /// TA1-TA3 and TA5 hold, TA4 fails.
    ProperSesqui,
    /// The transpose is a proper sesqui array.
    TransposeOfProperSesqui,
    None,
}

impl ArrayLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            ArrayLabel::Triple => "triple",
            ArrayLabel::ProperDouble => "proper-double",
            ArrayLabel::ProperSesqui => "proper-sesqui",
            ArrayLabel::TransposeOfProperSesqui => "sesqui-transpose",
            ArrayLabel::None => "none",
        }
    }
}

/// Evaluation of the five triple-array conditions on a full array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// No symbol repeated in any row or column.
    pub ta1: bool,
    /// Each symbol occurs the same number of times.
    pub ta2: bool,
    /// Every pair of distinct rows shares the same number of symbols.
    pub ta3: bool,
    /// Every pair of distinct columns shares the same number of symbols.
    pub ta4: bool,
    /// Every row and column pair shares the same number of symbols.
    pub ta5: bool,
    pub e: Option<u32>,
    pub lambda_rr: Option<u32>,
    pub lambda_cc: Option<u32>,
    pub lambda_rc: Option<u32>,
    pub label: ArrayLabel,
}

fn constant_intersections(masks_a: &[u64], masks_b: Option<&[u64]>) -> Option<u32> {
    // Within one family when `masks_b` is None, across families otherwise.
    let mut common: Option<u32> = None;
    match masks_b {
        None => {
            for i in 0..masks_a.len() {
                for j in i + 1..masks_a.len() {
                    let m = (masks_a[i] & masks_a[j]).count_ones();
                    if *common.get_or_insert(m) != m {
                        return None;
                    }
                }
            }
        }
        Some(other) => {
            for &a in masks_a {
                for &b in other {
                    let m = (a & b).count_ones();
                    if *common.get_or_insert(m) != m {
                        return None;
                    }
                }
            }
        }
    }
    common.or(Some(0))
}

/// Evaluates TA1-TA5 on a fully filled array and assigns the label.
pub fn classify_array(a: &GridArray) -> Result<Classification> {
    if !a.is_full() {
        return Err(Error::Precondition("classification requires a fully filled array".into()));
    }
    let mut ta1 = true;
    for r in 0..a.rows {
        ta1 &= a.row_mask(r).count_ones() as usize == a.cols;
    }
    for c in 0..a.cols {
        ta1 &= a.col_mask(c).count_ones() as usize == a.rows;
    }

    let mut counts = vec![0u32; a.v];
    for s in a.cells.iter().flatten() {
        counts[*s as usize] += 1;
    }
    let e = counts[0];
    let ta2 = e > 0 && counts.iter().all(|&c| c == e);

    let row_masks: Vec<u64> = (0..a.rows).map(|r| a.row_mask(r)).collect();
    let col_masks: Vec<u64> = (0..a.cols).map(|c| a.col_mask(c)).collect();
    let lambda_rr = constant_intersections(&row_masks, None);
    let lambda_cc = constant_intersections(&col_masks, None);
    let lambda_rc = constant_intersections(&row_masks, Some(&col_masks));
    let (ta3, ta4, ta5) = (lambda_rr.is_some(), lambda_cc.is_some(), lambda_rc.is_some());

    let label = if ta1 && ta2 {
        match (ta3, ta4, ta5) {
            (true, true, true) => ArrayLabel::Triple,
            (true, true, false) => ArrayLabel::ProperDouble,
            (true, false, true) => ArrayLabel::ProperSesqui,
            (false, true, true) => ArrayLabel::TransposeOfProperSesqui,
            _ => ArrayLabel::None,
        }
    } else {
        ArrayLabel::None
    };

    Ok(Classification {
        ta1,
        ta2,
        ta3,
        ta4,
        ta5,
        e: ta2.then_some(e),
        lambda_rr: if ta3 { lambda_rr } else { None },
        lambda_cc: if ta4 { lambda_cc } else { None },
        lambda_rc: if ta5 { lambda_rc } else { None },
        label,
    })
}

/// Removes column `c` of a Latin rectangle together with every occurrence of
/// its symbols, then exchanges the roles of columns and symbols.
///
/// The output is a fully filled `k x (n-k)` array on `n-1` symbols: output
/// column `j` corresponds to the `j`-th smallest surviving symbol, and the
/// cell at `(r, j)` names the rectangle column (with `c` skipped in the
/// numbering) in which that symbol sits in row `r`.
pub fn remove_and_swap(y: &Rectangle, c: usize) -> Result<GridArray> {
    if c >= y.n() {
        return Err(Error::Bounds(format!("column index {c} out of range")));
    }
    if !is_latin(y) {
        return Err(Error::Precondition("remove_and_swap requires a Latin rectangle".into()));
    }
    let (n, k) = (y.n(), y.k());
    let removed = y.column_mask(c);
    let survivors: Vec<u8> = (0..n as u8).filter(|&s| removed >> s & 1 == 0).collect();
    let mut cells = vec![None; k * survivors.len()];
    for r in 0..k {
        let mut pos = [UNSET; 64];
        for col in 0..n {
            pos[y.get(r, col) as usize] = col as u8;
        }
        for (j, &s) in survivors.iter().enumerate() {
            let col = pos[s as usize];
            let compact = if (col as usize) < c { col } else { col - 1 };
            cells[r * survivors.len() + j] = Some(compact);
        }
    }
    GridArray::new(k, survivors.len(), n - 1, cells)
}

/// Exchanges the roles of columns and symbols in an array satisfying TA1 and
/// TA2: cell `(r, s)` of the result holds the column of `t` containing
/// symbol `s` in row `r`, and is empty when `s` is absent from that row.
pub fn rl_form(t: &GridArray) -> Result<GridArray> {
    let cls = classify_array(t)?;
    if !cls.ta1 || !cls.ta2 {
        return Err(Error::Precondition(
            "the column/symbol role exchange needs an array with no repeats (TA1) \
             that is equireplicate (TA2)"
                .into(),
        ));
    }
    let mut cells = vec![None; t.rows * t.v];
    for r in 0..t.rows {
        for c in 0..t.cols {
            let s = t.get(r, c).unwrap() as usize;
            cells[r * t.v + s] = Some(c as u8);
        }
    }
    GridArray::new(t.rows, t.v, t.cols, cells)
}

/// Branch-and-bound lexicographic minimization over row, column and symbol
/// permutations, reading cells row-major with first-occurrence relabeling.
///
/// Requires every row to be repeat-free (true for every array this library
/// produces); symbols present in the image's first row take labels equal to
/// their column position, everything else is labeled in first-use order.
struct ArrayCanon<'a> {
    a: &'a GridArray,
    rows: usize,
    cols: usize,
    best: Vec<u8>,
    // branch state
    row0: usize,
    row0_pos: [u8; 64],
    sym_lab: [u8; 64],
    lab_sym: [u8; 64],
    pos_used: u64,
    big_used: u64,
    pos_col: [u8; 64],
    col_pos: [u8; 64],
    row_of: [u8; 64],
    rows_used: u64,
    cur: Vec<u8>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Cmp {
    Eq,
    Lt,
}

impl<'a> ArrayCanon<'a> {
    fn new(a: &'a GridArray, initial: Vec<u8>) -> Self {
        ArrayCanon {
            a,
            rows: a.rows,
            cols: a.cols,
            best: initial,
            row0: 0,
            row0_pos: [UNSET; 64],
            sym_lab: [UNSET; 64],
            lab_sym: [UNSET; 64],
            pos_used: 0,
            big_used: 0,
            pos_col: [UNSET; 64],
            col_pos: [UNSET; 64],
            row_of: [UNSET; 64],
            rows_used: 0,
            cur: vec![0; a.rows * a.cols],
        }
    }

    fn cell(&self, r: usize, c: usize) -> u8 {
        self.a.cells[r * self.cols + c].unwrap()
    }

    fn run(mut self) -> Vec<u8> {
        for (j, cell) in self.cur.iter_mut().enumerate().take(self.cols) {
            *cell = j as u8;
        }
        for row0 in 0..self.rows {
            self.row0 = row0;
            self.row0_pos = [UNSET; 64];
            for c in 0..self.cols {
                self.row0_pos[self.cell(row0, c) as usize] = c as u8;
            }
            self.sym_lab = [UNSET; 64];
            self.lab_sym = [UNSET; 64];
            self.pos_used = 0;
            self.big_used = 0;
            self.pos_col = [UNSET; 64];
            self.col_pos = [UNSET; 64];
            self.row_of = [UNSET; 64];
            self.row_of[0] = row0 as u8;
            self.rows_used = 1 << row0;
            self.dfs_row(1, Cmp::Eq);
        }
        self.best
    }

    /// Places old column `col` at image position `p`, labeling its row-0
    /// symbol `p`.
    fn place_col(&mut self, col: u8, p: u8) {
        self.pos_col[p as usize] = col;
        self.col_pos[col as usize] = p;
        self.pos_used |= 1 << p;
        let y0 = self.cell(self.row0, col as usize);
        self.sym_lab[y0 as usize] = p;
        self.lab_sym[p as usize] = y0;
    }

    fn unplace_col(&mut self, col: u8, p: u8) {
        self.pos_col[p as usize] = UNSET;
        self.col_pos[col as usize] = UNSET;
        self.pos_used &= !(1 << p);
        let y0 = self.cell(self.row0, col as usize);
        self.sym_lab[y0 as usize] = UNSET;
        self.lab_sym[p as usize] = UNSET;
    }

    /// Value the cell symbol `z` would take, given `extra` freshly consumed
    /// position bits: a row-0 symbol's label is its column's (possibly
    /// future) position, anything else gets the next big label.
    fn value_of(&self, z: u8, extra: u64) -> u8 {
        let known = self.sym_lab[z as usize];
        if known != UNSET {
            return known;
        }
        if self.row0_pos[z as usize] != UNSET {
            (!(self.pos_used | extra)).trailing_zeros() as u8
        } else {
            self.cols as u8 + self.big_used.trailing_ones() as u8
        }
    }

    /// Commits the value computed by `value_of`; returns an undo token.
    fn commit_value(&mut self, z: u8, v: u8) -> u8 {
        if self.sym_lab[z as usize] != UNSET {
            return 0;
        }
        if self.row0_pos[z as usize] != UNSET {
            self.place_col(self.row0_pos[z as usize], v);
            1
        } else {
            self.sym_lab[z as usize] = v;
            self.big_used |= 1 << (v - self.cols as u8);
            2
        }
    }

    fn undo_value(&mut self, z: u8, v: u8, token: u8) {
        match token {
            1 => self.unplace_col(self.row0_pos[z as usize], v),
            2 => {
                self.sym_lab[z as usize] = UNSET;
                self.big_used &= !(1 << (v - self.cols as u8));
            }
            _ => {}
        }
    }

    fn dfs_row(&mut self, i: usize, cmp: Cmp) {
        if i == self.rows {
            // Tie branches in the strictly-less state complete in any
            // order; keep only genuine improvements.
            if cmp == Cmp::Lt && self.cur[..] < self.best[..] {
                self.best.copy_from_slice(&self.cur);
            }
            return;
        }
        for old_r in 0..self.rows {
            if self.rows_used >> old_r & 1 != 0 {
                continue;
            }
            self.row_of[i] = old_r as u8;
            self.rows_used |= 1 << old_r;
            self.dfs_cell(i, 0, cmp);
            self.rows_used &= !(1 << old_r);
            self.row_of[i] = UNSET;
        }
    }

    fn dfs_cell(&mut self, i: usize, j: usize, cmp: Cmp) {
        if j == self.cols {
            self.dfs_row(i + 1, cmp);
            return;
        }
        let bound = self.best[i * self.cols + j];
        let old_r = self.row_of[i] as usize;
        let forced = self.pos_col[j];
        if forced != UNSET {
            let z = self.cell(old_r, forced as usize);
            let v = self.value_of(z, 0);
            let next = match cmp {
                Cmp::Lt => Cmp::Lt,
                Cmp::Eq if v < bound => Cmp::Lt,
                Cmp::Eq if v == bound => Cmp::Eq,
                Cmp::Eq => return,
            };
            let token = self.commit_value(z, v);
            self.cur[i * self.cols + j] = v;
            self.dfs_cell(i, j + 1, next);
            self.undo_value(z, v, token);
        } else {
            let mut vmin = UNSET;
            let mut cands: [(u8, u8); 64] = [(0, 0); 64];
            let mut len = 0;
            for col in 0..self.cols as u8 {
                if self.col_pos[col as usize] != UNSET {
                    continue;
                }
                let z = self.cell(old_r, col as usize);
                let v = self.value_of(z, 1 << j);
                if v < vmin {
                    vmin = v;
                    len = 0;
                }
                if v == vmin {
                    cands[len] = (col, z);
                    len += 1;
                }
            }
            if len == 0 {
                return;
            }
            let next = match cmp {
                Cmp::Lt => Cmp::Lt,
                Cmp::Eq if vmin < bound => Cmp::Lt,
                Cmp::Eq if vmin == bound => Cmp::Eq,
                Cmp::Eq => return,
            };
            for idx in 0..len {
                let (col, z) = cands[idx];
                self.place_col(col, j as u8);
                let token = self.commit_value(z, vmin);
                self.cur[i * self.cols + j] = vmin;
                self.dfs_cell(i, j + 1, next);
                self.undo_value(z, vmin, token);
                self.unplace_col(col, j as u8);
            }
        }
    }
}

fn relabel_identity_order(a: &GridArray) -> Vec<u8> {
    // First-occurrence relabeling of the array as given; a valid image.
    let mut map = [UNSET; 64];
    let mut next = 0u8;
    let mut out = Vec::with_capacity(a.cells.len());
    for cell in a.cells.iter() {
        let s = cell.unwrap() as usize;
        if map[s] == UNSET {
            map[s] = next;
            next += 1;
        }
        out.push(map[s]);
    }
    out
}

fn rows_repeat_free(a: &GridArray) -> bool {
    (0..a.rows).all(|r| a.row_mask(r).count_ones() as usize == a.cols)
}

/// Lexicographic minimum of a full array over row, column and symbol
/// permutations. The symbol universe is compacted to the symbols that occur.
pub fn array_canonical_form(a: &GridArray) -> Result<GridArray> {
    if !a.is_full() {
        return Err(Error::Precondition("canonical form requires a fully filled array".into()));
    }
    if !rows_repeat_free(a) {
        return Err(Error::Precondition(
            "canonical form requires rows without repeated symbols".into(),
        ));
    }
    let used: BTreeSet<u8> = a.cells.iter().map(|c| c.unwrap()).collect();
    let best = ArrayCanon::new(a, relabel_identity_order(a)).run();
    GridArray::new(a.rows, a.cols, used.len(), best.into_iter().map(Some).collect())
}

/// Canonical class key with transposes folded in: the smaller of the
/// canonical forms of the array and of its transpose.
pub fn array_canonical_form_folded(a: &GridArray) -> Result<GridArray> {
    let own = array_canonical_form(a)?;
    let t = array_canonical_form(&a.transpose())?;
    Ok(own.min(t))
}

/// Order of the autotopism group of a full array (row, column and symbol
/// permutations fixing it). Symbols that never occur may be relabeled
/// freely, contributing a factorial factor.
pub fn array_autotopism_order(a: &GridArray) -> Result<u64> {
    if !a.is_full() {
        return Err(Error::Precondition("autotopism order requires a fully filled array".into()));
    }
    let (r, c) = (a.rows, a.cols);
    let mut row_perm: Vec<u8> = (0..r as u8).collect();
    let mut count = 0u64;
    let mut unused = a.v;
    for s in 0..a.v as u8 {
        if a.cells.iter().any(|&x| x == Some(s)) {
            unused -= 1;
        }
    }
    permute_all(&mut row_perm, &mut |rp| {
        let mut col_perm: Vec<u8> = (0..c as u8).collect();
        permute_all(&mut col_perm, &mut |cp| {
            // The symbol map is forced cell by cell; check consistency and
            // injectivity.
            let mut map = [UNSET; 64];
            let mut hit = 0u64;
            for row in 0..r {
                for col in 0..c {
                    let from = a.get(row, col).unwrap() as usize;
                    let to = a.get(rp[row] as usize, cp[col] as usize).unwrap();
                    if map[from] == UNSET {
                        if hit >> to & 1 != 0 {
                            return;
                        }
                        map[from] = to;
                        hit |= 1 << to;
                    } else if map[from] != to {
                        return;
                    }
                }
            }
            count += 1;
        });
    });
    Ok(count * factorial(unused))
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn permute_all(items: &mut [u8], f: &mut impl FnMut(&[u8])) {
    fn heap(items: &mut [u8], k: usize, f: &mut impl FnMut(&[u8])) {
        if k <= 1 {
            f(items);
            return;
        }
        for i in 0..k {
            heap(items, k - 1, f);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    let len = items.len();
    heap(items, len, f);
}

/// Classification of the remove-and-swap output for every column of a
/// Youden or 3-lambda rectangle.
pub fn scan_compatibility(y: &Rectangle) -> Result<Vec<Classification>> {
    match classify_rectangle(y) {
        RectangleKind::Youden | RectangleKind::ThreeLambda => {}
        other => {
            return Err(Error::Precondition(format!(
                "compatibility scans expect a Youden or 3-lambda rectangle, got {}",
                other.as_str()
            )))
        }
    }
    (0..y.n()).map(|c| classify_array(&remove_and_swap(y, c)?)).collect()
}

/// Which array label a scan is looking for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanTarget {
    Triple,
    Double,
    Sesqui,
    SesquiTranspose,
}

impl ScanTarget {
    pub fn label(&self) -> ArrayLabel {
        match self {
            ScanTarget::Triple => ArrayLabel::Triple,
            ScanTarget::Double => ArrayLabel::ProperDouble,
            ScanTarget::Sesqui => ArrayLabel::ProperSesqui,
            ScanTarget::SesquiTranspose => ArrayLabel::TransposeOfProperSesqui,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ScanTarget::Triple => "triple",
            ScanTarget::Double => "double",
            ScanTarget::Sesqui => "sesqui",
            ScanTarget::SesquiTranspose => "sesqui-t",
        }
    }
}

/// Result of scanning a catalog for one target label.
#[derive(Debug, Clone)]
pub struct ScanSummary {
    pub target: ScanTarget,
    /// Rectangles with at least one compatible column.
    pub compatible_rectangles: usize,
    /// Total compatible columns over all rectangles.
    pub compatible_columns: usize,
    /// Canonical forms of the produced arrays, sorted.
    pub classes: Vec<GridArray>,
    /// Class keys with transposes folded in, sorted.
    pub classes_folded: Vec<GridArray>,
    /// For each class (parallel to `classes`), the number of rectangles
    /// compatible with it.
    pub class_frequencies: Vec<usize>,
    /// Compatible column indices per catalog rectangle.
    pub columns_per_rectangle: Vec<Vec<usize>>,
}

/// Applies remove-and-swap to every column of every rectangle and collects
/// the columns whose output matches `target`.
pub fn scan_catalog(reps: &[Rectangle], target: ScanTarget) -> Result<ScanSummary> {
    let want = target.label();
    let per_rect: Vec<(Vec<usize>, Vec<GridArray>)> = reps
        .par_iter()
        .map(|y| -> Result<(Vec<usize>, Vec<GridArray>)> {
            let mut cols = Vec::new();
            let mut canons = Vec::new();
            for c in 0..y.n() {
                let arr = remove_and_swap(y, c)?;
                if classify_array(&arr)?.label == want {
                    cols.push(c);
                    canons.push(array_canonical_form(&arr)?);
                }
            }
            Ok((cols, canons))
        })
        .collect::<Result<_>>()?;

    let mut compatible_rectangles = 0;
    let mut compatible_columns = 0;
    let mut freq: BTreeMap<GridArray, usize> = BTreeMap::new();
    let mut columns_per_rectangle = Vec::with_capacity(reps.len());
    for (cols, canons) in &per_rect {
        if !cols.is_empty() {
            compatible_rectangles += 1;
        }
        compatible_columns += cols.len();
        let distinct: BTreeSet<&GridArray> = canons.iter().collect();
        for canon in distinct {
            *freq.entry(canon.clone()).or_insert(0) += 1;
        }
        columns_per_rectangle.push(cols.clone());
    }
    let classes: Vec<GridArray> = freq.keys().cloned().collect();
    let class_frequencies: Vec<usize> = freq.values().copied().collect();
    let folded: BTreeSet<GridArray> = classes
        .iter()
        .map(array_canonical_form_folded)
        .collect::<Result<_>>()?;
    Ok(ScanSummary {
        target,
        compatible_rectangles,
        compatible_columns,
        classes,
        classes_folded: folded.into_iter().collect(),
        class_frequencies,
        columns_per_rectangle,
    })
}

/// Builds the 3-lambda Latin rectangle compatible with a triple array `t`
/// with `v = rows + cols - 1` and column intersection size 1.
///
/// Column 0 receives `rows` new symbols in order; the remaining columns are
/// the RL-form of `t` with each row's empty cells filled left to right by
/// the unused new symbols in increasing order.
pub fn build_3lambda_from_triple(t: &GridArray) -> Result<Rectangle> {
    let cls = classify_array(t)?;
    if cls.label != ArrayLabel::Triple {
        return Err(Error::Params("input must be a triple array".into()));
    }
    if t.v != t.rows + t.cols - 1 {
        return Err(Error::Params(format!(
            "need v = rows + cols - 1, got v={} for a {}x{} array",
            t.v, t.rows, t.cols
        )));
    }
    if cls.lambda_cc != Some(1) {
        return Err(Error::Params(format!(
            "need column intersection size 1, got {:?}",
            cls.lambda_cc
        )));
    }
    let rl = rl_form(t)?;
    let (r, v) = (t.rows, t.v);
    let n = v + 1;
    let params = crate::design::Params::new(n, r)?;
    let mut cells = vec![0u8; r * n];
    for i in 0..r {
        let own = (t.cols + i) as u8;
        cells[i * n] = own;
        let mut fresh = (t.cols..n).map(|s| s as u8).filter(|&s| s != own);
        for j in 0..v {
            cells[i * n + j + 1] = match rl.get(i, j) {
                Some(s) => s,
                None => fresh.next().ok_or_else(|| {
                    Error::Structure("row has more empty cells than spare symbols".into())
                })?,
            };
        }
    }
    let out = Rectangle::new(params, cells)?;
    debug_assert_eq!(classify_rectangle(&out), RectangleKind::ThreeLambda);
    Ok(out)
}
