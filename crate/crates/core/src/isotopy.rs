//! Isotopisms, normalization, canonical forms and autotopism groups.
//!
//! An isotopism is a triple of permutations acting on rows, columns and
//! symbols. A rectangle is *normalized* when its first row is `0..n-1` and
//! its first column is `0..k-1`. The canonical form of a rectangle is the
//! lexicographically least normalized member of its isotopism orbit, reading
//! cells row-major; it is the dedup key used by the enumeration.

use crate::design::{is_latin, Rectangle};
use crate::error::{Error, Result};

const UNSET: u8 = u8::MAX;

/// A triple of permutations `(rows, columns, symbols)` acting on rectangles:
/// the image has `result[row_perm[r]][col_perm[c]] = sym_perm[R[r][c]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isotopism {
    row_perm: Vec<u8>,
    col_perm: Vec<u8>,
    sym_perm: Vec<u8>,
}

fn check_perm(p: &[u8], what: &str) -> Result<()> {
    let mut seen = 0u64;
    if p.len() > 64 {
        return Err(Error::Params(format!("{what} permutation too long")));
    }
    for &v in p {
        if (v as usize) >= p.len() || seen & (1 << v) != 0 {
            return Err(Error::Structure(format!("{what} component is not a permutation")));
        }
        seen |= 1 << v;
    }
    Ok(())
}

impl Isotopism {
    pub fn new(row_perm: Vec<u8>, col_perm: Vec<u8>, sym_perm: Vec<u8>) -> Result<Self> {
        check_perm(&row_perm, "row")?;
        check_perm(&col_perm, "column")?;
        check_perm(&sym_perm, "symbol")?;
        if col_perm.len() != sym_perm.len() {
            return Err(Error::Structure(
                "column and symbol permutations must have equal degree".into(),
            ));
        }
        Ok(Isotopism { row_perm, col_perm, sym_perm })
    }

    pub fn identity(k: usize, n: usize) -> Self {
        Isotopism {
            row_perm: (0..k as u8).collect(),
            col_perm: (0..n as u8).collect(),
            sym_perm: (0..n as u8).collect(),
        }
    }

    pub fn row_perm(&self) -> &[u8] {
        &self.row_perm
    }

    pub fn col_perm(&self) -> &[u8] {
        &self.col_perm
    }

    pub fn sym_perm(&self) -> &[u8] {
        &self.sym_perm
    }

    /// Composition acting as `apply(g.compose(h), r) = apply(g, apply(h, r))`.
    pub fn compose(&self, h: &Isotopism) -> Isotopism {
        let comp = |g: &[u8], h: &[u8]| h.iter().map(|&x| g[x as usize]).collect();
        Isotopism {
            row_perm: comp(&self.row_perm, &h.row_perm),
            col_perm: comp(&self.col_perm, &h.col_perm),
            sym_perm: comp(&self.sym_perm, &h.sym_perm),
        }
    }

    pub fn inverse(&self) -> Isotopism {
        let inv = |p: &[u8]| {
            let mut q = vec![0u8; p.len()];
            for (i, &v) in p.iter().enumerate() {
                q[v as usize] = i as u8;
            }
            q
        };
        Isotopism {
            row_perm: inv(&self.row_perm),
            col_perm: inv(&self.col_perm),
            sym_perm: inv(&self.sym_perm),
        }
    }
}

/// Applies `g` to `r`.
pub fn apply(g: &Isotopism, r: &Rectangle) -> Result<Rectangle> {
    let (n, k) = (r.n(), r.k());
    if g.row_perm.len() != k || g.col_perm.len() != n {
        return Err(Error::Structure(format!(
            "isotopism degree ({}, {}) does not match a {}x{} rectangle",
            g.row_perm.len(),
            g.col_perm.len(),
            k,
            n
        )));
    }
    let mut cells = vec![0u8; k * n];
    for row in 0..k {
        let ir = g.row_perm[row] as usize;
        for col in 0..n {
            let ic = g.col_perm[col] as usize;
            cells[ir * n + ic] = g.sym_perm[r.get(row, col) as usize];
        }
    }
    Rectangle::new(r.params(), cells)
}

/// Relabels and reorders columns so that the first row is `0..n-1` and the
/// first column is `0..k-1`: symbols are renamed so the current first
/// column reads `0..k-1` (remaining symbols keep their relative order),
/// then columns are sorted by first-row value. Idempotent.
pub fn normalize(r: &Rectangle) -> Result<Rectangle> {
    if !is_latin(r) {
        return Err(Error::Precondition("normalize requires a Latin rectangle".into()));
    }
    let (n, k) = (r.n(), r.k());
    let mut sym = [UNSET; 64];
    for i in 0..k {
        sym[r.get(i, 0) as usize] = i as u8;
    }
    let mut next = k as u8;
    for s in 0..n {
        if sym[s] == UNSET {
            sym[s] = next;
            next += 1;
        }
    }
    // Column order: position of each relabeled first-row value.
    let mut col_of_value = vec![0usize; n];
    for c in 0..n {
        col_of_value[sym[r.get(0, c) as usize] as usize] = c;
    }
    let mut cells = vec![0u8; k * n];
    for (j, &c) in col_of_value.iter().enumerate() {
        for i in 0..k {
            cells[i * n + j] = sym[r.get(i, c) as usize];
        }
    }
    Rectangle::new(r.params(), cells)
}

/// The distinguished representative of an isotopism orbit: the
/// lexicographically least normalized member, reading cells row-major.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Rectangle);

impl CanonicalForm {
    pub fn rect(&self) -> &Rectangle {
        &self.0
    }

    pub fn into_rect(self) -> Rectangle {
        self.0
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Cmp {
    Eq,
    Lt,
}

/// Branch-and-bound minimization over all normalized orbit members.
///
/// A normalized image is determined by the column sent to position 0, the
/// row order, and the free part of the symbol relabeling. The search fixes
/// the seed `(r0, c0)` (old row 0 and old column 0), then walks the image
/// row-major, choosing lazily which old row feeds each image row and which
/// symbol receives each label. The chosen column's symbols must take labels
/// `0..k-1` (they form image column 0), everything else takes `k..n-1`;
/// free labels are forced greedily, so only genuine ties branch.
struct CanonSearch<'a> {
    r: &'a Rectangle,
    n: usize,
    k: usize,
    pos_in_row: Vec<u8>,
    best: Vec<u8>,
    // per-seed state
    c0: usize,
    r0: usize,
    c0_mask: u64,
    sym_img: [u8; 64],
    lab_sym: [u8; 64],
    lab_used: u64,
    row_of: [u8; 64],
    rows_used: u64,
    cur: Vec<u8>,
}

impl<'a> CanonSearch<'a> {
    fn new(r: &'a Rectangle, initial: Vec<u8>) -> Self {
        let (n, k) = (r.n(), r.k());
        let mut pos_in_row = vec![0u8; k * n];
        for row in 0..k {
            for col in 0..n {
                pos_in_row[row * n + r.get(row, col) as usize] = col as u8;
            }
        }
        let mut cur = vec![0u8; k * n];
        for (j, cell) in cur.iter_mut().enumerate().take(n) {
            *cell = j as u8;
        }
        CanonSearch {
            r,
            n,
            k,
            pos_in_row,
            best: initial,
            c0: 0,
            r0: 0,
            c0_mask: 0,
            sym_img: [UNSET; 64],
            lab_sym: [UNSET; 64],
            lab_used: 0,
            row_of: [UNSET; 64],
            rows_used: 0,
            cur,
        }
    }

    fn run(mut self) -> Vec<u8> {
        for c0 in 0..self.n {
            for r0 in 0..self.k {
                self.seed(c0, r0);
                self.dfs_row(1, Cmp::Eq);
            }
        }
        self.best
    }

    fn seed(&mut self, c0: usize, r0: usize) {
        self.c0 = c0;
        self.r0 = r0;
        self.c0_mask = self.r.column_mask(c0);
        self.sym_img = [UNSET; 64];
        self.lab_sym = [UNSET; 64];
        self.lab_used = 0;
        self.row_of = [UNSET; 64];
        self.rows_used = 1 << r0;
        self.row_of[0] = r0 as u8;
        let s0 = self.r.get(r0, c0);
        self.sym_img[s0 as usize] = 0;
        self.lab_sym[0] = s0;
        self.lab_used = 1;
    }

    /// Smallest label unused in `lab_used | extra` in the class of symbol
    /// `z`: labels below `k` are reserved for the chosen column's symbols.
    fn next_free_label(&self, z: u8, extra: u64) -> u8 {
        let in_c0 = self.c0_mask >> z & 1 != 0;
        let used = self.lab_used | extra;
        let range = if in_c0 {
            !used & ((1u64 << self.k) - 1)
        } else {
            !used & !((1u64 << self.k) - 1)
        };
        range.trailing_zeros() as u8
    }

    fn assign_sym(&mut self, z: u8, v: u8) {
        self.sym_img[z as usize] = v;
        self.lab_sym[v as usize] = z;
        self.lab_used |= 1 << v;
    }

    fn unassign_sym(&mut self, z: u8, v: u8) {
        self.sym_img[z as usize] = UNSET;
        self.lab_sym[v as usize] = UNSET;
        self.lab_used &= !(1 << v);
    }

    fn dfs_row(&mut self, i: usize, cmp: Cmp) {
        if i == self.k {
            // Tie branches explored in the strictly-less state may complete
            // in any order; keep only genuine improvements.
            if cmp == Cmp::Lt && self.cur[..] < self.best[..] {
                self.best.copy_from_slice(&self.cur);
            }
            return;
        }
        // Image row i starts with label i in column 0, so the old row must
        // carry a compatible symbol in the chosen column.
        for old_r in 0..self.k {
            if self.rows_used >> old_r & 1 != 0 {
                continue;
            }
            let y = self.r.get(old_r, self.c0);
            let assigned = self.sym_img[y as usize];
            let fresh = if assigned == UNSET {
                if self.lab_sym[i] != UNSET {
                    continue;
                }
                self.assign_sym(y, i as u8);
                true
            } else if assigned as usize != i {
                continue;
            } else {
                false
            };
            self.row_of[i] = old_r as u8;
            self.rows_used |= 1 << old_r;
            self.cur[i * self.n] = i as u8;
            self.dfs_cell(i, 1, cmp);
            self.rows_used &= !(1 << old_r);
            self.row_of[i] = UNSET;
            if fresh {
                self.unassign_sym(y, i as u8);
            }
        }
    }

    fn dfs_cell(&mut self, i: usize, j: usize, cmp: Cmp) {
        if j == self.n {
            self.dfs_row(i + 1, cmp);
            return;
        }
        let bound = self.best[i * self.n + j];
        let old_r = self.row_of[i] as usize;
        let sym = self.lab_sym[j];
        if sym != UNSET {
            // Column at position j is fixed; the cell value is forced.
            let c = self.pos_in_row[self.r0 * self.n + sym as usize] as usize;
            let z = self.r.get(old_r, c);
            let known = self.sym_img[z as usize];
            let v = if known != UNSET { known } else { self.next_free_label(z, 0) };
            let next = match cmp {
                Cmp::Lt => Cmp::Lt,
                Cmp::Eq if v < bound => Cmp::Lt,
                Cmp::Eq if v == bound => Cmp::Eq,
                Cmp::Eq => return,
            };
            if known == UNSET {
                self.assign_sym(z, v);
            }
            self.cur[i * self.n + j] = v;
            self.dfs_cell(i, j + 1, next);
            if known == UNSET {
                self.unassign_sym(z, v);
            }
        } else {
            // Choose which unassigned symbol takes label j; only choices
            // realizing the smallest cell value are worth exploring. The
            // cell value is computed as if label j were already taken, so
            // it is exactly what the choice achieves.
            let want_c0 = j < self.k;
            let mut vmin = UNSET;
            let mut cands: [(u8, u8); 64] = [(0, 0); 64];
            let mut len = 0;
            for y in 0..self.n as u8 {
                if self.sym_img[y as usize] != UNSET {
                    continue;
                }
                if (self.c0_mask >> y & 1 != 0) != want_c0 {
                    continue;
                }
                let c = self.pos_in_row[self.r0 * self.n + y as usize] as usize;
                let z = self.r.get(old_r, c);
                let known = self.sym_img[z as usize];
                let v = if known != UNSET {
                    known
                } else {
                    self.next_free_label(z, 1 << j)
                };
                if v < vmin {
                    vmin = v;
                    len = 0;
                }
                if v == vmin {
                    cands[len] = (y, z);
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
                let (y, z) = cands[idx];
                self.assign_sym(y, j as u8);
                let known = self.sym_img[z as usize];
                if known == UNSET {
                    self.assign_sym(z, vmin);
                }
                self.cur[i * self.n + j] = vmin;
                self.dfs_cell(i, j + 1, next);
                if known == UNSET {
                    self.unassign_sym(z, vmin);
                }
                self.unassign_sym(y, j as u8);
            }
        }
    }
}

/// Lexicographically least normalized member of the orbit of `r`.
pub fn canonical_form(r: &Rectangle) -> Result<CanonicalForm> {
    let start = normalize(r)?;
    let best = CanonSearch::new(r, start.cells().to_vec()).run();
    Ok(CanonicalForm(Rectangle::new(r.params(), best)?))
}

/// True iff `a` and `b` lie in the same isotopism orbit.
pub fn are_isotopic(a: &Rectangle, b: &Rectangle) -> Result<bool> {
    if a.params() != b.params() {
        return Err(Error::Structure(format!(
            "dimension mismatch: {}x{} vs {}x{}",
            a.k(),
            a.n(),
            b.k(),
            b.n()
        )));
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// Constraint-propagation search for isotopisms fixing `r`.
///
/// Seeding the image of one row, one column and one symbol usually forces
/// everything else: a placed symbol locates its column in the image, a
/// located column forces the symbols of every placed row, and so on. On the
/// rare stall (disconnected incidence for small k) the search branches on
/// the first unplaced symbol.
struct AutSearch<'a> {
    r: &'a Rectangle,
    n: usize,
    k: usize,
    pos_in_row: Vec<u8>,
    pos_in_col: Vec<u8>,
    collect: bool,
    found: Vec<Isotopism>,
}

#[derive(Clone)]
struct AutState {
    row_img: Vec<u8>,
    col_img: Vec<u8>,
    sym_img: Vec<u8>,
    rows_used: u64,
    cols_used: u64,
    syms_used: u64,
    assigned: usize,
}

impl AutState {
    fn new(k: usize, n: usize) -> Self {
        AutState {
            row_img: vec![UNSET; k],
            col_img: vec![UNSET; n],
            sym_img: vec![UNSET; n],
            rows_used: 0,
            cols_used: 0,
            syms_used: 0,
            assigned: 0,
        }
    }

    fn total(&self) -> usize {
        self.row_img.len() + 2 * self.col_img.len()
    }
}

enum Assign {
    Row(u8, u8),
    Col(u8, u8),
    Sym(u8, u8),
}

impl<'a> AutSearch<'a> {
    fn new(r: &'a Rectangle, collect: bool) -> Self {
        let (n, k) = (r.n(), r.k());
        let mut pos_in_row = vec![0u8; k * n];
        let mut pos_in_col = vec![UNSET; n * n];
        for row in 0..k {
            for col in 0..n {
                let s = r.get(row, col) as usize;
                pos_in_row[row * n + s] = col as u8;
                pos_in_col[col * n + s] = row as u8;
            }
        }
        AutSearch { r, n, k, pos_in_row, pos_in_col, collect, found: Vec::new() }
    }

    fn count(&mut self) -> u64 {
        let mut total = 0u64;
        for c0 in 0..self.n {
            for r0 in 0..self.k {
                let mut st = AutState::new(self.k, self.n);
                let seeds = [
                    Assign::Row(r0 as u8, 0),
                    Assign::Col(c0 as u8, 0),
                    Assign::Sym(self.r.get(r0, c0), self.r.get(0, 0)),
                ];
                if self.propagate(&mut st, seeds) {
                    total += self.finish(st);
                }
            }
        }
        total
    }

    /// Applies the pending assignments plus everything they force.
    /// Returns false on contradiction.
    fn propagate(&self, st: &mut AutState, seeds: impl IntoIterator<Item = Assign>) -> bool {
        let mut queue: Vec<Assign> = seeds.into_iter().collect();
        while let Some(a) = queue.pop() {
            match a {
                Assign::Row(row, img) => {
                    let cur = st.row_img[row as usize];
                    if cur != UNSET {
                        if cur != img {
                            return false;
                        }
                        continue;
                    }
                    if st.rows_used >> img & 1 != 0 {
                        return false;
                    }
                    st.row_img[row as usize] = img;
                    st.rows_used |= 1 << img;
                    st.assigned += 1;
                    for col in 0..self.n as u8 {
                        let y = self.r.get(row as usize, col as usize);
                        let ci = st.col_img[col as usize];
                        let yi = st.sym_img[y as usize];
                        if ci != UNSET {
                            queue.push(Assign::Sym(y, self.r.get(img as usize, ci as usize)));
                        } else if yi != UNSET {
                            let target = self.pos_in_row[img as usize * self.n + yi as usize];
                            queue.push(Assign::Col(col, target));
                        }
                    }
                }
                Assign::Col(col, img) => {
                    let cur = st.col_img[col as usize];
                    if cur != UNSET {
                        if cur != img {
                            return false;
                        }
                        continue;
                    }
                    if st.cols_used >> img & 1 != 0 {
                        return false;
                    }
                    st.col_img[col as usize] = img;
                    st.cols_used |= 1 << img;
                    st.assigned += 1;
                    for row in 0..self.k as u8 {
                        let y = self.r.get(row as usize, col as usize);
                        let ri = st.row_img[row as usize];
                        let yi = st.sym_img[y as usize];
                        if ri != UNSET {
                            queue.push(Assign::Sym(y, self.r.get(ri as usize, img as usize)));
                        } else if yi != UNSET {
                            let target = self.pos_in_col[img as usize * self.n + yi as usize];
                            if target == UNSET {
                                return false;
                            }
                            queue.push(Assign::Row(row, target));
                        }
                    }
                }
                Assign::Sym(y, img) => {
                    let cur = st.sym_img[y as usize];
                    if cur != UNSET {
                        if cur != img {
                            return false;
                        }
                        continue;
                    }
                    if st.syms_used >> img & 1 != 0 {
                        return false;
                    }
                    st.sym_img[y as usize] = img;
                    st.syms_used |= 1 << img;
                    st.assigned += 1;
                    // Each occurrence of y links its row and column images.
                    for row in 0..self.k as u8 {
                        let col = self.pos_in_row[row as usize * self.n + y as usize];
                        let ri = st.row_img[row as usize];
                        let ci = st.col_img[col as usize];
                        if ri != UNSET {
                            let target = self.pos_in_row[ri as usize * self.n + img as usize];
                            queue.push(Assign::Col(col, target));
                        } else if ci != UNSET {
                            let target = self.pos_in_col[ci as usize * self.n + img as usize];
                            if target == UNSET {
                                return false;
                            }
                            queue.push(Assign::Row(row, target));
                        }
                    }
                }
            }
        }
        true
    }

    /// Resolves a propagated state: either everything is forced, or branch
    /// on the first unplaced symbol.
    fn finish(&mut self, st: AutState) -> u64 {
        if st.assigned == st.total() {
            debug_assert!(self.verify(&st));
            if self.collect {
                self.found.push(Isotopism {
                    row_perm: st.row_img.clone(),
                    col_perm: st.col_img.clone(),
                    sym_perm: st.sym_img.clone(),
                });
            }
            return 1;
        }
        let y = st.sym_img.iter().position(|&v| v == UNSET).unwrap() as u8;
        let mut total = 0;
        for img in 0..self.n as u8 {
            if st.syms_used >> img & 1 != 0 {
                continue;
            }
            let mut branch = st.clone();
            if self.propagate(&mut branch, [Assign::Sym(y, img)]) {
                total += self.finish(branch);
            }
        }
        total
    }

    fn verify(&self, st: &AutState) -> bool {
        for row in 0..self.k {
            for col in 0..self.n {
                let i = st.row_img[row] as usize;
                let j = st.col_img[col] as usize;
                if self.r.get(i, j) != st.sym_img[self.r.get(row, col) as usize] {
                    return false;
                }
            }
        }
        true
    }
}

fn ensure_normalized(r: &Rectangle, what: &str) -> Result<()> {
    if !is_latin(r) {
        return Err(Error::Precondition(format!("{what} requires a Latin rectangle")));
    }
    if !r.is_normalized() {
        return Err(Error::Precondition(format!(
            "{what} requires a normalized rectangle; call normalize first"
        )));
    }
    Ok(())
}

/// Order of the autotopism group of a normalized Latin rectangle.
pub fn autotopism_order(r: &Rectangle) -> Result<u64> {
    ensure_normalized(r, "autotopism_order")?;
    Ok(AutSearch::new(r, false).count())
}

/// All isotopisms fixing `r`, for inspection in tests.
pub fn autotopisms(r: &Rectangle) -> Result<Vec<Isotopism>> {
    ensure_normalized(r, "autotopisms")?;
    let mut search = AutSearch::new(r, true);
    search.count();
    Ok(search.found)
}

/// Swaps the roles of columns and symbols: each row is replaced by its
/// inverse permutation. An involution on Latin rectangles.
pub fn conjugate(r: &Rectangle) -> Result<Rectangle> {
    if !is_latin(r) {
        return Err(Error::Precondition("conjugate requires a Latin rectangle".into()));
    }
    let (n, k) = (r.n(), r.k());
    let mut cells = vec![0u8; k * n];
    for row in 0..k {
        for col in 0..n {
            cells[row * n + r.get(row, col) as usize] = col as u8;
        }
    }
    Rectangle::new(r.params(), cells)
}

/// True iff `r` is isotopic to its conjugate.
pub fn is_self_conjugate(r: &Rectangle) -> Result<bool> {
    are_isotopic(r, &conjugate(r)?)
}

/// Conjugation statistics over a list of distinct class representatives:
/// the number of classes fixed by conjugation, and the number of classes
/// counted up to conjugation. Conjugation pairs up the non-fixed classes,
/// so the folded count is `(total + fixed) / 2`; the folded count is the
/// quantity tabulated as "self-conjugate" in the published censuses.
///
/// The family must be conjugation-closed (the conjugate of a near Youden
/// rectangle is again one, by the covering-number theorem, and likewise
/// for Youden rectangles).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConjugationCounts {
    /// Classes isotopic to their own conjugate.
    pub fixed: u64,
    /// Classes counted with conjugate pairs identified.
    pub folded: u64,
}

pub fn conjugation_counts(reps: &[Rectangle]) -> Result<ConjugationCounts> {
    use rayon::prelude::*;
    let fixed = reps
        .par_iter()
        .map(|r| is_self_conjugate(r).map(u64::from))
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(ConjugationCounts { fixed, folded: (reps.len() as u64 + fixed) / 2 })
}
