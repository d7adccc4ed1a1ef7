//! Independent brute-force reference implementations used to validate the
//! optimized search and autotopism computation on tiny parameters.
//!
//! Deliberately single-threaded and structurally different from the fast
//! paths: rectangles are enumerated row by row with no isomorph pruning and
//! reduced afterwards by full canonicalization; autotopism counting walks
//! the whole reduced action space with no propagation shortcuts.

use std::collections::BTreeSet;

use crate::design::{classify_rectangle, is_latin, Params, Rectangle, RectangleKind};
use crate::enumerate::ClassCatalog;
use crate::error::{Error, Result};
use crate::isotopy::{autotopism_order, canonical_form};

/// A catalog produced by the brute-force path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleCatalog {
    pub provenance: &'static str,
    pub catalog: ClassCatalog,
}

const ENUM_GUARD_N: usize = 7;
const AUT_GUARD_N: usize = 13;
const AUT_GUARD_K: usize = 6;

/// Enumerates every normalized rectangle of the kind by backtracking over
/// rows-of-permutations, then dedups by full canonical forms.
/// Guarded to `n <= 7`; see [`brute_enumerate_unguarded`].
pub fn brute_enumerate(p: &Params, kind: RectangleKind) -> Result<OracleCatalog> {
    if p.n() > ENUM_GUARD_N {
        return Err(Error::Guard(format!(
            "brute enumeration is limited to n <= {ENUM_GUARD_N}; use the explicit override"
        )));
    }
    brute_enumerate_unguarded(p, kind)
}

/// The unguarded variant; runtimes explode quickly with n.
pub fn brute_enumerate_unguarded(p: &Params, kind: RectangleKind) -> Result<OracleCatalog> {
    match kind {
        RectangleKind::Youden | RectangleKind::NearYouden | RectangleKind::ThreeLambda => {}
        other => {
            return Err(Error::KindMismatch(format!(
                "cannot enumerate kind {}",
                other.as_str()
            )))
        }
    }
    let n = p.n();
    let mut rows: Vec<Vec<u8>> = vec![(0..n as u8).collect()];
    let mut col_used: Vec<u64> = (0..n).map(|c| 1u64 << c).collect();
    let mut found = BTreeSet::new();

    fn place_row(
        p: &Params,
        kind: RectangleKind,
        rows: &mut Vec<Vec<u8>>,
        col_used: &mut Vec<u64>,
        found: &mut BTreeSet<Rectangle>,
    ) -> Result<()> {
        let (n, k) = (p.n(), p.k());
        if rows.len() == k {
            let mut cells = Vec::with_capacity(k * n);
            for row in rows.iter() {
                cells.extend_from_slice(row);
            }
            let rect = Rectangle::new(*p, cells)?;
            debug_assert!(is_latin(&rect));
            if classify_rectangle(&rect) == kind {
                found.insert(canonical_form(&rect)?.into_rect());
            }
            return Ok(());
        }
        let i = rows.len();
        // Normalized: the row starts with its index.
        let mut row = vec![0u8; n];
        row[0] = i as u8;
        col_used[0] |= 1 << i;
        fill_cells(p, kind, 1, 1u64 << i, &mut row, rows, col_used, found)?;
        col_used[0] &= !(1 << i);
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn fill_cells(
        p: &Params,
        kind: RectangleKind,
        c: usize,
        row_mask: u64,
        row: &mut Vec<u8>,
        rows: &mut Vec<Vec<u8>>,
        col_used: &mut Vec<u64>,
        found: &mut BTreeSet<Rectangle>,
    ) -> Result<()> {
        let n = p.n();
        if c == n {
            rows.push(row.clone());
            place_row(p, kind, rows, col_used, found)?;
            rows.pop();
            return Ok(());
        }
        for s in 0..n as u8 {
            let bit = 1u64 << s;
            if row_mask & bit != 0 || col_used[c] & bit != 0 {
                continue;
            }
            row[c] = s;
            col_used[c] |= bit;
            fill_cells(p, kind, c + 1, row_mask | bit, row, rows, col_used, found)?;
            col_used[c] &= !bit;
        }
        Ok(())
    }

    place_row(p, kind, &mut rows, &mut col_used, &mut found)?;
    let reps: Vec<Rectangle> = found.into_iter().collect();
    let aut_orders = reps.iter().map(autotopism_order).collect::<Result<Vec<_>>>()?;
    Ok(OracleCatalog {
        provenance: "oracle",
        catalog: ClassCatalog { params: *p, kind, reps, aut_orders },
    })
}

/// Counts fixing isotopisms by walking the full reduced action space:
/// `n` choices of image column 0, `k!` row permutations, `(n-k)!`
/// completions of the symbol permutation. Guarded to `n <= 13`, `k <= 6`;
/// see [`brute_autotopism_order_unguarded`].
pub fn brute_autotopism_order(r: &Rectangle) -> Result<u64> {
    if r.n() > AUT_GUARD_N || r.k() > AUT_GUARD_K {
        return Err(Error::Guard(format!(
            "brute autotopism counting is limited to n <= {AUT_GUARD_N}, k <= {AUT_GUARD_K}"
        )));
    }
    brute_autotopism_order_unguarded(r)
}

/// The unguarded variant.
pub fn brute_autotopism_order_unguarded(r: &Rectangle) -> Result<u64> {
    if !is_latin(r) || !r.is_normalized() {
        return Err(Error::Precondition(
            "brute autotopism counting requires a normalized Latin rectangle".into(),
        ));
    }
    let (n, k) = (r.n(), r.k());
    let mut count = 0u64;
    let mut row_perm: Vec<u8> = (0..k as u8).collect();
    for c0 in 0..n {
        let col_syms: Vec<u8> = (0..k).map(|i| r.get(i, c0)).collect();
        let in_col: u64 = col_syms.iter().fold(0, |m, &s| m | 1 << s);
        let rest: Vec<u8> = (0..n as u8).filter(|&s| in_col >> s & 1 == 0).collect();
        permute_all(&mut row_perm, &mut |rp| {
            let mut sym = vec![u8::MAX; n];
            for (i, &s) in col_syms.iter().enumerate() {
                sym[s as usize] = rp[i];
            }
            let r0 = rp.iter().position(|&v| v == 0).unwrap();
            let mut rest_perm: Vec<u8> = (0..rest.len() as u8).collect();
            permute_all(&mut rest_perm, &mut |tail| {
                let mut sym = sym.clone();
                for (idx, &s) in rest.iter().enumerate() {
                    sym[s as usize] = k as u8 + tail[idx];
                }
                // The first image row must be the identity, which pins the
                // column permutation.
                let mut col = vec![0u8; n];
                for c in 0..n {
                    col[c] = sym[r.get(r0, c) as usize];
                }
                for i in 0..k {
                    for c in 0..n {
                        if sym[r.get(i, c) as usize]
                            != r.get(rp[i] as usize, col[c] as usize)
                        {
                            return;
                        }
                    }
                }
                count += 1;
            });
        });
    }
    Ok(count)
}

fn permute_all(items: &mut [u8], f: &mut impl FnMut(&[u8])) {
    fn heap(items: &mut [u8], len: usize, f: &mut impl FnMut(&[u8])) {
        if len <= 1 {
            f(items);
            return;
        }
        for i in 0..len {
            heap(items, len - 1, f);
            if len % 2 == 0 {
                items.swap(i, len - 1);
            } else {
                items.swap(0, len - 1);
            }
        }
    }
    let len = items.len();
    heap(items, len, f);
}
