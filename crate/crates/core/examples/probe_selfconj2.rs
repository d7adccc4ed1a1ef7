// Scratch: brute-force cross-check of (6,4) and (8,3) self-conjugacy.
use design_forge_core::design::{Params, Rectangle, RectangleKind};
use design_forge_core::enumerate::{enumerate_classes, SearchConfig};
use design_forge_core::isotopy::{canonical_form, conjugate};

fn brute_canonical(r: &Rectangle) -> Vec<u8> {
    let (n, k) = (r.n(), r.k());
    let mut best: Option<Vec<u8>> = None;
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
                let mut col = vec![0u8; n];
                for c in 0..n {
                    col[c] = sym[r.get(r0, c) as usize];
                }
                let mut cells = vec![0u8; k * n];
                for i in 0..k {
                    for c in 0..n {
                        cells[rp[i] as usize * n + col[c] as usize] = sym[r.get(i, c) as usize];
                    }
                }
                if best.is_none() || cells < *best.as_ref().unwrap() {
                    best = Some(cells);
                }
            });
        });
    }
    best.unwrap()
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

fn main() {
    for (n, k) in [(6usize, 4usize), (8, 3)] {
        let p = Params::new(n, k).unwrap();
        let cat = enumerate_classes(&p, RectangleKind::NearYouden, &SearchConfig::default())
            .unwrap();
        let mut brute_sc = 0;
        let mut fast_sc = 0;
        for rep in &cat.reps {
            let conj = conjugate(rep).unwrap();
            let b = brute_canonical(rep) == brute_canonical(&conj);
            let f = canonical_form(rep).unwrap() == canonical_form(&conj).unwrap();
            if b != f {
                println!("DISAGREEMENT on {:?}", rep.cells());
            }
            brute_sc += i32::from(b);
            fast_sc += i32::from(f);
        }
        println!("({n},{k}): brute self-conj {brute_sc}, fast self-conj {fast_sc}");
    }
}
