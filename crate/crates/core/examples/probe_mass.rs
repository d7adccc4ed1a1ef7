// Scratch: mass-formula consistency for the (7,4) 3-lambda census.
use design_forge_core::design::{classify_rectangle, Params, Rectangle, RectangleKind};
use design_forge_core::enumerate::{enumerate_classes, SearchConfig};

fn main() {
    let p = Params::new(7, 4).unwrap();
    let (n, k) = (7usize, 4usize);

    // Direct count of normalized 3-lambda rectangles, no dedup.
    let mut direct = 0u64;
    let mut col_used: Vec<u64> = (0..n).map(|c| 1u64 << c).collect();
    let mut rows: Vec<Vec<u8>> = vec![(0..n as u8).collect()];
    count_rows(&p, &mut rows, &mut col_used, &mut direct);
    println!("normalized window rectangles (direct): {direct}");

    let cat =
        enumerate_classes(&p, RectangleKind::ThreeLambda, &SearchConfig::default()).unwrap();
    let mass: u64 = cat
        .aut_orders
        .iter()
        .map(|&a| (n as u64) * 24 * 6 / a)
        .sum();
    println!("catalog mass sum n*k!*(n-k)!/|Aut|:   {mass}");

    fn count_rows(p: &Params, rows: &mut Vec<Vec<u8>>, col_used: &mut Vec<u64>, out: &mut u64) {
        let (n, k) = (p.n(), p.k());
        if rows.len() == k {
            let mut cells = Vec::with_capacity(k * n);
            for row in rows.iter() {
                cells.extend_from_slice(row);
            }
            let rect = Rectangle::new(*p, cells).unwrap();
            if classify_rectangle(&rect) == RectangleKind::ThreeLambda {
                *out += 1;
            }
            return;
        }
        let i = rows.len();
        let mut row = vec![0u8; n];
        row[0] = i as u8;
        col_used[0] |= 1 << i;
        fill(p, 1, 1u64 << i, &mut row, rows, col_used, out);
        col_used[0] &= !(1 << i);
    }

    #[allow(clippy::too_many_arguments)]
    fn fill(
        p: &Params,
        c: usize,
        row_mask: u64,
        row: &mut Vec<u8>,
        rows: &mut Vec<Vec<u8>>,
        col_used: &mut Vec<u64>,
        out: &mut u64,
    ) {
        let n = p.n();
        if c == n {
            rows.push(row.clone());
            count_rows(p, rows, col_used, out);
            rows.pop();
            return;
        }
        for s in 0..n as u8 {
            let bit = 1u64 << s;
            if row_mask & bit != 0 || col_used[c] & bit != 0 {
                continue;
            }
            row[c] = s;
            col_used[c] |= bit;
            fill(p, c + 1, row_mask | bit, row, rows, col_used, out);
            col_used[c] &= !bit;
        }
    }
}
