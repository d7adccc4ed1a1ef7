//! Reference designs used in tests and documentation.
//!
//! All of these are published, well-studied objects; names record the
//! dimensions and the property that makes each one interesting.

use crate::arrays::GridArray;
use crate::design::Rectangle;

fn rect(rows: &[&[u8]]) -> Rectangle {
    Rectangle::from_rows(rows).expect("sample rectangle is well-formed")
}

fn grid(v: usize, rows: &[&[i8]]) -> GridArray {
    let r = rows.len();
    let c = rows[0].len();
    let cells = rows
        .iter()
        .flat_map(|row| row.iter().map(|&x| if x < 0 { None } else { Some(x as u8) }))
        .collect();
    GridArray::new(r, c, v, cells).expect("sample array is well-formed")
}

/// 4x6 near Youden rectangle with column intersection sizes {2, 3}.
pub fn near_youden_4x6() -> Rectangle {
    rect(&[
        &[0, 1, 2, 3, 4, 5],
        &[1, 0, 5, 4, 3, 2],
        &[2, 4, 0, 5, 1, 3],
        &[3, 5, 4, 0, 2, 1],
    ])
}

/// 4x13 Youden rectangle with autotopism group order 39; the group acts
/// transitively on columns, so it arises from a difference set.
pub fn youden_4x13_column_transitive() -> Rectangle {
    rect(&[
        &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12],
        &[1, 4, 5, 6, 2, 9, 10, 11, 0, 7, 8, 12, 3],
        &[2, 5, 7, 8, 9, 11, 0, 3, 4, 12, 1, 6, 10],
        &[3, 6, 8, 9, 10, 0, 7, 4, 12, 1, 11, 2, 5],
    ])
}

/// 4x9 triple array on 12 symbols with (v, e, lambda_cc) = (12, 3, 1).
pub fn triple_array_4x9() -> GridArray {
    grid(
        12,
        &[
            &[0, 2, 1, 4, 5, 6, 8, 7, 10],
            &[11, 3, 8, 5, 6, 7, 9, 1, 2],
            &[5, 7, 4, 9, 3, 11, 0, 10, 8],
            &[1, 0, 3, 2, 10, 4, 6, 9, 11],
        ],
    )
}

/// The column/symbol role exchange of [`triple_array_4x9`]: a 4x12 array on
/// 9 symbols with one empty cell per column and three per row.
pub fn rl_form_of_triple_array_4x9() -> GridArray {
    grid(
        9,
        &[
            &[0, 2, 1, -1, 3, 4, 5, 7, 6, -1, 8, -1],
            &[-1, 7, 8, 1, -1, 3, 4, 5, 2, 6, -1, 0],
            &[6, -1, -1, 4, 2, 0, -1, 1, 8, 3, 7, 5],
            &[1, 0, 3, 2, 5, -1, 6, -1, -1, 7, 4, 8],
        ],
    )
}

/// 4x13 3-lambda Latin rectangle compatible with [`triple_array_4x9`]
/// (column intersection sizes 0, 1 and 2).
pub fn three_lambda_4x13() -> Rectangle {
    rect(&[
        &[9, 0, 2, 1, 10, 3, 4, 5, 7, 6, 11, 8, 12],
        &[10, 9, 7, 8, 1, 11, 3, 4, 5, 2, 6, 12, 0],
        &[11, 6, 9, 10, 4, 2, 0, 12, 1, 8, 3, 7, 5],
        &[12, 1, 0, 3, 2, 5, 9, 6, 10, 11, 7, 4, 8],
    ])
}

/// The unique 4x7 Youden rectangle compatible with transposed sesqui arrays:
/// columns 1, 2 and 6 yield them, column 5 yields a proper double array.
pub fn youden_4x7_sesqui_compatible() -> Rectangle {
    rect(&[
        &[0, 1, 2, 3, 4, 5, 6],
        &[1, 2, 3, 4, 6, 0, 5],
        &[2, 4, 5, 6, 0, 3, 1],
        &[3, 5, 6, 1, 2, 4, 0],
    ])
}

/// The 4x3 transposed sesqui array produced by
/// [`youden_4x7_sesqui_compatible`].
pub fn sesqui_transpose_4x3() -> GridArray {
    grid(6, &[&[0, 1, 4], &[1, 4, 2], &[2, 3, 5], &[3, 5, 0]])
}

/// 5x11 Youden rectangle with maximum compatibility: column 1 yields a
/// triple array and columns 2, 4, 6, 10 yield proper double arrays.
pub fn youden_5x11_max_compatibility() -> Rectangle {
    rect(&[
        &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
        &[1, 0, 3, 7, 6, 8, 9, 10, 5, 2, 4],
        &[2, 5, 7, 9, 0, 3, 1, 8, 10, 4, 6],
        &[3, 6, 8, 10, 9, 1, 2, 4, 0, 7, 5],
        &[4, 7, 6, 0, 8, 9, 10, 1, 2, 5, 3],
    ])
}

/// 6x11 Youden rectangle with maximum compatibility: column 9 yields a
/// triple array and column 3 yields a proper double array.
pub fn youden_6x11_max_compatibility() -> Rectangle {
    rect(&[
        &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
        &[1, 0, 4, 10, 5, 7, 8, 2, 3, 6, 9],
        &[2, 3, 6, 9, 7, 8, 0, 10, 1, 5, 4],
        &[3, 6, 9, 5, 10, 0, 4, 1, 2, 8, 7],
        &[4, 7, 3, 6, 8, 9, 2, 5, 10, 1, 0],
        &[5, 8, 7, 0, 3, 2, 10, 6, 9, 4, 1],
    ])
}

/// The unique 4x7 Youden rectangle where every column yields a proper double
/// array; autotopism group order 21, transitive on columns.
pub fn youden_4x7_column_transitive() -> Rectangle {
    rect(&[
        &[0, 1, 2, 3, 4, 5, 6],
        &[1, 2, 4, 5, 3, 6, 0],
        &[2, 4, 3, 6, 5, 0, 1],
        &[3, 5, 6, 1, 0, 2, 4],
    ])
}

/// The 4x3 proper double array every column of
/// [`youden_4x7_column_transitive`] yields (up to isotopism).
pub fn double_array_4x3() -> GridArray {
    grid(6, &[&[0, 1, 3], &[1, 2, 5], &[2, 4, 0], &[3, 5, 4]])
}

/// One of the two 5x11 Youden rectangles where every column yields a proper
/// double array; autotopism group order 55.
pub fn youden_5x11_aut55() -> Rectangle {
    rect(&[
        &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
        &[1, 2, 5, 6, 7, 3, 8, 9, 4, 10, 0],
        &[2, 5, 3, 8, 9, 6, 4, 10, 7, 0, 1],
        &[3, 6, 8, 7, 0, 4, 9, 1, 10, 2, 5],
        &[4, 7, 9, 0, 5, 10, 1, 3, 2, 6, 8],
    ])
}

/// The other such 5x11 Youden rectangle; autotopism group order 60.
pub fn youden_5x11_aut60() -> Rectangle {
    rect(&[
        &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
        &[1, 0, 5, 6, 7, 3, 4, 2, 9, 10, 8],
        &[2, 5, 0, 8, 9, 4, 10, 6, 1, 3, 7],
        &[3, 6, 8, 0, 10, 7, 2, 9, 4, 5, 1],
        &[4, 7, 9, 10, 0, 8, 5, 3, 6, 1, 2],
    ])
}

/// The unique 6x11 Youden rectangle where every column yields a proper
/// double array; autotopism group order 55, transitive on columns.
pub fn youden_6x11_column_transitive() -> Rectangle {
    rect(&[
        &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
        &[1, 2, 6, 4, 7, 8, 3, 5, 9, 10, 0],
        &[2, 6, 3, 7, 5, 9, 4, 8, 10, 0, 1],
        &[3, 4, 7, 8, 9, 0, 5, 10, 1, 2, 6],
        &[4, 7, 5, 9, 10, 1, 8, 0, 2, 6, 3],
        &[5, 8, 9, 0, 1, 6, 10, 2, 3, 4, 7],
    ])
}

/// The 6x5 double array every column of [`youden_6x11_column_transitive`]
/// yields.
pub fn double_array_6x5() -> GridArray {
    grid(
        10,
        &[
            &[0, 1, 2, 3, 5],
            &[1, 2, 6, 4, 8],
            &[2, 6, 3, 7, 9],
            &[3, 4, 7, 8, 0],
            &[4, 7, 5, 9, 1],
            &[5, 8, 9, 0, 6],
        ],
    )
}

/// 4x7 3-lambda Latin rectangle whose columns 2 and 3 yield non-isotopic
/// proper double arrays.
pub fn three_lambda_4x7_two_doubles() -> Rectangle {
    rect(&[
        &[0, 1, 2, 3, 4, 5, 6],
        &[1, 2, 0, 5, 3, 6, 4],
        &[2, 3, 4, 6, 0, 1, 5],
        &[3, 4, 5, 2, 6, 0, 1],
    ])
}

/// 3x7 3-lambda Latin rectangle whose columns 3 and 4 yield non-isotopic
/// proper double arrays.
pub fn three_lambda_3x7_two_doubles() -> Rectangle {
    rect(&[
        &[0, 1, 2, 3, 4, 5, 6],
        &[1, 0, 3, 5, 6, 4, 2],
        &[2, 3, 4, 6, 0, 1, 5],
    ])
}

/// 3x7 3-lambda Latin rectangle whose column 6 yields the first of the two
/// known 3x4 proper sesqui arrays.
pub fn three_lambda_3x7_sesqui_a() -> Rectangle {
    rect(&[
        &[0, 1, 2, 3, 4, 5, 6],
        &[1, 2, 0, 4, 5, 6, 3],
        &[2, 3, 4, 5, 6, 1, 0],
    ])
}

/// 3x7 3-lambda Latin rectangle whose column 3 yields the second 3x4 proper
/// sesqui array.
pub fn three_lambda_3x7_sesqui_b() -> Rectangle {
    rect(&[
        &[0, 1, 2, 3, 4, 5, 6],
        &[1, 2, 4, 0, 5, 6, 3],
        &[2, 3, 1, 4, 6, 0, 5],
    ])
}

/// First 3x4 proper sesqui array (normalized form).
pub fn sesqui_array_3x4_a() -> GridArray {
    grid(6, &[&[0, 1, 3, 4], &[1, 2, 4, 5], &[2, 3, 5, 0]])
}

/// Second 3x4 proper sesqui array (normalized form).
pub fn sesqui_array_3x4_b() -> GridArray {
    grid(6, &[&[0, 1, 3, 4], &[1, 2, 4, 5], &[2, 0, 5, 3]])
}

/// 4x7 3-lambda Latin rectangle with three columns (3, 4, 5) yielding
/// transposed sesqui arrays of two isotopism classes.
pub fn three_lambda_4x7_three_sesqui_t() -> Rectangle {
    rect(&[
        &[0, 1, 2, 3, 4, 5, 6],
        &[1, 0, 3, 4, 5, 6, 2],
        &[2, 3, 5, 6, 0, 1, 4],
        &[3, 4, 6, 5, 2, 0, 1],
    ])
}

/// Second 4x3 transposed sesqui array ([`sesqui_transpose_4x3`] is the
/// first).
pub fn sesqui_transpose_4x3_b() -> GridArray {
    grid(6, &[&[0, 1, 4], &[1, 4, 0], &[2, 3, 5], &[3, 5, 2]])
}
