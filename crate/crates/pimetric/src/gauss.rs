//! Gaussian elimination over GF(q) on raw index rows. Shared by the code
//! utilities and the matrix layer; everything is exact table arithmetic.

use alloc::vec::Vec;

use crate::field::FieldSpec;

/// Reduce `rows` (each of equal length) to row echelon form in place.
/// Returns the rank; the first `rank` rows afterwards form a basis of the
/// row space.
pub(crate) fn row_echelon(rows: &mut [Vec<u16>], field: &FieldSpec) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row == nrows {
            break;
        }
        let Some(src) = (pivot_row..nrows).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot_row, src);
        let (upper, lower) = rows.split_at_mut(pivot_row + 1);
        let pivot = &upper[pivot_row];
        let inv = field.inv_idx(pivot[col]);
        for row in lower.iter_mut() {
            let factor = field.mul_idx(row[col], inv);
            if factor == 0 {
                continue;
            }
            for (rc, &pc) in row[col..].iter_mut().zip(&pivot[col..]) {
                *rc = field.sub_idx(*rc, field.mul_idx(factor, pc));
            }
        }
        pivot_row += 1;
    }
    pivot_row
}

/// Determinant of a k x k matrix given row-major, as an element index.
pub(crate) fn determinant(entries: &[u16], k: usize, field: &FieldSpec) -> u16 {
    debug_assert_eq!(entries.len(), k * k);
    let mut m: Vec<u16> = entries.to_vec();
    let at = |m: &[u16], r: usize, c: usize| m[r * k + c];
    let mut det = 1u16;
    for col in 0..k {
        let Some(src) = (col..k).find(|&r| at(&m, r, col) != 0) else {
            return 0;
        };
        if src != col {
            for c in 0..k {
                m.swap(col * k + c, src * k + c);
            }
            det = field.mul_idx(det, field.neg_idx(1));
        }
        let pivot = at(&m, col, col);
        det = field.mul_idx(det, pivot);
        let inv = field.inv_idx(pivot);
        for r in col + 1..k {
            let factor = field.mul_idx(at(&m, r, col), inv);
            if factor == 0 {
                continue;
            }
            for c in col..k {
                let sub = field.mul_idx(factor, at(&m, col, c));
                m[r * k + c] = field.sub_idx(m[r * k + c], sub);
            }
        }
    }
    det
}
