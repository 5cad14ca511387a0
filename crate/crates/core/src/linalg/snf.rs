use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `u * m * v == s` with `u`, `v` unimodular and `s` diagonal, nonnegative,
/// each diagonal entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    /// Diagonal of `s` (length `min(rows, cols)`), zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

fn smallest_nonzero(s: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in k..s.rows() {
        for j in k..s.cols() {
            let e = &s[(i, j)];
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            if best.as_ref().is_none_or(|(_, b)| a < *b) {
                best = Some(((i, j), a));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// Smith normal form with unimodular transforms.
///
/// Pivoting picks the entry of smallest absolute value in the trailing
/// submatrix; a pivot that fails to divide the rest of the block is fixed by
/// folding the offending row into the pivot row.
pub fn smith_normal_form(m: &IntMatrix) -> SnfDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    'outer: for k in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = smallest_nonzero(&s, k) else {
                break 'outer;
            };
            s.swap_rows(k, pi);
            u.swap_rows(k, pi);
            s.swap_cols(k, pj);
            v.swap_cols(k, pj);

            let pivot = s[(k, k)].clone();
            let mut clean = true;
            for i in k + 1..rows {
                if s[(i, k)].is_zero() {
                    continue;
                }
                let q = -s[(i, k)].div_floor(&pivot);
                s.add_row_multiple(i, k, &q);
                u.add_row_multiple(i, k, &q);
                clean &= s[(i, k)].is_zero();
            }
            for j in k + 1..cols {
                if s[(k, j)].is_zero() {
                    continue;
                }
                let q = -s[(k, j)].div_floor(&pivot);
                s.add_col_multiple(j, k, &q);
                v.add_col_multiple(j, k, &q);
                clean &= s[(k, j)].is_zero();
            }
            if !clean {
                continue;
            }

            let offending =
                (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !s[(i, j)].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(k, i, &one);
                    u.add_row_multiple(k, i, &one);
                }
                None => break,
            }
        }
        if s[(k, k)].is_negative() {
            s.negate_row(k);
            u.negate_row(k);
        }
    }

    SnfDecomposition { u, s, v }
}

/// Row-style Hermite normal form: nonzero rows only, pivots positive and
/// strictly increasing in column, entries above a pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut h = m.clone();
    let (rows, cols) = (h.rows(), h.cols());
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        loop {
            let best = (pivot_row..rows)
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by_key(|&i| h[(i, col)].abs());
            let Some(p) = best else { break };
            h.swap_rows(pivot_row, p);
            let pivot = h[(pivot_row, col)].clone();
            let mut done = true;
            for i in pivot_row + 1..rows {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = -h[(i, col)].div_floor(&pivot);
                h.add_row_multiple(i, pivot_row, &q);
                done &= h[(i, col)].is_zero();
            }
            if done {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            h.negate_row(pivot_row);
        }
        let pivot = h[(pivot_row, col)].clone();
        for i in 0..pivot_row {
            let q = -h[(i, col)].div_floor(&pivot);
            h.add_row_multiple(i, pivot_row, &q);
        }
        pivot_row += 1;
    }
    let kept: Vec<Vec<BigInt>> = (0..pivot_row).map(|i| h.row(i).to_vec()).collect();
    if kept.is_empty() {
        IntMatrix::zeros(0, cols)
    } else {
        IntMatrix::from_rows(&kept).expect("rows share a length")
    }
}
