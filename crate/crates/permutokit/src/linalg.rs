//! Exact Gaussian elimination for the small dense systems that cone
//! membership and span checks need. No pivot tolerance: a pivot is any
//! nonzero rational.

use num_traits::Zero;

use crate::rational::Rat;
use crate::{Error, Result};

/// Rank of a matrix given as rows.
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..nrows {
            if i != r && !m[i][col].is_zero() {
                let factor = &m[i][col] / &m[r][col];
                for c in col..ncols {
                    let delta = &factor * &m[r][c];
                    m[i][c] = &m[i][c] - &delta;
                }
            }
        }
        r += 1;
        if r == nrows {
            break;
        }
    }
    r
}

/// Solves `sum_a t_a * cols[a] = rhs` for independent columns.
///
/// Returns `Ok(None)` when `rhs` is outside the column span, and
/// `Err(DegenerateSystem)` when the columns are linearly dependent (callers
/// are expected to pass forests, whose root vectors are independent).
pub fn solve_columns(cols: &[Vec<Rat>], rhs: &[Rat]) -> Result<Option<Vec<Rat>>> {
    let k = cols.len();
    let dim = rhs.len();
    for c in cols {
        if c.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: c.len(),
            });
        }
    }
    // Augmented matrix [cols | rhs], one row per ambient coordinate.
    let mut m: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();

    let mut pivot_rows: Vec<usize> = Vec::with_capacity(k);
    let mut r = 0;
    for col in 0..k {
        let Some(p) = (r..dim).find(|&i| !m[i][col].is_zero()) else {
            return Err(Error::DegenerateSystem(
                "dependent cone generators".to_string(),
            ));
        };
        m.swap(r, p);
        for i in 0..dim {
            if i != r && !m[i][col].is_zero() {
                let factor = &m[i][col] / &m[r][col];
                for c in col..=k {
                    let delta = &factor * &m[r][c];
                    m[i][c] = &m[i][c] - &delta;
                }
            }
        }
        pivot_rows.push(r);
        r += 1;
    }
    // Any nonzero residual row means rhs is not in the span.
    for i in r..dim {
        if !m[i][k].is_zero() {
            return Ok(None);
        }
    }
    let coeffs = pivot_rows
        .iter()
        .enumerate()
        .map(|(col, &row)| &m[row][k] / &m[row][col])
        .collect();
    Ok(Some(coeffs))
}
