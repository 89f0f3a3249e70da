use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Outcome of fraction-free elimination.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
    /// Determinant of the submatrix on `pivot_rows` x `pivot_cols`
    /// (1 when the rank is zero). Never zero.
    pub pivot_minor: BigInt,
}

/// Bareiss fraction-free elimination with row pivoting. Every
/// intermediate division is exact.
pub fn eliminate(m: &IntMatrix) -> Elimination {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut row_order: Vec<usize> = (0..rows).collect();
    let mut pivot_rows = Vec::new();
    let mut pivot_cols = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if pr != r {
            a.swap_rows(pr, r);
            row_order.swap(pr, r);
        }
        let pivot = a[(r, c)].clone();
        for i in r + 1..rows {
            let lead = a[(i, c)].clone();
            for j in c + 1..cols {
                let v = (&pivot * &a[(i, j)] - &lead * &a[(r, j)]) / &prev;
                a[(i, j)] = v;
            }
            a[(i, c)] = BigInt::zero();
        }
        pivot_cols.push(c);
        prev = pivot;
        r += 1;
    }
    let mut rows_sel: Vec<usize> = row_order[..r].to_vec();
    // The last pivot is the determinant of the pivot block with rows in
    // elimination order; sort rows and fix the sign accordingly.
    let mut minor = if r == 0 { BigInt::one() } else { prev };
    let perm_sign = permutation_parity(&rows_sel);
    rows_sel.sort_unstable();
    if perm_sign {
        minor = -minor;
    }
    pivot_rows.extend(rows_sel);
    Elimination { rank: r, pivot_rows, pivot_cols, pivot_minor: minor }
}

/// True if sorting `v` takes an odd number of transpositions.
fn permutation_parity(v: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                odd = !odd;
            }
        }
    }
    odd
}

pub fn rank(m: &IntMatrix) -> usize {
    eliminate(m).rank
}

/// Exact determinant by Bareiss elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let e = eliminate(m);
    if e.rank < m.rows() {
        return Ok(BigInt::zero());
    }
    Ok(e.pivot_minor)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(determinant(&IntMatrix::identity(3)).unwrap(), BigInt::from(1));
        assert_eq!(determinant(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]])).unwrap(), BigInt::from(-8));
        let k4_reduced = IntMatrix::from_rows(&[vec![3, -1, -1], vec![-1, 3, -1], vec![-1, -1, 3]]);
        assert_eq!(determinant(&k4_reduced).unwrap(), BigInt::from(16));
        assert!(matches!(determinant(&IntMatrix::zeros(2, 3)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn row_swaps_track_sign() {
        let m = IntMatrix::from_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]);
        assert_eq!(determinant(&m).unwrap(), BigInt::from(-1));
        let m = IntMatrix::from_rows(&[vec![0, 0, 2], vec![0, 3, 0], vec![5, 0, 0]]);
        assert_eq!(determinant(&m).unwrap(), BigInt::from(-30));
        assert_eq!(determinant(&IntMatrix::zeros(0, 0)).unwrap(), BigInt::from(1));
    }

    #[test]
    fn pivot_minor_is_a_real_minor() {
        let m = IntMatrix::from_rows(&[vec![0, 2, 4, 1], vec![0, 1, 2, 0], vec![0, 3, 6, 1]]);
        let e = eliminate(&m);
        assert_eq!(e.rank, 2);
        let sub = m.select(&e.pivot_rows, &e.pivot_cols);
        assert_eq!(determinant(&sub).unwrap(), e.pivot_minor);
    }
}
