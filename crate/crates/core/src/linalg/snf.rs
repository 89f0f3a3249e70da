use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Invariant factors of an integer matrix, with optional unimodular
/// witnesses `P`, `Q` such that `P * M * Q` is the diagonal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// `min(rows, cols)` entries: nonzero factors in divisibility order, then zeros.
    pub invariant_factors: Vec<BigInt>,
    pub witnesses: Option<(IntMatrix, IntMatrix)>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().take_while(|d| !d.is_zero()).count()
    }

    pub fn nonzero_factors(&self) -> &[BigInt] {
        &self.invariant_factors[..self.rank()]
    }

    pub fn diagonal(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zeros(rows, cols);
        for (i, f) in self.invariant_factors.iter().enumerate() {
            d[(i, i)] = f.clone();
        }
        d
    }
}

struct Reducer {
    a: IntMatrix,
    p: Option<IntMatrix>,
    q: Option<IntMatrix>,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(p) = &mut self.p {
            p.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(q) = &mut self.q {
            q.swap_cols(i, j);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_row_multiple(dst, src, f);
        if let Some(p) = &mut self.p {
            p.add_row_multiple(dst, src, f);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_col_multiple(dst, src, f);
        if let Some(q) = &mut self.q {
            q.add_col_multiple(dst, src, f);
        }
    }

    fn negate_row(&mut self, r: usize) {
        self.a.negate_row(r);
        if let Some(p) = &mut self.p {
            p.negate_row(r);
        }
    }

    /// Position of the nonzero entry of least absolute value in the
    /// trailing submatrix starting at `(t, t)`.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), &BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = &self.a[(i, j)];
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(_, b)| v.magnitude() < b.magnitude()) {
                    best = Some(((i, j), v));
                    if v.magnitude() == &1u32.into() {
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(pos, _)| pos)
    }

    /// One pass clearing column `t` and row `t` against the pivot by
    /// nearest-integer quotients. Returns true if both are now clear.
    fn clear_cross(&mut self, t: usize) -> bool {
        let mut clean = true;
        for i in t + 1..self.a.rows() {
            if self.a[(i, t)].is_zero() {
                continue;
            }
            let q = nearest_quotient(&self.a[(i, t)], &self.a[(t, t)]);
            if !q.is_zero() {
                self.add_row(i, t, &-q);
            }
            clean &= self.a[(i, t)].is_zero();
        }
        for j in t + 1..self.a.cols() {
            if self.a[(t, j)].is_zero() {
                continue;
            }
            let q = nearest_quotient(&self.a[(t, j)], &self.a[(t, t)]);
            if !q.is_zero() {
                self.add_col(j, t, &-q);
            }
            clean &= self.a[(t, j)].is_zero();
        }
        clean
    }

    fn run(mut self) -> SnfResult {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        let n = rows.min(cols);
        for t in 0..n {
            loop {
                let Some((i, j)) = self.min_pivot(t) else {
                    return self.finish(n);
                };
                self.swap_rows(t, i);
                self.swap_cols(t, j);
                if !self.clear_cross(t) {
                    continue;
                }
                // Enforce divisibility of the trailing block by the pivot.
                let pivot = self.a[(t, t)].clone();
                let bad_row = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !self.a[(i, j)].is_multiple_of(&pivot)));
                match bad_row {
                    Some(i) => self.add_row(t, i, &BigInt::from(1)),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
        }
        self.finish(n)
    }

    fn finish(self, n: usize) -> SnfResult {
        let invariant_factors = (0..n).map(|i| self.a[(i, i)].clone()).collect();
        let witnesses = match (self.p, self.q) {
            (Some(p), Some(q)) => Some((p, q)),
            _ => None,
        };
        SnfResult { invariant_factors, witnesses }
    }
}

fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    // r has the sign of b; step toward the nearer multiple.
    if (BigInt::from(2) * &r).magnitude() > b.magnitude() {
        q + 1
    } else {
        q
    }
}

/// Smith normal form by minimal-absolute-value pivoting with row/column
/// remainder reduction.
pub fn snf(m: &IntMatrix, want_witnesses: bool) -> SnfResult {
    let reducer = Reducer {
        a: m.clone(),
        p: want_witnesses.then(|| IntMatrix::identity(m.rows())),
        q: want_witnesses.then(|| IntMatrix::identity(m.cols())),
    };
    reducer.run()
}
