use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Smith normal form `U * A * V = D` with unimodular witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries `d1 | d2 | ... | dr`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n)
            .map(|i| self.d[(i, i)].clone())
            .take_while(|v| !v.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn min_abs_position(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let v = d[(i, j)].abs();
            if v.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| v < *b) {
                best = Some(((i, j), v));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = min_abs_position(&d, t) else {
                return SmithDecomposition { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_columns(t, pj);
            v.swap_columns(t, pj);

            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                let q = d[(i, t)].div_floor(&pivot);
                if !q.is_zero() {
                    let f = -q;
                    d.add_row_multiple(i, t, &f);
                    u.add_row_multiple(i, t, &f);
                }
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                let q = d[(t, j)].div_floor(&pivot);
                if !q.is_zero() {
                    let f = -q;
                    d.add_column_multiple(j, t, &f);
                    v.add_column_multiple(j, t, &f);
                }
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // Enforce divisibility by folding an offending row into row t.
            let offending =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    d.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { u, d, v }
}
