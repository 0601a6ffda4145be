use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Column-style Hermite normal form `A * U = H` with its unimodular witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteDecomposition {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Number of nonzero columns of `h`, which is the rank of the input.
    pub rank: usize,
}

/// Extended gcd normalized so that `g >= 0` and `x*a + y*b = g`.
pub(crate) fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Computes the column Hermite normal form of `a`.
///
/// Pivot rows increase strictly from left to right, pivots are positive,
/// entries above a pivot vanish and entries left of a pivot in its row lie in
/// `[0, pivot)`. The trailing `cols - rank` columns of `h` are zero, so the
/// matching columns of `u` span the integer kernel of `a`.
pub fn hermite_normal_form(a: &IntMatrix) -> HermiteDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(n);
    let mut p = 0;
    for i in 0..m {
        if p == n {
            break;
        }
        for j in p + 1..n {
            if h[(i, j)].is_zero() {
                continue;
            }
            let (x0, y0) = (h[(i, p)].clone(), h[(i, j)].clone());
            let (g, x, y) = ext_gcd(&x0, &y0);
            let r = -(&y0 / &g);
            let s = &x0 / &g;
            h.combine_columns(p, j, [&x, &y, &r, &s]);
            u.combine_columns(p, j, [&x, &y, &r, &s]);
        }
        if h[(i, p)].is_zero() {
            continue;
        }
        if h[(i, p)].is_negative() {
            h.negate_column(p);
            u.negate_column(p);
        }
        let pivot = h[(i, p)].clone();
        for j in 0..p {
            let q = h[(i, j)].div_floor(&pivot);
            if !q.is_zero() {
                let f = -q;
                h.add_column_multiple(j, p, &f);
                u.add_column_multiple(j, p, &f);
            }
        }
        p += 1;
    }
    HermiteDecomposition { h, u, rank: p }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(a: &IntMatrix) -> HermiteDecomposition {
        let dec = hermite_normal_form(a);
        assert_eq!(&(a * &dec.u), &dec.h, "A*U != H for {a}");
        assert!(dec.u.det().abs().is_one(), "U not unimodular for {a}");
        dec
    }

    #[test]
    fn index_four_lattice() {
        let a = IntMatrix::from_rows(&[[2, 4], [0, 2]]);
        let dec = check(&a);
        assert_eq!(dec.h.det().abs(), BigInt::from(4));
        assert_eq!(dec.h, IntMatrix::from_rows(&[[2, 0], [0, 2]]));
    }

    #[test]
    fn identity_is_fixed() {
        let dec = check(&IntMatrix::identity(3));
        assert!(dec.h.is_identity());
        assert!(dec.u.is_identity());
    }

    #[test]
    fn empty_lattice() {
        let dec = check(&IntMatrix::empty(3));
        assert_eq!((dec.h.rows(), dec.h.cols()), (3, 0));
        assert_eq!((dec.u.rows(), dec.u.cols()), (0, 0));
        assert_eq!(dec.rank, 0);
    }

    #[test]
    fn echelon_shape_and_reduction() {
        let a = IntMatrix::from_rows(&[[3, 5, 7], [1, -2, 4], [0, 6, 9]]);
        let dec = check(&a);
        let h = &dec.h;
        // pivots in rows 0,1,2 for columns 0,1,2; entries above vanish
        for j in 0..3 {
            assert!(h[(j, j)] > BigInt::zero());
            for i in 0..j {
                assert!(h[(i, j)].is_zero());
            }
            for l in 0..j {
                assert!(h[(j, l)] >= BigInt::zero() && h[(j, l)] < h[(j, j)]);
            }
        }
        assert_eq!(h.det().abs(), a.det().abs());
    }

    #[test]
    fn rank_deficient_input_has_zero_tail() {
        let a = IntMatrix::from_rows(&[[1, 1, 2], [2, 2, 4]]);
        let dec = check(&a);
        assert_eq!(dec.rank, 1);
        assert!(dec.h.column_range(1..3).is_zero());
    }
}
