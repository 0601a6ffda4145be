//! Exact integer linear algebra: normal forms, primitive bases, kernels and
//! Plücker minors. Everything here is a pure function of its inputs and
//! canonical where a choice exists; orientation is never adjusted here.

mod hermite;
mod matrix;
mod smith;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::subsets_of_size;
use crate::error::{Error, Result};

pub use hermite::{hermite_normal_form, HermiteDecomposition};
pub use matrix::IntMatrix;
pub use smith::{smith_normal_form, SmithDecomposition};

/// Whether the columns of `b` form a basis of a direct summand of `Z^d`:
/// full column rank and every Smith invariant factor equal to 1.
pub fn is_primitive_basis(b: &IntMatrix) -> Result<bool> {
    if b.cols() > b.rows() {
        return Err(Error::Dimension(format!(
            "{} basis vectors in Z^{}",
            b.cols(),
            b.rows()
        )));
    }
    let snf = smith_normal_form(b);
    let factors = snf.invariant_factors();
    Ok(factors.len() == b.cols() && factors.iter().all(One::is_one))
}

/// First Smith invariant factor different from 1, if any.
pub(crate) fn first_nontrivial_invariant(b: &IntMatrix) -> Option<BigInt> {
    smith_normal_form(b)
        .invariant_factors()
        .into_iter()
        .find(|f| !f.is_one())
}

fn require_full_column_rank(b: &IntMatrix) -> Result<()> {
    let r = b.rank();
    if r != b.cols() {
        return Err(Error::Rank {
            expected: b.cols(),
            found: r,
        });
    }
    Ok(())
}

/// Canonical primitive basis of `{v in Z^cols : A v = 0}`.
///
/// The kernel columns of the Hermite witness are re-reduced to Hermite form,
/// which is unique for the lattice, so the output depends only on the kernel.
pub fn integer_kernel_basis(a: &IntMatrix) -> IntMatrix {
    let dec = hermite_normal_form(a);
    let kernel = dec.u.column_range(dec.rank..a.cols());
    hermite_normal_form(&kernel).h
}

/// Canonical primitive basis of the saturation `(R B) ∩ Z^d`.
pub fn saturate(b: &IntMatrix) -> Result<IntMatrix> {
    require_full_column_rank(b)?;
    let annihilator = integer_kernel_basis(&b.transpose());
    Ok(integer_kernel_basis(&annihilator.transpose()))
}

/// An integer `M` (d x k) with `Bᵀ M = I_k`, i.e. a lift of the dual basis of
/// the lattice spanned by `B` through the restriction map `Z^d -> Z^k`.
pub fn dual_section(b: &IntMatrix) -> Result<IntMatrix> {
    let k = b.cols();
    if k > b.rows() {
        return Err(Error::Dimension(format!(
            "{} basis vectors in Z^{}",
            k,
            b.rows()
        )));
    }
    let dec = hermite_normal_form(&b.transpose());
    if dec.rank != k || !dec.h.column_range(0..k).is_identity() {
        return Err(Error::Primitivity(format!(
            "no integer section for basis {b}: restriction map is not surjective"
        )));
    }
    Ok(dec.u.column_range(0..k))
}

/// Extends a primitive `d x k` basis to a unimodular `d x d` matrix whose
/// first `k` columns are `b`.
pub fn complete_to_unimodular(b: &IntMatrix) -> Result<IntMatrix> {
    let section = dual_section(b)?;
    let complement = integer_kernel_basis(&section.transpose());
    b.hcat(&complement)
}

/// Maximal minors of a `d x k` basis, indexed by ascending row subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlueckerVector {
    pub d: usize,
    pub k: usize,
    /// `(subset, minor)` for every size-`k` subset of `1..=d`, in
    /// lexicographic order; zero minors are kept.
    pub coefficients: Vec<(Vec<usize>, BigInt)>,
}

impl PlueckerVector {
    /// Minor at a 1-based ascending row subset.
    pub fn get(&self, subset: &[usize]) -> Option<&BigInt> {
        self.coefficients
            .iter()
            .find(|(s, _)| s == subset)
            .map(|(_, c)| c)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|(_, c)| c.is_zero())
    }
}

pub fn pluecker_minors(b: &IntMatrix) -> Result<PlueckerVector> {
    let (d, k) = (b.rows(), b.cols());
    if k > d {
        return Err(Error::Dimension(format!("{k} basis vectors in Z^{d}")));
    }
    let coefficients = subsets_of_size(d, k)
        .into_iter()
        .map(|rows| {
            let minor = b.select_rows(&rows).det();
            (rows.iter().map(|r| r + 1).collect(), minor)
        })
        .collect();
    Ok(PlueckerVector { d, k, coefficients })
}

#[cfg(test)]
pub(crate) fn is_unimodular(m: &IntMatrix) -> bool {
    m.is_square() && {
        let det = m.det();
        det.is_one() || (-det).is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn primitivity_examples() {
        assert!(is_primitive_basis(&m(&[&[1], &[1]])).unwrap());
        assert!(!is_primitive_basis(&m(&[&[2], &[0]])).unwrap());
        assert!(is_primitive_basis(&IntMatrix::empty(3)).unwrap());
        assert!(!is_primitive_basis(&m(&[&[1, 2], &[2, 4]])).unwrap());
        assert!(matches!(
            is_primitive_basis(&m(&[&[1, 0, 0], &[0, 1, 0]])),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn saturation_examples() {
        assert_eq!(saturate(&m(&[&[2], &[0]])).unwrap(), m(&[&[1], &[0]]));
        assert_eq!(saturate(&m(&[&[2], &[2]])).unwrap(), m(&[&[1], &[1]]));
        let prim = m(&[&[1, 0], &[1, 1], &[0, 3]]);
        let s = saturate(&prim).unwrap();
        assert!(is_primitive_basis(&s).unwrap());
        assert_eq!(saturate(&s).unwrap(), s);
        assert!(matches!(
            saturate(&m(&[&[1, 2], &[1, 2]])),
            Err(Error::Rank {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn kernel_examples() {
        let a = m(&[&[1, 1]]);
        let n = integer_kernel_basis(&a);
        assert_eq!(n, m(&[&[1], &[-1]]));
        assert!((&a * &n).is_zero());

        let n = integer_kernel_basis(&IntMatrix::identity(3));
        assert_eq!((n.rows(), n.cols()), (3, 0));

        let n = integer_kernel_basis(&IntMatrix::zeros(1, 2));
        assert!(n.is_identity());
    }

    #[test]
    fn dual_section_examples() {
        let b = m(&[&[1], &[1]]);
        let s = dual_section(&b).unwrap();
        assert!((&b.transpose() * &s).is_identity());

        assert!(dual_section(&IntMatrix::identity(3)).unwrap().is_identity());

        let s = dual_section(&IntMatrix::empty(2)).unwrap();
        assert_eq!((s.rows(), s.cols()), (2, 0));

        assert!(matches!(
            dual_section(&m(&[&[2], &[0]])),
            Err(Error::Primitivity(_))
        ));
    }

    #[test]
    fn completion_is_unimodular() {
        for b in [
            m(&[&[1], &[1]]),
            m(&[&[2, 1], &[3, 1], &[5, 7]]),
            IntMatrix::empty(3),
            IntMatrix::identity(2),
        ] {
            let c = complete_to_unimodular(&b).unwrap();
            assert!(is_unimodular(&c));
            assert_eq!(c.column_range(0..b.cols()), b);
        }
    }

    #[test]
    fn pluecker_examples() {
        let p = pluecker_minors(&m(&[&[1], &[1]])).unwrap();
        assert_eq!(p.get(&[1]), Some(&BigInt::from(1)));
        assert_eq!(p.get(&[2]), Some(&BigInt::from(1)));

        let p = pluecker_minors(&IntMatrix::identity(2)).unwrap();
        assert_eq!(p.coefficients, vec![(vec![1, 2], BigInt::from(1))]);

        let p = pluecker_minors(&m(&[&[1, 0], &[0, 1], &[0, 0]])).unwrap();
        let expected: Vec<(Vec<usize>, BigInt)> = vec![
            (vec![1, 2], 1.into()),
            (vec![1, 3], 0.into()),
            (vec![2, 3], 0.into()),
        ];
        assert_eq!(p.coefficients, expected);
    }
}
