//! Oriented subtori of `T^d` and of the dual torus, their Pontryagin-dual
//! subtori, and their classes in the exterior-algebra models.
//!
//! A subtorus `V/Γ` is stored as a primitive basis of its tangent lattice
//! `Γ ⊂ Z^d` (columns, ordered = oriented). The zero-dimensional subtorus
//! carries its orientation as an explicit sign.

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::subsets_of_size;
use crate::error::{Error, Result};
use crate::exterior::{AlgebraSpec, ExteriorClass, Monomial, Side, Variance, MAX_RANK};
use crate::lattice::{
    complete_to_unimodular, dual_section, first_nontrivial_invariant, hermite_normal_form,
    integer_kernel_basis, smith_normal_form, IntMatrix,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// Sign of a nonzero integer. Panics on zero.
    pub fn of(v: &BigInt) -> Sign {
        assert!(!v.is_zero(), "sign of zero");
        if v.is_negative() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    /// `(-1)^exponent`
    pub fn parity(exponent: usize) -> Sign {
        if exponent.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.value())
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// A closed connected subgroup of `T^d` (or of the dual torus) with an
/// orientation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SubtorusWire", into = "SubtorusWire")]
pub struct OrientedSubtorus {
    d: usize,
    side: Side,
    basis: IntMatrix,
    /// Orientation of the point when `dim() == 0`; always `Plus` otherwise.
    point_sign: Sign,
}

/// Result of intersecting two subtori.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionData {
    pub transverse: bool,
    /// The component through the identity, oriented so that
    /// `x(T) ∧ x(T') = component_count · x(component)`.
    pub identity_component: Option<OrientedSubtorus>,
    /// `[Z^d : Γ + Γ']`, the number of components.
    pub component_count: Option<BigInt>,
}

impl OrientedSubtorus {
    /// Validates `basis` as an embedded subtorus.
    ///
    /// A basis of index `n > 1` in its saturation describes an `n`-fold
    /// covering onto its image, which is rejected with the offending Smith
    /// invariant factor.
    pub fn new(d: usize, side: Side, basis: IntMatrix) -> Result<Self> {
        if d > MAX_RANK {
            return Err(Error::Dimension(format!("rank {d} exceeds {MAX_RANK}")));
        }
        if basis.rows() != d {
            return Err(Error::Dimension(format!(
                "basis has {} rows in ambient dimension {d}",
                basis.rows()
            )));
        }
        if basis.cols() > d {
            return Err(Error::Dimension(format!(
                "{} basis vectors in dimension {d}",
                basis.cols()
            )));
        }
        let rank = basis.rank();
        if rank != basis.cols() {
            return Err(Error::Rank {
                expected: basis.cols(),
                found: rank,
            });
        }
        if let Some(inv) = first_nontrivial_invariant(&basis) {
            return Err(Error::Embedding {
                invariant: inv.to_string(),
            });
        }
        Ok(OrientedSubtorus {
            d,
            side,
            basis,
            point_sign: Sign::Plus,
        })
    }

    /// The trivial subgroup with the given orientation.
    pub fn point(d: usize, side: Side, sign: Sign) -> Self {
        OrientedSubtorus {
            d,
            side,
            basis: IntMatrix::empty(d),
            point_sign: sign,
        }
    }

    pub fn full(d: usize, side: Side) -> Self {
        OrientedSubtorus {
            d,
            side,
            basis: IntMatrix::identity(d),
            point_sign: Sign::Plus,
        }
    }

    /// The subtorus spanned by standard vectors at ascending 1-based `indices`.
    pub fn coordinate(d: usize, side: Side, indices: &[usize]) -> Result<Self> {
        let m = Monomial::from_indices(indices, d)?;
        let cols: Vec<usize> = m.positions();
        Ok(OrientedSubtorus {
            d,
            side,
            basis: IntMatrix::identity(d).select_columns(&cols),
            point_sign: Sign::Plus,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn point_sign(&self) -> Sign {
        self.point_sign
    }

    /// Same subgroup, opposite orientation.
    pub fn reversed(&self) -> Self {
        let mut out = self.clone();
        if out.dim() == 0 {
            out.point_sign = -out.point_sign;
        } else {
            out.basis.negate_column(0);
        }
        out
    }

    /// Whether both describe the same subgroup, ignoring orientation.
    pub fn same_subgroup(&self, other: &OrientedSubtorus) -> bool {
        self.d == other.d
            && self.side == other.side
            && self.dim() == other.dim()
            && hermite_normal_form(&self.basis).h == hermite_normal_form(&other.basis).h
    }

    /// `Some(sign)` if `other` is the same subgroup, with `sign` comparing
    /// the two orientations.
    pub fn relative_orientation(&self, other: &OrientedSubtorus) -> Option<Sign> {
        if !self.same_subgroup(other) {
            return None;
        }
        let a = self.expand_homology();
        let b = other.expand_homology();
        if a == b {
            Some(Sign::Plus)
        } else if a == b.negated() {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    fn check_compatible(&self, other: &OrientedSubtorus) -> Result<()> {
        if self.d != other.d || self.side != other.side {
            return Err(Error::Spec(format!(
                "subtori live in different tori ({} on {} vs {} on {})",
                self.d, self.side, other.d, other.side
            )));
        }
        Ok(())
    }

    /// The Pontryagin-dual subtorus `ker(Ẑ^d -> Γ̂)` on the opposite side.
    ///
    /// Its basis `N` is the canonical basis of `{v : Bᵀ v = 0}`, sign-adjusted
    /// on the first column so that `det[N | M] = σ`, where `Bᵀ M = I` lifts
    /// the dual basis of `Γ̂`. `σ = +1` going from the base torus to the dual
    /// torus and `σ = (-1)^{kd}` in the other direction; that is the choice
    /// under which the two Fourier–Mukai sign formulas are adjoint under the
    /// pairing. A zero-dimensional result carries `σ · det M` as its sign.
    pub fn dual(&self) -> OrientedSubtorus {
        let k = self.dim();
        let sigma = match self.side {
            Side::Base => Sign::Plus,
            Side::Dual => Sign::parity(k * self.d),
        };
        let target = sigma * self.point_sign;
        let mut n = integer_kernel_basis(&self.basis.transpose());
        let m = dual_section(&self.basis).expect("validated basis is primitive");
        let det = n.hcat(&m).expect("same row count").det();
        let orientation = Sign::of(&det);
        let mut point_sign = Sign::Plus;
        if n.cols() == 0 {
            point_sign = orientation * target;
        } else if orientation != target {
            n.negate_column(0);
        }
        OrientedSubtorus {
            d: self.d,
            side: self.side.opposite(),
            basis: n,
            point_sign,
        }
    }

    /// The class `[T]_*` in the y-basis: the coefficient of `y_J` is the
    /// minor of the basis on rows `J`.
    pub fn expand_homology(&self) -> ExteriorClass {
        let spec = AlgebraSpec::new(self.d, Variance::Y, self.side);
        let eps = self.point_sign.to_bigint();
        let mut out = ExteriorClass::zero(spec);
        for rows in subsets_of_size(self.d, self.dim()) {
            let minor = self.basis.select_rows(&rows).det();
            out.add_term(Monomial::from_positions(rows), minor * &eps);
        }
        out
    }

    /// The class `[T]_!` in the x-basis: the coefficient of `x_J`,
    /// `|J| = d - k`, is `det[B | E_J]`. Pairing with `expand_homology` of a
    /// complementary subtorus then gives `det[B | B']`.
    pub fn expand_k_theory(&self) -> ExteriorClass {
        let spec = AlgebraSpec::new(self.d, Variance::X, self.side);
        let eps = self.point_sign.to_bigint();
        let identity = IntMatrix::identity(self.d);
        let mut out = ExteriorClass::zero(spec);
        for cols in subsets_of_size(self.d, self.d - self.dim()) {
            let full = self
                .basis
                .hcat(&identity.select_columns(&cols))
                .expect("same row count");
            out.add_term(Monomial::from_positions(cols), full.det() * &eps);
        }
        out
    }

    /// `det[B | B']` for complementary subtori; its absolute value is the
    /// number of intersection points.
    pub fn pairing_signed(&self, other: &OrientedSubtorus) -> Result<BigInt> {
        self.check_compatible(other)?;
        if self.dim() + other.dim() != self.d {
            return Err(Error::Dimension(format!(
                "dimensions {} and {} are not complementary in {}",
                self.dim(),
                other.dim(),
                self.d
            )));
        }
        let det = self.basis.hcat(&other.basis)?.det();
        Ok(det * (self.point_sign * other.point_sign).to_bigint())
    }

    pub fn intersection(&self, other: &OrientedSubtorus) -> Result<IntersectionData> {
        self.check_compatible(other)?;
        let d = self.d;
        let (k, k2) = (self.dim(), other.dim());
        let stacked = self.basis.hcat(&other.basis)?;
        if stacked.rank() != d {
            return Ok(IntersectionData {
                transverse: false,
                identity_component: None,
                component_count: None,
            });
        }
        let count: BigInt = smith_normal_form(&stacked)
            .invariant_factors()
            .into_iter()
            .product();

        // Γ ∩ Γ' = B·a for (a, a') in the kernel of [B | -B'].
        let relation = self.basis.hcat(&other.basis.scale(&-BigInt::one()))?;
        let kernel = integer_kernel_basis(&relation);
        let coords = kernel.select_rows(&(0..k).collect::<Vec<_>>());
        let coords2 = kernel.select_rows(&(k..k + k2).collect::<Vec<_>>());
        let meet = &self.basis * &coords;
        let dec = hermite_normal_form(&meet);
        let mut component = dec.h;
        let ca = &coords * &dec.u;
        let ca2 = &coords2 * &dec.u;
        let m = component.cols();

        let full = complete_to_unimodular(&ca)?;
        let full2 = complete_to_unimodular(&ca2)?;
        let pa = full.column_range(m..k);
        let pa2 = full2.column_range(m..k2);
        let g = component
            .hcat(&(&self.basis * &pa))?
            .hcat(&(&other.basis * &pa2))?;
        let g_det = g.det();
        debug_assert_eq!(g_det.abs(), count);
        let sign = Sign::of(&full.det())
            * Sign::of(&full2.det())
            * Sign::of(&g_det)
            * self.point_sign
            * other.point_sign;

        let mut point_sign = Sign::Plus;
        if m == 0 {
            point_sign = sign;
        } else if sign == Sign::Minus {
            component.negate_column(0);
        }
        Ok(IntersectionData {
            transverse: true,
            identity_component: Some(OrientedSubtorus {
                d,
                side: self.side,
                basis: component,
                point_sign,
            }),
            component_count: Some(count),
        })
    }
}

impl fmt::Display for OrientedSubtorus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}-subtorus of {} d={} basis {}",
            self.dim(),
            self.side,
            self.d,
            self.basis
        )?;
        if self.dim() == 0 && self.point_sign == Sign::Minus {
            f.write_str(" (negative)")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct SubtorusWire {
    d: usize,
    side: Side,
    basis: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    orientation: Option<i32>,
}

impl From<OrientedSubtorus> for SubtorusWire {
    fn from(t: OrientedSubtorus) -> Self {
        SubtorusWire {
            d: t.d,
            side: t.side,
            basis: t.basis.to_string(),
            orientation: (t.point_sign == Sign::Minus).then_some(-1),
        }
    }
}

impl TryFrom<SubtorusWire> for OrientedSubtorus {
    type Error = Error;

    fn try_from(w: SubtorusWire) -> Result<Self> {
        let basis: IntMatrix = w.basis.parse()?;
        let mut t = OrientedSubtorus::new(w.d, w.side, basis)?;
        match w.orientation {
            None | Some(1) => {}
            Some(-1) if t.dim() == 0 => t.point_sign = Sign::Minus,
            Some(-1) => {
                return Err(Error::Parse(
                    "orientation -1 is only meaningful for the trivial subgroup; reorder the basis instead".into(),
                ))
            }
            Some(o) => return Err(Error::Parse(format!("orientation must be 1 or -1, got {o}"))),
        }
        Ok(t)
    }
}
