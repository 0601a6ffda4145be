//! Fourier–Mukai transform, spin Poincaré duality and the Baum–Connes
//! assembly map for `Z^d`, as exact maps between the exterior-algebra models.
//!
//! The transforms are defined on the basis of coordinate subtori, where the
//! geometric formulas `[T]_! ↦ ±[T̂]_!` and `[Γ̂]_* ↦ ±[Z]_*` fix every
//! matrix column, and then extended linearly. On non-coordinate subtori the
//! same formulas become checks: linearity on one side, an independently
//! computed dual subtorus on the other.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exterior::{
    compose_maps, invert_map, monomial_basis, pair_kh, AlgebraSpec, ExteriorClass, GradedLinearMap,
    Monomial, Side, Variance,
};
use crate::lattice::IntMatrix;
use crate::subtorus::{OrientedSubtorus, Sign};
use crate::verify::{Counterexample, PropertyResult, VerifyReport};

/// Signs of the two Fourier–Mukai computations for a `k`-dimensional
/// subtorus of a `d`-torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignFormula {
    /// `(-1)^{k(d-k) + k(k-1)/2}`, for shriek classes on the base torus.
    KTheory,
    /// `(-1)^{kd + k(k-1)/2}`, for homology classes on the dual torus.
    KHomology,
}

impl SignFormula {
    pub fn eval(self, k: usize, d: usize) -> Sign {
        assert!(k <= d, "subtorus dimension {k} exceeds {d}");
        let triangular = k * k.saturating_sub(1) / 2;
        match self {
            SignFormula::KTheory => Sign::parity(k * (d - k) + triangular),
            SignFormula::KHomology => Sign::parity(k * d + triangular),
        }
    }
}

fn spec(d: usize, variance: Variance, side: Side) -> AlgebraSpec {
    AlgebraSpec::new(d, variance, side)
}

/// Builds the map sending `expand(T_S) ↦ image(T_S)` for every coordinate
/// subtorus `T_S` of the source side. Each `expand(T_S)` must be a signed
/// monomial, and together they must cover the monomial basis.
fn from_coordinate_subtori(
    source: AlgebraSpec,
    target: AlgebraSpec,
    degree_shift: i64,
    expand: impl Fn(&OrientedSubtorus) -> ExteriorClass,
    image: impl Fn(&OrientedSubtorus) -> ExteriorClass,
) -> GradedLinearMap {
    let d = source.d;
    let mut columns: HashMap<Monomial, ExteriorClass> = HashMap::new();
    for s in monomial_basis(d) {
        let t = OrientedSubtorus::coordinate(d, source.side, &s.indices())
            .expect("coordinate subtorus");
        let src = expand(&t);
        let (m, c) = src
            .terms()
            .next()
            .map(|(m, c)| (m, c.clone()))
            .expect("coordinate class is nonzero");
        assert!(
            src.len() == 1 && c.abs().is_one(),
            "{src:?} is not a signed monomial"
        );
        // c = ±1, so c is its own inverse
        let previous = columns.insert(m, image(&t).scaled(&c));
        assert!(previous.is_none(), "monomial {m} hit twice");
    }
    GradedLinearMap::from_fn(source, target, degree_shift, |m| {
        Ok(columns.remove(&m).expect("every monomial is covered"))
    })
    .expect("images lie in the target algebra")
}

/// `[F_d]` on K-theory: `K*(T^d) -> K*(Ẑ^d)`, `[T]_! ↦ (-1)^{k(d-k)+k(k-1)/2}[T̂]_!`.
pub fn build_fm_k(d: usize) -> GradedLinearMap {
    from_coordinate_subtori(
        spec(d, Variance::X, Side::Base),
        spec(d, Variance::X, Side::Dual),
        -(d as i64),
        OrientedSubtorus::expand_k_theory,
        |t| {
            let sign = SignFormula::KTheory.eval(t.dim(), d);
            t.dual().expand_k_theory().scaled(&sign.to_bigint())
        },
    )
}

/// `[F_d]` on K-homology: `K_*(Ẑ^d) -> K_*(T^d)`, `[Γ̂]_* ↦ (-1)^{kd+k(k-1)/2}[Z]_*`.
pub fn build_fm_h(d: usize) -> GradedLinearMap {
    from_coordinate_subtori(
        spec(d, Variance::Y, Side::Dual),
        spec(d, Variance::Y, Side::Base),
        -(d as i64),
        OrientedSubtorus::expand_homology,
        |t| {
            let sign = SignFormula::KHomology.eval(t.dim(), d);
            t.dual().expand_homology().scaled(&sign.to_bigint())
        },
    )
}

/// Spin Poincaré duality `K_*(T^d) -> K*(T^d)`, `[T]_* ↦ [T]_!`.
pub fn build_pd_spin(d: usize) -> GradedLinearMap {
    from_coordinate_subtori(
        spec(d, Variance::Y, Side::Base),
        spec(d, Variance::X, Side::Base),
        d as i64,
        OrientedSubtorus::expand_homology,
        OrientedSubtorus::expand_k_theory,
    )
}

/// The assembly map `μ = (F_d)_* ∘ PD_spin : K_*(T^d) -> K*(Ẑ^d)`.
pub fn build_assembly(d: usize) -> GradedLinearMap {
    compose_maps(&build_fm_k(d), &build_pd_spin(d)).expect("PD lands where FM starts")
}

/// `μ([T]_*)` for a subtorus of the base torus, checked against
/// `(-1)^{k(d-k)+k(k-1)/2}[T̂]_!` computed from the dual subtorus.
pub fn assembly_on_subtorus(t: &OrientedSubtorus) -> Result<ExteriorClass> {
    if t.side() != Side::Base {
        return Err(Error::Spec(
            "assembly takes a subtorus of the base torus".into(),
        ));
    }
    let d = t.d();
    let mu = build_assembly(d);
    let value = mu.apply(&t.expand_homology())?;
    let expected = t
        .dual()
        .expand_k_theory()
        .scaled(&SignFormula::KTheory.eval(t.dim(), d).to_bigint());
    if value != expected {
        return Err(Error::Inconsistent(format!(
            "assembly of {t} gave {value}, dual subtorus predicts {expected}"
        )));
    }
    Ok(value)
}

/// `F_K([T]_!) == (-1)^{k(d-k)+k(k-1)/2}[T̂]_!` for a base subtorus.
pub fn check_k_theory_theorem(
    fm_k: &GradedLinearMap,
    t: &OrientedSubtorus,
) -> Result<(), Counterexample> {
    let d = t.d();
    let lhs = fm_k
        .apply(&t.expand_k_theory())
        .map_err(|e| Counterexample::new(d, e.to_string()))?;
    let rhs = t
        .dual()
        .expand_k_theory()
        .scaled(&SignFormula::KTheory.eval(t.dim(), d).to_bigint());
    if lhs != rhs {
        return Err(Counterexample::new(
            d,
            format!("F[T]_! = {lhs}, expected {rhs}"),
        ));
    }
    Ok(())
}

/// `F_H([Γ̂]_*) == (-1)^{kd+k(k-1)/2}[Z]_*` for a dual-side subtorus.
pub fn check_k_homology_theorem(
    fm_h: &GradedLinearMap,
    t: &OrientedSubtorus,
) -> Result<(), Counterexample> {
    let d = t.d();
    let lhs = fm_h
        .apply(&t.expand_homology())
        .map_err(|e| Counterexample::new(d, e.to_string()))?;
    let rhs = t
        .dual()
        .expand_homology()
        .scaled(&SignFormula::KHomology.eval(t.dim(), d).to_bigint());
    if lhs != rhs {
        return Err(Counterexample::new(
            d,
            format!("F[Γ]_* = {lhs}, expected {rhs}"),
        ));
    }
    Ok(())
}

/// The transform identity on every coordinate subtorus of one side, both orientations.
pub fn coordinate_theorem_check(d: usize, side: Side) -> PropertyResult {
    let (name, fm_k, fm_h) = match side {
        Side::Base => ("fm.k_theory_theorem.coordinate", Some(build_fm_k(d)), None),
        Side::Dual => (
            "fm.k_homology_theorem.coordinate",
            None,
            Some(build_fm_h(d)),
        ),
    };
    let cases = monomial_basis(d).into_iter().flat_map(|s| {
        let t = OrientedSubtorus::coordinate(d, side, &s.indices()).expect("coordinate");
        [t.reversed(), t]
    });
    PropertyResult::from_cases(
        name,
        cases.map(|t| {
            let outcome = match (&fm_k, &fm_h) {
                (Some(f), _) => check_k_theory_theorem(f, &t),
                (_, Some(f)) => check_k_homology_theorem(f, &t),
                _ => unreachable!(),
            };
            outcome.map_err(|cx| cx.with_subtorus(&t))
        }),
    )
}

/// `⟨F_K a, b⟩ = ⟨a, F_H b⟩` for all monomials `a ∈ Λx(T^d)`, `b ∈ Λy(Ẑ^d)`.
pub fn adjointness_check(d: usize) -> VerifyReport {
    let fm_k = build_fm_k(d);
    let fm_h = build_fm_h(d);
    let xs = spec(d, Variance::X, Side::Base);
    let ys = spec(d, Variance::Y, Side::Dual);
    let basis = monomial_basis(d);
    let cases = basis
        .iter()
        .flat_map(|&a| basis.iter().map(move |&b| (a, b)));
    let result = PropertyResult::from_cases(
        "fm.adjointness",
        cases.map(|(a, b)| {
            let xa = ExteriorClass::monomial(xs, a, 1);
            let yb = ExteriorClass::monomial(ys, b, 1);
            let left = pair_kh(&fm_k.apply(&xa).expect("source"), &yb).expect("x with y");
            let right = pair_kh(&xa, &fm_h.apply(&yb).expect("source")).expect("x with y");
            if left != right {
                return Err(Counterexample::new(
                    d,
                    format!(
                        "<F {}, {}> = {left} but <{}, F {}> = {right}",
                        xs.label(a),
                        ys.label(b),
                        xs.label(a),
                        ys.label(b)
                    ),
                ));
            }
            Ok(())
        }),
    );
    let mut report = VerifyReport::new(format!("adjointness d={d}"));
    report.push(result);
    report
}

/// Invertibility of `F_K`: unimodular, inverse again a signed
/// complement-permutation, round trips are the identity.
pub fn fm_inverse_structure(d: usize) -> VerifyReport {
    let mut report = VerifyReport::new(format!("fm inverse d={d}"));
    let fm_k = build_fm_k(d);
    let fail = |detail: String| {
        PropertyResult::fail(
            "fm.invertibility",
            1,
            Counterexample::new(d, detail).with_basis(&fm_k.matrix()),
        )
    };
    let inverse = match invert_map(&fm_k) {
        Ok(inv) => inv,
        Err(e) => {
            report.push(fail(e.to_string()));
            return report;
        }
    };
    let round_trips = compose_maps(&inverse, &fm_k).is_ok_and(|c| c.is_identity())
        && compose_maps(&fm_k, &inverse).is_ok_and(|c| c.is_identity());
    if !fm_k.is_signed_complement_permutation() {
        report.push(fail("F_K is not a signed complement-permutation".into()));
    } else if !inverse.is_signed_complement_permutation() {
        report.push(fail(
            "inverse is not a signed complement-permutation".into(),
        ));
    } else if !round_trips {
        report.push(fail("inverse does not compose to the identity".into()));
    } else {
        report.push(PropertyResult::pass("fm.invertibility", 1));
    }
    report
}

/// Basis `(−e_i, e_i)` (anti-diagonal `z ↦ (z̄, z)`) or `(e_i, e_i)`
/// (diagonal) of a `d`-subtorus of a `2d`-torus.
pub fn doubled_diagonal(d: usize, side: Side, anti: bool) -> OrientedSubtorus {
    let mut b = IntMatrix::zeros(2 * d, d);
    for i in 0..d {
        b[(i, i)] = if anti { -BigInt::one() } else { BigInt::one() };
        b[(d + i, i)] = BigInt::one();
    }
    OrientedSubtorus::new(2 * d, side, b).expect("diagonal bases are primitive")
}

fn example_report(
    title: String,
    name: &str,
    d: usize,
    lhs: ExteriorClass,
    rhs: ExteriorClass,
    dual_ok: bool,
) -> VerifyReport {
    let mut report = VerifyReport::new(title);
    let result = if !dual_ok {
        PropertyResult::fail(
            name,
            1,
            Counterexample::new(d, "dual subtorus is not the standard diagonal"),
        )
    } else if lhs != rhs {
        PropertyResult::fail(
            name,
            1,
            Counterexample::new(d, format!("transform side {lhs} vs geometric side {rhs}")),
        )
    } else {
        PropertyResult::pass(name, 1)
    };
    report.push(result);
    report
}

/// `[(T^d, Δ̄)]_! ⊗ [F_{2d}] = (-1)^{d + d(d-1)/2} [(Ẑ^d, Δ)]_!`.
pub fn example_invert_torus(d: usize) -> VerifyReport {
    let anti = doubled_diagonal(d, Side::Base, true);
    let diag = doubled_diagonal(d, Side::Dual, false);
    let sign = Sign::parity(d + d * d.saturating_sub(1) / 2);
    let lhs = build_fm_k(2 * d)
        .apply(&anti.expand_k_theory())
        .expect("x-class on base");
    let rhs = diag.expand_k_theory().scaled(&sign.to_bigint());
    let dual_ok = anti.dual().relative_orientation(&diag) == Some(Sign::Plus);
    example_report(
        format!("invert torus d={d}"),
        &format!("fm.example_invert_torus.d{d}"),
        d,
        lhs,
        rhs,
        dual_ok,
    )
}

/// `[F_{2d}] ⊗ [(Ẑ^d, δ̄)]_* = (-1)^{d(d-1)/2} [(T^d, Δ)]_*`.
pub fn example_invert_dual(d: usize) -> VerifyReport {
    let anti = doubled_diagonal(d, Side::Dual, true);
    let diag = doubled_diagonal(d, Side::Base, false);
    let sign = Sign::parity(d * d.saturating_sub(1) / 2);
    let lhs = build_fm_h(2 * d)
        .apply(&anti.expand_homology())
        .expect("y-class on dual");
    let rhs = diag.expand_homology().scaled(&sign.to_bigint());
    let dual_ok = anti.dual().relative_orientation(&diag) == Some(Sign::Plus);
    example_report(
        format!("invert dual d={d}"),
        &format!("fm.example_invert_dual.d{d}"),
        d,
        lhs,
        rhs,
        dual_ok,
    )
}

/// Applies `F_K` twice (base to dual, then the same matrix read from dual to
/// base) and returns the diagonal sign on each monomial, or `None` if the
/// composite is not diagonal with unit entries.
pub fn fm_twice_signs(d: usize) -> Option<Vec<(Monomial, Sign)>> {
    let once = build_fm_k(d);
    let back = once
        .relabeled(
            spec(d, Variance::X, Side::Dual),
            spec(d, Variance::X, Side::Base),
        )
        .expect("same ranks");
    let twice = compose_maps(&back, &once).expect("composable");
    twice
        .images()
        .map(|(m, img)| {
            let c = img.coefficient(m);
            (img.len() == 1 && c.abs().is_one()).then(|| (m, Sign::of(&c)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(d: usize, v: Variance, side: Side, terms: &[(&[usize], i64)]) -> ExteriorClass {
        ExteriorClass::from_terms(
            spec(d, v, side),
            terms.iter().map(|(i, c)| (i.to_vec(), *c)),
        )
        .unwrap()
    }

    fn mono(idx: &[usize], d: usize) -> Monomial {
        Monomial::from_indices(idx, d).unwrap()
    }

    #[test]
    fn sign_formulas() {
        let k = |k, d| SignFormula::KTheory.eval(k, d).value();
        let h = |k, d| SignFormula::KHomology.eval(k, d).value();
        assert_eq!(
            (k(0, 1), k(1, 1), k(2, 2), k(1, 2), k(2, 3)),
            (1, 1, -1, -1, -1)
        );
        assert_eq!((h(0, 1), h(1, 1), h(2, 2)), (1, -1, -1));
        for d in 0..8 {
            assert_eq!(k(0, d), 1);
            assert_eq!(h(0, d), 1);
        }
    }

    #[test]
    fn fm_k_goldens() {
        let f = build_fm_k(1);
        let xd = |t: &[(&[usize], i64)]| class(1, Variance::X, Side::Dual, t);
        assert_eq!(f.image(Monomial::UNIT), &xd(&[(&[1], 1)]));
        assert_eq!(f.image(mono(&[1], 1)), &xd(&[(&[], 1)]));

        let f = build_fm_k(2);
        let xd = |t: &[(&[usize], i64)]| class(2, Variance::X, Side::Dual, t);
        assert_eq!(f.image(Monomial::UNIT), &xd(&[(&[1, 2], -1)]));
        assert_eq!(f.image(mono(&[1], 2)), &xd(&[(&[2], 1)]));
        assert_eq!(f.image(mono(&[2], 2)), &xd(&[(&[1], -1)]));
        assert_eq!(f.image(mono(&[1, 2], 2)), &xd(&[(&[], 1)]));
        assert_eq!(f.degree_shift(), -2);
    }

    #[test]
    fn fm_h_goldens() {
        let f = build_fm_h(1);
        let yb = |t: &[(&[usize], i64)]| class(1, Variance::Y, Side::Base, t);
        assert_eq!(f.image(Monomial::UNIT), &yb(&[(&[1], 1)]));
        // the dual->base orientation rule makes this +1, see `OrientedSubtorus::dual`
        assert_eq!(f.image(mono(&[1], 1)), &yb(&[(&[], 1)]));

        let f = build_fm_h(2);
        let yb = |t: &[(&[usize], i64)]| class(2, Variance::Y, Side::Base, t);
        assert_eq!(f.image(mono(&[1, 2], 2)), &yb(&[(&[], -1)]));
        assert_eq!(f.image(Monomial::UNIT), &yb(&[(&[1, 2], 1)]));
    }

    #[test]
    fn pd_goldens() {
        let f = build_pd_spin(1);
        let xb = |t: &[(&[usize], i64)]| class(1, Variance::X, Side::Base, t);
        assert_eq!(f.image(mono(&[1], 1)), &xb(&[(&[], 1)]));

        let f = build_pd_spin(2);
        let xb = |t: &[(&[usize], i64)]| class(2, Variance::X, Side::Base, t);
        assert_eq!(f.image(mono(&[1], 2)), &xb(&[(&[2], 1)]));
        assert_eq!(f.image(Monomial::UNIT), &xb(&[(&[1, 2], 1)]));
        assert!(f.is_signed_complement_permutation());
    }

    #[test]
    fn assembly_goldens() {
        let mu = build_assembly(1);
        let xd = |t: &[(&[usize], i64)]| class(1, Variance::X, Side::Dual, t);
        // y_1 -> x_∅ -> x̂_1 and y_∅ -> x_1 -> x̂_∅
        assert_eq!(mu.image(mono(&[1], 1)), &xd(&[(&[1], 1)]));
        assert_eq!(mu.image(Monomial::UNIT), &xd(&[(&[], 1)]));
        assert_eq!(mu.degree_shift(), 0);
        assert!(invert_map(&mu).is_ok());
    }

    #[test]
    fn assembly_on_diagonal_circle() {
        let t = OrientedSubtorus::new(2, Side::Base, "1;1".parse().unwrap()).unwrap();
        let got = assembly_on_subtorus(&t).unwrap();
        let dual_circle = OrientedSubtorus::new(2, Side::Dual, "1;-1".parse().unwrap()).unwrap();
        assert_eq!(got, dual_circle.expand_k_theory().negated());
        assert_eq!(
            got,
            class(2, Variance::X, Side::Dual, &[(&[1], -1), (&[2], -1)])
        );
    }

    #[test]
    fn assembly_in_three_dimensions() {
        let t = OrientedSubtorus::new(3, Side::Base, "1,0;1,0;0,1".parse().unwrap()).unwrap();
        let got = assembly_on_subtorus(&t).unwrap();
        assert_eq!(SignFormula::KTheory.eval(2, 3), Sign::Minus);
        assert_eq!(got, t.dual().expand_k_theory().negated());
        let p = OrientedSubtorus::point(3, Side::Base, Sign::Plus);
        assert_eq!(
            assembly_on_subtorus(&p).unwrap(),
            OrientedSubtorus::full(3, Side::Dual).expand_k_theory()
        );
        assert!(assembly_on_subtorus(&t.dual()).is_err());
    }

    #[test]
    fn grades_and_structure() {
        for d in 1..=6 {
            let f = build_fm_k(d);
            assert!(f.is_signed_complement_permutation(), "d={d}");
            assert!(f.maps_grades_by(|p| d - p));
            assert!(build_fm_h(d).is_signed_complement_permutation());
            assert!(build_pd_spin(d).is_signed_complement_permutation());
        }
    }

    #[test]
    fn adjointness_small() {
        for d in 1..=3 {
            assert!(adjointness_check(d).all_pass(), "d={d}");
        }
    }

    #[test]
    fn inverse_small() {
        let inv = invert_map(&build_fm_k(1)).unwrap();
        let xb = |t: &[(&[usize], i64)]| class(1, Variance::X, Side::Base, t);
        assert_eq!(inv.image(mono(&[1], 1)), &xb(&[(&[], 1)]));
        assert_eq!(inv.image(Monomial::UNIT), &xb(&[(&[1], 1)]));
        let m = invert_map(&build_fm_k(2)).unwrap().matrix();
        assert!(m.max_abs_entry() <= BigInt::one());
        for d in 1..=4 {
            assert!(fm_inverse_structure(d).all_pass());
        }
    }

    #[test]
    fn examples_hold() {
        for d in 1..=2 {
            assert!(
                example_invert_torus(d).all_pass(),
                "{:?}",
                example_invert_torus(d)
            );
            assert!(
                example_invert_dual(d).all_pass(),
                "{:?}",
                example_invert_dual(d)
            );
        }
    }

    #[test]
    fn fm_twice_is_graded_sign() {
        for d in 1..=5 {
            let signs = fm_twice_signs(d).expect("diagonal");
            let mut by_grade: HashMap<usize, Sign> = HashMap::new();
            for (m, s) in signs {
                let prev = by_grade.insert(m.grade(), s);
                assert!(prev.is_none_or(|p| p == s), "d={d} grade {}", m.grade());
            }
        }
    }
}
