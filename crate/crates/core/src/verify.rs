//! Verification reports and the seeded property suite behind `verify`.
//!
//! Every randomized property draws each trial from its own generator seeded
//! by `(seed, property, d, trial)`, so trials can run in parallel and the
//! report is identical for a fixed seed regardless of scheduling.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::exterior::{monomial_basis, pair_kh, AlgebraSpec, ExteriorClass, Side, Variance};
use crate::fm::{self, SignFormula};
use crate::lattice::{
    hermite_normal_form, integer_kernel_basis, is_primitive_basis, smith_normal_form, IntMatrix,
};
use crate::oracle::{self, trial_rng};
use crate::subtorus::OrientedSubtorus;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Payload describing the first failing case of a property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Offending basis or matrix in the `1,0;0,1` text format.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<String>,
    pub detail: String,
}

impl Counterexample {
    pub fn new(d: usize, detail: impl Into<String>) -> Self {
        Counterexample {
            seed: None,
            d,
            k: None,
            basis: None,
            detail: detail.into(),
        }
    }

    pub fn with_subtorus(mut self, t: &OrientedSubtorus) -> Self {
        self.k = Some(t.dim());
        self.basis = Some(t.basis().to_string());
        self
    }

    pub fn with_basis(mut self, m: &IntMatrix) -> Self {
        self.basis = Some(m.to_string());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub status: Status,
    /// Number of cases evaluated.
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl PropertyResult {
    pub fn pass(name: impl Into<String>, checked: usize) -> Self {
        PropertyResult {
            name: name.into(),
            status: Status::Pass,
            checked,
            counterexample: None,
        }
    }

    pub fn fail(name: impl Into<String>, checked: usize, counterexample: Counterexample) -> Self {
        PropertyResult {
            name: name.into(),
            status: Status::Fail,
            checked,
            counterexample: Some(counterexample),
        }
    }

    /// Folds per-case outcomes into a result, keeping the first failure.
    pub fn from_cases(
        name: impl Into<String>,
        cases: impl IntoIterator<Item = Result<(), Counterexample>>,
    ) -> Self {
        let mut checked = 0;
        for outcome in cases {
            checked += 1;
            if let Err(cx) = outcome {
                return PropertyResult::fail(name, checked, cx);
            }
        }
        PropertyResult::pass(name, checked)
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub title: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    pub properties: Vec<PropertyResult>,
}

impl VerifyReport {
    pub fn new(title: impl Into<String>) -> Self {
        VerifyReport {
            title: title.into(),
            seed: None,
            trials: None,
            properties: Vec::new(),
        }
    }

    pub fn push(&mut self, result: PropertyResult) {
        self.properties.push(result);
    }

    pub fn extend(&mut self, other: VerifyReport) {
        self.properties.extend(other.properties);
    }

    pub fn all_pass(&self) -> bool {
        self.properties.iter().all(PropertyResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.properties.iter().filter(|p| !p.passed())
    }
}

/// Parameters of a seeded suite run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub d: usize,
    pub trials: usize,
    pub seed: u64,
    pub entry_bound: u32,
}

impl SuiteConfig {
    pub fn new(d: usize, trials: usize, seed: u64) -> Self {
        SuiteConfig {
            d,
            trials,
            seed,
            entry_bound: 4,
        }
    }
}

/// Runs `check` on `trials` independently seeded cases, in parallel, and
/// reports the lowest-index failure.
pub fn seeded_property<F>(name: &str, cfg: &SuiteConfig, check: F) -> PropertyResult
where
    F: Fn(&mut ChaCha8Rng) -> Result<(), Counterexample> + Sync,
{
    let outcomes: Vec<Result<(), Counterexample>> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(cfg.seed, name, cfg.d, trial);
            check(&mut rng).map_err(|cx| cx.with_seed(cfg.seed))
        })
        .collect();
    PropertyResult::from_cases(name, outcomes)
}

fn random_matrix(rng: &mut ChaCha8Rng, max_dim: usize, bound: i64) -> IntMatrix {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    let data = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    IntMatrix::from_vec(rows, cols, data).expect("sized")
}

fn is_unit(v: &BigInt) -> bool {
    v.abs().is_one()
}

fn lattice_properties(cfg: &SuiteConfig, report: &mut VerifyReport) {
    let max_dim = cfg.d.clamp(1, 5);
    report.push(seeded_property("lattice.hermite_witness", cfg, |rng| {
        let a = random_matrix(rng, max_dim, 9);
        let dec = hermite_normal_form(&a);
        if &a * &dec.u != dec.h || !is_unit(&dec.u.det()) {
            return Err(Counterexample::new(cfg.d, "A*U != H or |det U| != 1").with_basis(&a));
        }
        Ok(())
    }));
    report.push(seeded_property("lattice.smith_witness", cfg, |rng| {
        let a = random_matrix(rng, max_dim, 9);
        let dec = smith_normal_form(&a);
        let factors = dec.invariant_factors();
        let chain = factors.windows(2).all(|w| (&w[1] % &w[0]).is_zero());
        if &(&dec.u * &a) * &dec.v != dec.d
            || !is_unit(&dec.u.det())
            || !is_unit(&dec.v.det())
            || !chain
        {
            return Err(
                Counterexample::new(cfg.d, "U*A*V != D or divisibility broken").with_basis(&a),
            );
        }
        Ok(())
    }));
    report.push(seeded_property("lattice.kernel_basis", cfg, |rng| {
        let a = random_matrix(rng, max_dim, 3);
        let n = integer_kernel_basis(&a);
        let ok = (&a * &n).is_zero()
            && n.cols() == a.cols() - a.rank()
            && is_primitive_basis(&n).unwrap_or(false);
        if !ok {
            return Err(Counterexample::new(cfg.d, "kernel basis wrong").with_basis(&a));
        }
        Ok(())
    }));
}

fn exterior_properties(d: usize, report: &mut VerifyReport) {
    let basis = monomial_basis(d);
    let xs = AlgebraSpec::new(d, Variance::X, Side::Base);
    let ys = AlgebraSpec::new(d, Variance::Y, Side::Base);
    let pairs = basis
        .iter()
        .flat_map(|&i| basis.iter().map(move |&j| (i, j)));
    report.push(PropertyResult::from_cases(
        "exterior.dual_basis_pairing",
        pairs.clone().map(|(i, j)| {
            let got = pair_kh(
                &ExteriorClass::monomial(xs, i, 1),
                &ExteriorClass::monomial(ys, j, 1),
            )
            .map_err(|e| Counterexample::new(d, e.to_string()))?;
            let expected = if i == j {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            if got != expected {
                return Err(Counterexample::new(d, format!("<x{i}, y{j}> = {got}")));
            }
            Ok(())
        }),
    ));
    report.push(PropertyResult::from_cases(
        "exterior.wedge_sign_rule",
        pairs.map(|(i, j)| {
            let a = ExteriorClass::monomial(xs, i, 1);
            let b = ExteriorClass::monomial(xs, j, 1);
            let ab = a
                .wedge(&b)
                .map_err(|e| Counterexample::new(d, e.to_string()))?;
            let ba = b
                .wedge(&a)
                .map_err(|e| Counterexample::new(d, e.to_string()))?;
            let expected = match oracle::concatenation_sign(&i.indices(), &j.indices()) {
                Some(sign) => ExteriorClass::monomial(xs, i.union(j), sign),
                None => ExteriorClass::zero(xs),
            };
            let graded = if (i.grade() * j.grade()) % 2 == 0 {
                ba.clone()
            } else {
                ba.negated()
            };
            if ab != expected || ab != graded {
                return Err(Counterexample::new(d, format!("x{i} ∧ x{j} = {ab}")));
            }
            Ok(())
        }),
    ));
}

fn subtorus_properties(cfg: &SuiteConfig, report: &mut VerifyReport) {
    let d = cfg.d;
    let bound = cfg.entry_bound;
    report.push(seeded_property("subtorus.laplace_identity", cfg, |rng| {
        let k = rng.gen_range(0..=d);
        let t = oracle::random_subtorus(rng, d, k, Side::Base, bound);
        let t2 = oracle::random_subtorus(rng, d, d - k, Side::Base, bound);
        let lhs = pair_kh(&t.expand_k_theory(), &t2.expand_homology()).expect("x with y");
        let rhs = t.pairing_signed(&t2).expect("complementary");
        if lhs != rhs {
            return Err(
                Counterexample::new(d, format!("<K(T), H(T')> = {lhs}, det = {rhs}"))
                    .with_subtorus(&t),
            );
        }
        Ok(())
    }));
    if d <= 4 {
        report.push(seeded_property(
            "subtorus.pairing_counts_points",
            cfg,
            |rng| {
                let (t, t2) = oracle::random_transverse_pair(rng, d, bound);
                let signed = t.pairing_signed(&t2).expect("complementary");
                let points = oracle::enumerate_intersection(&t, &t2).expect("transverse");
                let all_on_both = points
                    .iter()
                    .all(|p| oracle::contains_point(&t, p) && oracle::contains_point(&t2, p));
                if BigInt::from(points.len()) != signed.abs() || !all_on_both {
                    return Err(Counterexample::new(
                        d,
                        format!("pairing {signed}, {} points enumerated", points.len()),
                    )
                    .with_subtorus(&t));
                }
                Ok(())
            },
        ));
    }
    report.push(seeded_property("subtorus.ring_compatibility", cfg, |rng| {
        let k = rng.gen_range(0..=d);
        let k2 = rng.gen_range(d - k..=d);
        let t = oracle::random_subtorus(rng, d, k, Side::Base, bound);
        let t2 = oracle::random_subtorus(rng, d, k2, Side::Base, bound);
        let data = t.intersection(&t2).expect("same torus");
        let (Some(c), Some(count)) = (data.identity_component, data.component_count) else {
            return Ok(());
        };
        let lhs = t
            .expand_k_theory()
            .wedge(&t2.expand_k_theory())
            .expect("same algebra");
        let rhs = c.expand_k_theory().scaled(&count);
        if lhs != rhs {
            return Err(Counterexample::new(d, format!("wedge {lhs} vs {rhs}")).with_subtorus(&t));
        }
        Ok(())
    }));
    // sign of T -> T^ -> T^^ relative to T, recorded per (k, d)
    let signs: Vec<Option<i32>> = (0..=d)
        .map(|k| {
            OrientedSubtorus::coordinate(d, Side::Base, &(1..=k).collect::<Vec<_>>())
                .ok()
                .and_then(|t| t.relative_orientation(&t.dual().dual()))
                .map(|s| s.value())
        })
        .collect();
    report.push(seeded_property("subtorus.double_dual_sign", cfg, |rng| {
        let k = rng.gen_range(0..=d);
        let t = oracle::random_subtorus(rng, d, k, Side::Base, bound);
        let got = t.relative_orientation(&t.dual().dual()).map(|s| s.value());
        if got.is_none() || got != signs[k] {
            return Err(Counterexample::new(
                d,
                format!("double dual sign {got:?}, expected {:?}", signs[k]),
            )
            .with_subtorus(&t));
        }
        Ok(())
    }));
}

fn transform_properties(cfg: &SuiteConfig, report: &mut VerifyReport) {
    let d = cfg.d;
    let bound = cfg.entry_bound;
    let fm_k = fm::build_fm_k(d);
    let fm_h = fm::build_fm_h(d);
    let mu = fm::build_assembly(d);

    report.push(fm::coordinate_theorem_check(d, Side::Base));
    report.push(fm::coordinate_theorem_check(d, Side::Dual));
    report.push(seeded_property("fm.k_theory_theorem.random", cfg, |rng| {
        let k = rng.gen_range(0..=d);
        let t = oracle::random_subtorus(rng, d, k, Side::Base, bound);
        fm::check_k_theory_theorem(&fm_k, &t).map_err(|cx| cx.with_subtorus(&t))
    }));
    report.push(seeded_property(
        "fm.k_homology_theorem.random",
        cfg,
        |rng| {
            let k = rng.gen_range(0..=d);
            let t = oracle::random_subtorus(rng, d, k, Side::Dual, bound);
            fm::check_k_homology_theorem(&fm_h, &t).map_err(|cx| cx.with_subtorus(&t))
        },
    ));
    report.extend(fm::adjointness_check(d));
    report.extend(fm::fm_inverse_structure(d));
    report.push(seeded_property(
        "fm.assembly_corollary.random",
        cfg,
        |rng| {
            let k = rng.gen_range(0..=d);
            let t = oracle::random_subtorus(rng, d, k, Side::Base, bound);
            let lhs = mu.apply(&t.expand_homology()).expect("y-class on base");
            let rhs = t
                .dual()
                .expand_k_theory()
                .scaled(&SignFormula::KTheory.eval(k, d).to_bigint());
            if lhs != rhs {
                return Err(
                    Counterexample::new(d, format!("mu = {lhs}, expected {rhs}")).with_subtorus(&t),
                );
            }
            Ok(())
        },
    ));
    for e in 1..=(d / 2).max(1) {
        report.extend(fm::example_invert_torus(e));
        report.extend(fm::example_invert_dual(e));
    }
}

/// The full seeded suite for one ambient dimension.
pub fn run_suite(cfg: &SuiteConfig) -> VerifyReport {
    let mut report = VerifyReport::new(format!("toruskk verify d={}", cfg.d));
    report.seed = Some(cfg.seed);
    report.trials = Some(cfg.trials);
    lattice_properties(cfg, &mut report);
    exterior_properties(cfg.d, &mut report);
    subtorus_properties(cfg, &mut report);
    transform_properties(cfg, &mut report);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes_and_is_deterministic() {
        let cfg = SuiteConfig::new(2, 20, 11);
        let a = run_suite(&cfg);
        let b = run_suite(&cfg);
        assert_eq!(a, b);
        for p in &a.properties {
            assert!(p.passed(), "{p:?}");
        }
    }

    #[test]
    fn from_cases_keeps_first_failure() {
        let cases = vec![
            Ok(()),
            Err(Counterexample::new(1, "first")),
            Err(Counterexample::new(1, "second")),
        ];
        let r = PropertyResult::from_cases("p", cases);
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.checked, 2);
        assert_eq!(r.counterexample.unwrap().detail, "first");
    }
}
