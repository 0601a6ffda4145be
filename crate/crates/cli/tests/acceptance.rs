//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p toruskk-cli --test acceptance`.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;
use toruskk_core::exterior::monomial_basis;
use toruskk_core::oracle::{contains_point, random_subtorus, random_transverse_pair, trial_rng};
use toruskk_core::{
    build_assembly, build_fm_h, build_fm_k, build_pd_spin, compose_maps, enumerate_intersection,
    hermite_normal_form, invert_map, pair_kh, smith_normal_form, wedge, AlgebraSpec, BigInt,
    ExteriorClass, GradedLinearMap, IntMatrix, OrientedSubtorus, Side, Variance,
};

const SEED: u64 = 20240601;
const RANDOM_PER_D: usize = 250;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn parity(n: usize) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn k_sign(k: usize, d: usize) -> i64 {
    parity(k * (d - k) + k * k.saturating_sub(1) / 2)
}

fn h_sign(k: usize, d: usize) -> i64 {
    parity(k * d + k * k.saturating_sub(1) / 2)
}

fn is_unit(v: &BigInt) -> bool {
    *v == BigInt::from(1) || *v == BigInt::from(-1)
}

fn coordinate_subtori(d: usize, side: Side) -> Vec<OrientedSubtorus> {
    monomial_basis(d)
        .into_iter()
        .flat_map(|s| {
            let t = OrientedSubtorus::coordinate(d, side, &s.indices()).unwrap();
            [t.reversed(), t]
        })
        .collect()
}

fn random_subtori(d: usize, side: Side, tag: &str) -> Vec<OrientedSubtorus> {
    (0..RANDOM_PER_D)
        .map(|trial| {
            let mut rng = trial_rng(SEED, tag, d, trial);
            let k = rng.gen_range(0..=d);
            random_subtorus(&mut rng, d, k, side, 4)
        })
        .collect()
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = f()?;
    let elapsed = start.elapsed();
    match limit {
        Some(limit) if elapsed >= limit => {
            Err(format!("{detail}; took {elapsed:?}, limit {limit:?}"))
        }
        _ => Ok(format!("{detail}; {:.2}s", elapsed.as_secs_f64())),
    }
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    for d in 1..=5 {
        let fm = build_fm_k(d);
        let mut cases = coordinate_subtori(d, Side::Base);
        cases.extend(random_subtori(d, Side::Base, "criterion-1"));
        for t in cases {
            let lhs = fm.apply(&t.expand_k_theory()).unwrap();
            let rhs = t
                .dual()
                .expand_k_theory()
                .scaled(&BigInt::from(k_sign(t.dim(), d)));
            if lhs != rhs {
                return Err(format!("d={d} basis {}: {lhs} vs {rhs}", t.basis()));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} subtori, d=1..5"))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for d in 1..=5 {
        let fm = build_fm_h(d);
        let mut cases = coordinate_subtori(d, Side::Dual);
        cases.extend(random_subtori(d, Side::Dual, "criterion-2"));
        for t in cases {
            let lhs = fm.apply(&t.expand_homology()).unwrap();
            let rhs = t
                .dual()
                .expand_homology()
                .scaled(&BigInt::from(h_sign(t.dim(), d)));
            if lhs != rhs {
                return Err(format!("d={d} basis {}: {lhs} vs {rhs}", t.basis()));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} dual subtori, d=1..5"))
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for d in 1..=5 {
        let (fk, fh) = (build_fm_k(d), build_fm_h(d));
        for a in monomial_basis(d) {
            for b in monomial_basis(d) {
                let x = ExteriorClass::monomial(AlgebraSpec::new(d, Variance::X, Side::Base), a, 1);
                let y = ExteriorClass::monomial(AlgebraSpec::new(d, Variance::Y, Side::Dual), b, 1);
                let left = pair_kh(&fk.apply(&x).unwrap(), &y).unwrap();
                let right = pair_kh(&x, &fh.apply(&y).unwrap()).unwrap();
                if left != right {
                    return Err(format!("d={d} x{a} y{b}: {left} vs {right}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} monomial pairs, d=1..5"))
}

fn is_signed_complement_permutation(f: &GradedLinearMap, d: usize) -> bool {
    monomial_basis(d).into_iter().all(|m| {
        let img = f.image(m);
        img.len() == 1 && is_unit(&img.coefficient(m.complement(d)))
    })
}

fn criterion_4() -> Outcome {
    for d in 1..=6 {
        let f = build_fm_k(d);
        if !is_unit(&f.matrix().det()) {
            return Err(format!("d={d}: determinant {}", f.matrix().det()));
        }
        let inv = invert_map(&f).map_err(|e| format!("d={d}: {e}"))?;
        if !is_signed_complement_permutation(&inv, d) {
            return Err(format!(
                "d={d}: inverse is not a signed complement-permutation"
            ));
        }
        let round = compose_maps(&inv, &f).unwrap().matrix();
        if round != IntMatrix::identity(1 << d) {
            return Err(format!("d={d}: inverse after map is not the identity"));
        }
    }
    Ok("d=1..6".into())
}

fn doubled(d: usize, side: Side, anti: bool) -> OrientedSubtorus {
    let mut rows = vec![vec![0i64; d]; 2 * d];
    for i in 0..d {
        rows[i][i] = if anti { -1 } else { 1 };
        rows[d + i][i] = 1;
    }
    OrientedSubtorus::new(2 * d, side, IntMatrix::from_rows(&rows)).unwrap()
}

fn criterion_5() -> Outcome {
    for d in 1..=2 {
        let torus_sign = BigInt::from(parity(d + d * (d - 1) / 2));
        let lhs = build_fm_k(2 * d)
            .apply(&doubled(d, Side::Base, true).expand_k_theory())
            .unwrap();
        let rhs = doubled(d, Side::Dual, false)
            .expand_k_theory()
            .scaled(&torus_sign);
        if lhs != rhs {
            return Err(format!("invert torus d={d}: {lhs} vs {rhs}"));
        }
        let dual_sign = BigInt::from(parity(d * (d - 1) / 2));
        let lhs = build_fm_h(2 * d)
            .apply(&doubled(d, Side::Dual, true).expand_homology())
            .unwrap();
        let rhs = doubled(d, Side::Base, false)
            .expand_homology()
            .scaled(&dual_sign);
        if lhs != rhs {
            return Err(format!("invert dual d={d}: {lhs} vs {rhs}"));
        }
        for report in [
            toruskk_core::fm::example_invert_torus(d),
            toruskk_core::fm::example_invert_dual(d),
        ] {
            if !report.all_pass() {
                return Err(format!("{}: {:?}", report.title, report.properties));
            }
        }
    }
    Ok("d=1,2".into())
}

fn criterion_6() -> Outcome {
    let mut pairs = 0;
    let mut points_total = 0usize;
    for d in 1..=4 {
        for trial in 0..150 {
            let mut rng = trial_rng(SEED, "criterion-6", d, trial);
            let (t, t2) = random_transverse_pair(&mut rng, d, 4);
            let signed = t.pairing_signed(&t2).unwrap();
            let points = enumerate_intersection(&t, &t2).unwrap();
            let count = BigInt::from(points.len());
            if count != signed && count != -signed.clone() {
                return Err(format!(
                    "d={d} {} / {}: pairing {signed}, {count} points",
                    t.basis(),
                    t2.basis()
                ));
            }
            if !points
                .iter()
                .all(|p| contains_point(&t, p) && contains_point(&t2, p))
            {
                return Err(format!("d={d}: enumerated point off the subtori"));
            }
            pairs += 1;
            points_total += points.len();
        }
    }
    Ok(format!("{pairs} pairs, {points_total} points, d=1..4"))
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    for d in 0..=5 {
        let xs = AlgebraSpec::new(d, Variance::X, Side::Base);
        let ys = AlgebraSpec::new(d, Variance::Y, Side::Base);
        for i in monomial_basis(d) {
            for j in monomial_basis(d) {
                let (xi, xj) = (
                    ExteriorClass::monomial(xs, i, 1),
                    ExteriorClass::monomial(xs, j, 1),
                );
                let delta = pair_kh(&xi, &ExteriorClass::monomial(ys, j, 1)).unwrap();
                if delta != BigInt::from((i == j) as i64) {
                    return Err(format!("<x{i}, y{j}> = {delta}"));
                }
                let ij = wedge(&xi, &xj).unwrap();
                let ji = wedge(&xj, &xi).unwrap();
                let expected_ji = if (i.grade() * j.grade()) % 2 == 0 {
                    ij.clone()
                } else {
                    ij.negated()
                };
                if ji != expected_ji {
                    return Err(format!("antisymmetry fails for x{i}, x{j}"));
                }
                let (ii, jj) = (i.indices(), j.indices());
                let disjoint = ii.iter().all(|a| !jj.contains(a));
                let expected = if disjoint {
                    let inversions: usize = ii
                        .iter()
                        .map(|a| jj.iter().filter(|b| *b < a).count())
                        .sum();
                    ExteriorClass::monomial(xs, i.union(j), parity(inversions))
                } else {
                    ExteriorClass::zero(xs)
                };
                if ij != expected {
                    return Err(format!("x{i} ∧ x{j} = {ij}, expected {expected}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} monomial pairs, d=0..5"))
}

fn criterion_8() -> Outcome {
    let mut checked = 0;
    for d in 1..=5 {
        let mu = build_assembly(d);
        let composite = compose_maps(&build_fm_k(d), &build_pd_spin(d)).unwrap();
        if mu.matrix() != composite.matrix()
            || mu.source() != composite.source()
            || mu.target() != composite.target()
        {
            return Err(format!("d={d}: assembly differs from FM after PD"));
        }
        let mut cases = coordinate_subtori(d, Side::Base);
        cases.extend(random_subtori(d, Side::Base, "criterion-8"));
        for t in cases {
            let lhs = mu.apply(&t.expand_homology()).unwrap();
            let rhs = t
                .dual()
                .expand_k_theory()
                .scaled(&BigInt::from(k_sign(t.dim(), d)));
            if lhs != rhs {
                return Err(format!(
                    "d={d} basis {}: mu = {lhs}, expected {rhs}",
                    t.basis()
                ));
            }
            checked += 1;
        }
    }
    Ok(format!("factorization d=1..5, {checked} subtori"))
}

fn criterion_9() -> Outcome {
    let trials = 1200;
    for trial in 0..trials {
        let mut rng = trial_rng(SEED, "criterion-9", 5, trial);
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        let a = IntMatrix::from_rows(&rows);
        let h = hermite_normal_form(&a);
        if &a * &h.u != h.h || !is_unit(&h.u.det()) {
            return Err(format!("HNF witness fails on {a}"));
        }
        let s = smith_normal_form(&a);
        let diagonal = (0..r).all(|i| (0..c).all(|j| i == j || s.d[(i, j)] == BigInt::from(0)));
        if &(&s.u * &a) * &s.v != s.d || !is_unit(&s.u.det()) || !is_unit(&s.v.det()) || !diagonal {
            return Err(format!("SNF witness fails on {a}"));
        }
    }
    Ok(format!("{trials} matrices up to 5x5, entries in [-9,9]"))
}

fn criterion_10() -> Outcome {
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_toruskk"))
            .args(args)
            .env_remove("TORUSKK_SEED")
            .output()
            .map_err(|e| e.to_string())
    };
    let mut compared = 0;
    for (d, seed) in [("2", "1"), ("3", "7"), ("4", "99")] {
        let args = ["verify", "--d", d, "--trials", "100", "--seed", seed];
        let first = run(&args)?;
        let second = run(&args)?;
        if first.stdout != second.stdout || first.status.code() != second.status.code() {
            return Err(format!("verify --d {d} --seed {seed} differs between runs"));
        }
        if first.stdout.is_empty() {
            return Err("empty report".into());
        }
        compared += 1;
    }
    Ok(format!("{compared} seeds, byte-identical"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "K-theory transform sign",
            Some(Duration::from_secs(10)),
            criterion_1,
        ),
        (
            "K-homology transform sign",
            Some(Duration::from_secs(10)),
            criterion_2,
        ),
        ("adjointness", None, criterion_3),
        ("FM invertibility", None, criterion_4),
        ("invert torus / invert dual", None, criterion_5),
        (
            "pairing counts points",
            Some(Duration::from_secs(30)),
            criterion_6,
        ),
        ("exterior algebra identities", None, criterion_7),
        ("assembly factorization", None, criterion_8),
        ("HNF/SNF witnesses", None, criterion_9),
        ("verify determinism", None, criterion_10),
    ];
    let mut failed = 0;
    for (n, (name, limit, check)) in criteria.into_iter().enumerate() {
        match timed(limit, check) {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail}", n + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {detail}", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
