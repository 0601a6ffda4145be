//! Brute-force oracles and random generators used by tests and `verify`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exterior::Side;
use crate::lattice::{integer_kernel_basis, smith_normal_form, IntMatrix};
use crate::subtorus::{OrientedSubtorus, Sign};

/// A point of `R^d / Z^d` with rational coordinates reduced to `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusPoint {
    coords: Vec<BigRational>,
}

impl TorusPoint {
    pub fn new(coords: impl IntoIterator<Item = BigRational>) -> Self {
        TorusPoint {
            coords: coords.into_iter().map(|c| &c - c.floor()).collect(),
        }
    }

    pub fn identity(d: usize) -> Self {
        TorusPoint {
            coords: vec![BigRational::zero(); d],
        }
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn d(&self) -> usize {
        self.coords.len()
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for TorusPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coords.iter().map(|c| c.to_string()))
    }
}

/// Parameters for batches of random subtori.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSpec {
    pub seed: u64,
    pub entry_bound: u32,
    pub trials: usize,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec {
            seed: 0,
            entry_bound: 4,
            trials: 200,
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Generator for one trial, independent of scheduling and of other trials.
pub fn trial_rng(seed: u64, name: &str, d: usize, trial: usize) -> ChaCha8Rng {
    // FNV-1a keeps the name hash stable across platforms and releases
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h = (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3);
    }
    let mut s = splitmix64(seed);
    for word in [h, d as u64, trial as u64] {
        s = splitmix64(s ^ word);
    }
    ChaCha8Rng::seed_from_u64(s)
}

/// A random `d × d` unimodular matrix, built from elementary column
/// operations that keep every entry within `bound`.
pub fn random_unimodular<R: Rng + ?Sized>(rng: &mut R, d: usize, bound: u32) -> IntMatrix {
    let mut u = IntMatrix::identity(d);
    if d == 0 {
        return u;
    }
    let limit = BigInt::from(bound.max(1));
    let steps = 4 * d * d;
    for _ in 0..steps {
        if d == 1 {
            break;
        }
        let target = rng.gen_range(0..d);
        let mut source = rng.gen_range(0..d - 1);
        if source >= target {
            source += 1;
        }
        let factor = BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 } * rng.gen_range(1..=2));
        let mut trial = u.clone();
        trial.add_column_multiple(target, source, &factor);
        if trial.max_abs_entry() <= limit {
            u = trial;
        }
    }
    for i in 0..d {
        let j = rng.gen_range(i..d);
        u.swap_columns(i, j);
        if rng.gen_bool(0.5) {
            u.negate_column(i);
        }
    }
    u
}

/// A random primitive `k`-subtorus: the first `k` columns of a random
/// unimodular matrix. Points get a random orientation.
pub fn random_subtorus<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    k: usize,
    side: Side,
    bound: u32,
) -> OrientedSubtorus {
    assert!(k <= d, "subtorus dimension {k} exceeds {d}");
    let u = random_unimodular(rng, d, bound);
    if k == 0 {
        let sign = if rng.gen_bool(0.5) {
            Sign::Plus
        } else {
            Sign::Minus
        };
        return OrientedSubtorus::point(d, side, sign);
    }
    OrientedSubtorus::new(d, side, u.column_range(0..k)).expect("columns of a unimodular matrix")
}

/// `spec.trials` random `k`-subtori, reproducible from `spec.seed`.
pub fn random_primitive_subtorus(
    d: usize,
    k: usize,
    side: Side,
    spec: &RandomSpec,
) -> Vec<OrientedSubtorus> {
    (0..spec.trials)
        .map(|trial| {
            let mut rng = trial_rng(spec.seed, "random_primitive_subtorus", d * 64 + k, trial);
            random_subtorus(&mut rng, d, k, side, spec.entry_bound)
        })
        .collect()
}

/// Two random base subtori of complementary dimension meeting in finitely
/// many points.
pub fn random_transverse_pair<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    bound: u32,
) -> (OrientedSubtorus, OrientedSubtorus) {
    let k = rng.gen_range(0..=d);
    loop {
        let t = random_subtorus(rng, d, k, Side::Base, bound);
        let t2 = random_subtorus(rng, d, d - k, Side::Base, bound);
        if !t.pairing_signed(&t2).expect("complementary").is_zero() {
            return (t, t2);
        }
    }
}

/// All points of `T ∩ T'` for complementary subtori.
///
/// Solves `B a - B' a' ∈ Z^d` through the Smith form `U A V = D` of
/// `A = [B | -B']`: the solutions modulo integers are `V D⁻¹ m` with
/// `0 ≤ m_i < s_i`, and each gives the point `B a`.
pub fn enumerate_intersection(
    t: &OrientedSubtorus,
    t2: &OrientedSubtorus,
) -> Result<Vec<TorusPoint>> {
    if t.d() != t2.d() || t.side() != t2.side() {
        return Err(Error::Spec("subtori live on different tori".into()));
    }
    let d = t.d();
    let k = t.dim();
    if k + t2.dim() != d {
        return Err(Error::Dimension(format!(
            "dimensions {k} and {} are not complementary in {d}",
            t2.dim()
        )));
    }
    let a = t.basis().hcat(&t2.basis().scale(&-BigInt::one()))?;
    let snf = smith_normal_form(&a);
    let factors = snf.invariant_factors();
    if factors.len() < d || factors.iter().any(|s| s.is_zero()) {
        return Err(Error::NotTransverse);
    }

    let mut points = Vec::new();
    let mut m = vec![BigInt::zero(); d];
    loop {
        // (a, a') = V · D⁻¹ m
        let scaled: Vec<BigRational> = m
            .iter()
            .zip(&factors)
            .map(|(mi, si)| BigRational::new(mi.clone(), si.clone()))
            .collect();
        let coeffs: Vec<BigRational> = (0..k)
            .map(|r| {
                snf.v
                    .row(r)
                    .iter()
                    .zip(&scaled)
                    .fold(BigRational::zero(), |acc, (v, x)| acc + x * v)
            })
            .collect();
        let point = (0..d).map(|r| {
            t.basis()
                .row(r)
                .iter()
                .zip(&coeffs)
                .fold(BigRational::zero(), |acc, (b, x)| acc + x * b)
        });
        points.push(TorusPoint::new(point));

        // odometer over ∏ [0, s_i)
        let mut i = 0;
        loop {
            if i == d {
                points.sort();
                return Ok(points);
            }
            m[i] += 1;
            if m[i] < factors[i] {
                break;
            }
            m[i] = BigInt::zero();
            i += 1;
        }
    }
}

/// `p ∈ T`, tested through the characters vanishing on `T`: `Nᵀ p ∈ Z^{d-k}`.
pub fn contains_point(t: &OrientedSubtorus, p: &TorusPoint) -> bool {
    assert_eq!(t.d(), p.d(), "point and subtorus dimensions differ");
    let n = integer_kernel_basis(&t.basis().transpose());
    (0..n.cols()).all(|c| {
        n.column(c)
            .iter()
            .zip(p.coords())
            .fold(BigRational::zero(), |acc, (v, x)| acc + x * v)
            .is_integer()
    })
}

/// Every point with coordinates `j/q`, `q ≤ max_denominator`, lying on
/// both subtori. Exponential in `d`; meant for `d ≤ 2`.
pub fn grid_intersection(
    t: &OrientedSubtorus,
    t2: &OrientedSubtorus,
    max_denominator: u32,
) -> Vec<TorusPoint> {
    let d = t.d();
    let mut fractions: Vec<BigRational> = (1..=max_denominator.max(1))
        .flat_map(|q| (0..q).map(move |j| BigRational::new(j.into(), q.into())))
        .collect();
    fractions.sort();
    fractions.dedup();
    let mut found = Vec::new();
    let mut idx = vec![0usize; d];
    loop {
        let p = TorusPoint::new(idx.iter().map(|&i| fractions[i].clone()));
        if contains_point(t, &p) && contains_point(t2, &p) {
            found.push(p);
        }
        let mut i = 0;
        loop {
            if i == d {
                found.sort();
                return found;
            }
            idx[i] += 1;
            if idx[i] < fractions.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Sign of the permutation sorting the concatenation of two ascending index
/// lists, or `None` if they overlap.
pub fn concatenation_sign(first: &[usize], second: &[usize]) -> Option<i32> {
    let mut all: Vec<usize> = first.iter().chain(second).copied().collect();
    let mut inversions = 0usize;
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            if all[i] == all[j] {
                return None;
            }
            if all[i] > all[j] {
                inversions += 1;
            }
        }
    }
    all.sort_unstable();
    Some(if inversions.is_even() { 1 } else { -1 })
}

/// `|det|` as a count, for comparing with enumerated point sets.
pub fn point_count(t: &OrientedSubtorus, t2: &OrientedSubtorus) -> Result<BigInt> {
    Ok(t.pairing_signed(t2)?.abs())
}
