//! Deterministic inputs shared by the benchmarks.

use toruskk_core::oracle::{random_subtorus, random_unimodular, trial_rng};
use toruskk_core::{IntMatrix, OrientedSubtorus, Side};

/// `n` products of two random unimodular `dim × dim` matrices, so entries
/// grow past the generator bound and the reductions have work to do.
pub fn sample_matrices(n: usize, dim: usize) -> Vec<IntMatrix> {
    (0..n)
        .map(|i| {
            let mut rng = trial_rng(1, "bench-matrix", dim, i);
            let a = random_unimodular(&mut rng, dim, 5);
            let b = random_unimodular(&mut rng, dim, 5);
            let mut m = &a * &b;
            // break unimodularity so SNF sees nontrivial invariant factors
            m.add_column_multiple(0, dim - 1, &2.into());
            m
        })
        .collect()
}

/// `n` random `k`-subtori of the base `d`-torus.
pub fn sample_subtori(n: usize, d: usize, k: usize) -> Vec<OrientedSubtorus> {
    (0..n)
        .map(|i| {
            random_subtorus(
                &mut trial_rng(1, "bench-subtorus", d, i),
                d,
                k,
                Side::Base,
                4,
            )
        })
        .collect()
}
