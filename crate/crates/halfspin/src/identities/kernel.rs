//! The two independent evaluation routes for the partition-sum polynomials.
//!
//! Everything here computes sums of the shape
//! `sum_k (-1)^k (2g - 3 + k)! sum_{partitions into k blocks} sum_d prod_j w(block_j, d_j)`
//! where the block weight `w` depends only on the block's profile (entry sum,
//! size) and a bounded summation index.
//!
//! The census route collapses partitions with equal profile multisets, turns
//! each profile into a short power series whose exponent tracks the block's
//! index, convolves the series per class, and reads off a single coefficient.
//! The direct route enumerates partitions and bounded index tuples literally.
//! The routes share only the scalar special functions and the partition
//! enumerator (which is oracle-tested against Bell/Stirling counts), so each
//! serves as a cross-check on the other; [`Optimizer`] selects one.
//!
//! For the splitting values `P_{n,t}` the series gain a second variable
//! counting how many blocks take the lowered binomial `binom(2s, 2d - 1)`
//! instead of `binom(2s, 2d)`; `t` then picks the slice with `n - t` lowered
//! blocks. Classes that cannot reach the requested slices are skipped.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{
    all_partitions, bounded_compositions, full_profile_census, BlockProfile,
};
use crate::exact::{binomial, factorial, odd_ratio, rat, Rational};

use super::Optimizer;

/// `(-1)^k (2g - 3 + k)!`.
fn arity_prefactor(g: u32, k: usize) -> BigInt {
    let f = factorial(2 * u64::from(g) + k as u64 - 3);
    if k % 2 == 1 {
        -f
    } else {
        f
    }
}

/// Folds per-arity numerators into the signed factorial-weighted total.
fn combine(per_k: &[BigInt], g: u32) -> Rational {
    let mut total = BigInt::zero();
    for (k, coefficient) in per_k.iter().enumerate().skip(1) {
        if !coefficient.is_zero() {
            total += arity_prefactor(g, k) * coefficient;
        }
    }
    rat(total)
}

/// The index cap for one block: both weights vanish past `a_sum`, and terms
/// beyond the global degree target can never contribute.
fn block_cap(profile: BlockProfile, target: usize) -> usize {
    (profile.a_sum as usize).min(target)
}

pub(crate) fn p_value(g: u32, a: &[u64], optimizer: Optimizer) -> Rational {
    match optimizer {
        Optimizer::Census => census_sum(g, a, degree_target(g, a), p_series),
        Optimizer::Direct => direct_p(g, a),
    }
}

pub(crate) fn r_value(g: u32, a: &[u64], optimizer: Optimizer) -> Rational {
    match optimizer {
        Optimizer::Census => census_sum(g, a, (u64::from(g) - 1) as usize, r_series),
        Optimizer::Direct => direct_r(g, a),
    }
}

/// `P_{n,t}` for every `t` in `0..=t_max`, in one pass per route.
pub(crate) fn p_nt_values(g: u32, a: &[u64], t_max: usize, optimizer: Optimizer) -> Vec<Rational> {
    debug_assert!(t_max <= a.len());
    match optimizer {
        Optimizer::Census => census_p_nt(g, a, t_max),
        Optimizer::Direct => direct_p_nt(g, a, t_max),
    }
}

/// The degree total `g - 2 + n` every index tuple must sum to.
fn degree_target(g: u32, a: &[u64]) -> usize {
    (u64::from(g) - 2) as usize + a.len()
}

// --- census route ---------------------------------------------------------

/// Coefficient `d` of the series for one block of the plain partition sum:
/// `binom(2s + 1, 2d) * odd_ratio(d, size)`.
fn p_series(profile: BlockProfile, target: usize) -> Vec<BigInt> {
    let mut series = vec![BigInt::zero(); block_cap(profile, target) + 1];
    for (d, slot) in series.iter_mut().enumerate() {
        *slot = binomial(2 * profile.a_sum + 1, 2 * d as i64)
            * odd_ratio(d as u64, profile.size as u64);
    }
    series
}

/// Coefficient `f` of the series for one block of the reindexed sum:
/// `binom(2s + 1, 2f + 1) * odd_ratio(s - f, size)`.
fn r_series(profile: BlockProfile, target: usize) -> Vec<BigInt> {
    let mut series = vec![BigInt::zero(); block_cap(profile, target) + 1];
    for (f, slot) in series.iter_mut().enumerate() {
        *slot = binomial(2 * profile.a_sum + 1, 2 * f as i64 + 1)
            * odd_ratio(profile.a_sum - f as u64, profile.size as u64);
    }
    series
}

fn convolve(acc: &[BigInt], series: &[BigInt], target: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); target + 1];
    for (i, left) in acc.iter().enumerate() {
        if left.is_zero() {
            continue;
        }
        for (j, right) in series.iter().enumerate().take(target + 1 - i) {
            if !right.is_zero() {
                out[i + j] += left * right;
            }
        }
    }
    out
}

/// Census evaluation of a single-variable partition sum: one series per
/// distinct block profile, one convolution per profile class, one coefficient
/// read per class.
fn census_sum(
    g: u32,
    a: &[u64],
    target: usize,
    series_for: fn(BlockProfile, usize) -> Vec<BigInt>,
) -> Rational {
    let n = a.len();
    let mut per_k = vec![BigInt::zero(); n + 1];
    let mut series_cache: BTreeMap<BlockProfile, Vec<BigInt>> = BTreeMap::new();
    for (profiles, multiplicity) in full_profile_census(a).entries() {
        let mut acc = vec![BigInt::zero(); target + 1];
        acc[0] = BigInt::one();
        for &profile in profiles {
            let series = series_cache
                .entry(profile)
                .or_insert_with(|| series_for(profile, target));
            acc = convolve(&acc, series, target);
        }
        if !acc[target].is_zero() {
            per_k[profiles.len()] += BigInt::from(multiplicity) * &acc[target];
        }
    }
    combine(&per_k, g)
}

/// Per-block series pair for the splitting sum: the plain weight
/// `binom(2s, 2d)` and the lowered weight `binom(2s, 2d - 1)`, both times
/// `odd_ratio(d, size)`.
fn split_series(profile: BlockProfile, target: usize) -> (Vec<BigInt>, Vec<BigInt>) {
    let cap = block_cap(profile, target);
    let mut plain = vec![BigInt::zero(); cap + 1];
    let mut lowered = vec![BigInt::zero(); cap + 1];
    for d in 0..=cap {
        let ratio = odd_ratio(d as u64, profile.size as u64);
        plain[d] = binomial(2 * profile.a_sum, 2 * d as i64) * &ratio;
        lowered[d] = binomial(2 * profile.a_sum, 2 * d as i64 - 1) * ratio;
    }
    (plain, lowered)
}

fn census_p_nt(g: u32, a: &[u64], t_max: usize) -> Vec<Rational> {
    let n = a.len();
    let target = degree_target(g, a);
    // Slices with fewer than `n - t_max` lowered blocks are never read.
    let lowered_floor = n - t_max;
    let mut per_k_t: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); t_max + 1]; n + 1];
    let mut series_cache: BTreeMap<BlockProfile, (Vec<BigInt>, Vec<BigInt>)> = BTreeMap::new();
    for (profiles, multiplicity) in full_profile_census(a).entries() {
        let k = profiles.len();
        if k < lowered_floor {
            continue;
        }
        // acc[w][z]: w lowered blocks so far, degree z.
        let mut acc: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); target + 1]; k + 1];
        acc[0][0] = BigInt::one();
        for (processed, &profile) in profiles.iter().enumerate() {
            let (plain, lowered) = series_cache
                .entry(profile)
                .or_insert_with(|| split_series(profile, target));
            let blocks_left = k - processed - 1;
            let mut next: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); target + 1]; k + 1];
            for (w, row) in acc.iter().enumerate().take(processed + 1) {
                // Drop states that can no longer climb to the floor.
                if w + blocks_left + 1 < lowered_floor {
                    continue;
                }
                for (z, cell) in row.iter().enumerate() {
                    if cell.is_zero() {
                        continue;
                    }
                    for (d, weight) in plain.iter().enumerate().take(target + 1 - z) {
                        if !weight.is_zero() {
                            next[w][z + d] += cell * weight;
                        }
                    }
                    for (d, weight) in lowered.iter().enumerate().take(target + 1 - z) {
                        if !weight.is_zero() {
                            next[w + 1][z + d] += cell * weight;
                        }
                    }
                }
            }
            acc = next;
        }
        for (t, slot) in per_k_t[k].iter_mut().enumerate() {
            let lowered_count = n - t;
            if lowered_count <= k && !acc[lowered_count][target].is_zero() {
                *slot += BigInt::from(multiplicity) * &acc[lowered_count][target];
            }
        }
    }
    (0..=t_max)
        .map(|t| {
            let slice: Vec<BigInt> = per_k_t.iter().map(|row| row[t].clone()).collect();
            combine(&slice, g)
        })
        .collect()
}

// --- direct route ----------------------------------------------------------

/// Entry sums and sizes of a partition's blocks, in block order (not sorted:
/// the direct route deliberately avoids the profile collapse).
fn block_data(blocks: &[Vec<usize>], a: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let sums = blocks
        .iter()
        .map(|b| b.iter().map(|&i| a[i]).sum())
        .collect();
    let sizes = blocks.iter().map(|b| b.len() as u64).collect();
    (sums, sizes)
}

fn direct_p(g: u32, a: &[u64]) -> Rational {
    let n = a.len();
    let target = degree_target(g, a) as u64;
    let mut per_k = vec![BigInt::zero(); n + 1];
    for partition in all_partitions(n) {
        let (sums, sizes) = block_data(partition.blocks(), a);
        let mut acc = BigInt::zero();
        bounded_compositions(&sums, target, |d| {
            let mut term = BigInt::one();
            for (j, &dj) in d.iter().enumerate() {
                term *= binomial(2 * sums[j] + 1, 2 * dj as i64);
                term *= odd_ratio(dj, sizes[j]);
            }
            acc += term;
        });
        per_k[partition.block_count()] += acc;
    }
    combine(&per_k, g)
}

fn direct_r(g: u32, a: &[u64]) -> Rational {
    let n = a.len();
    let target = u64::from(g) - 1;
    let mut per_k = vec![BigInt::zero(); n + 1];
    for partition in all_partitions(n) {
        let (sums, sizes) = block_data(partition.blocks(), a);
        let mut acc = BigInt::zero();
        bounded_compositions(&sums, target, |f| {
            let mut term = BigInt::one();
            for (j, &fj) in f.iter().enumerate() {
                term *= binomial(2 * sums[j] + 1, 2 * fj as i64 + 1);
                term *= odd_ratio(sums[j] - fj, sizes[j]);
            }
            acc += term;
        });
        per_k[partition.block_count()] += acc;
    }
    combine(&per_k, g)
}

fn direct_p_nt(g: u32, a: &[u64], t_max: usize) -> Vec<Rational> {
    let n = a.len();
    let target = degree_target(g, a) as u64;
    let mut per_k_t: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); t_max + 1]; n + 1];
    for partition in all_partitions(n) {
        let k = partition.block_count();
        let (sums, sizes) = block_data(partition.blocks(), a);
        // Literal definition: choose the subset of blocks taking the lowered
        // binomial, then sum over index tuples.
        for mask in 0u32..(1 << k) {
            let lowered_count = mask.count_ones() as usize;
            if lowered_count > n || n - lowered_count > t_max {
                continue;
            }
            let t = n - lowered_count;
            let mut acc = BigInt::zero();
            bounded_compositions(&sums, target, |d| {
                let mut term = BigInt::one();
                for (j, &dj) in d.iter().enumerate() {
                    let shift = i64::from(mask >> j & 1);
                    term *= binomial(2 * sums[j], 2 * dj as i64 - shift);
                    term *= odd_ratio(dj, sizes[j]);
                }
                acc += term;
            });
            per_k_t[k][t] += acc;
        }
    }
    (0..=t_max)
        .map(|t| {
            let slice: Vec<BigInt> = per_k_t.iter().map(|row| row[t].clone()).collect();
            combine(&slice, g)
        })
        .collect()
}
