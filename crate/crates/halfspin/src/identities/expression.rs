//! The bracket-weighted expression `E` over a correlator system.
//!
//! For entries `a_1..a_n` the expression sums over set partitions of the
//! entry positions; a partition into blocks `I_1..I_k` contributes
//! `(-1)^k` times the sum, over index tuples `(d_1..d_k)` with
//! `sum d = g - 2 + k`, of
//! `prod_j Q_(d_j + |I_j| - 1)(a_[I_j])` times the correlator value at the
//! tuple. Each block's index runs over [`DegreeWindow::expression_form`],
//! outside of which its Q factor vanishes, so the sums here are finite and
//! every surviving tuple is a valid correlator key.
//!
//! Two exact facts about `E` are checked by the suites: it is proportional
//! to the partition sum `P` by `(-4)^(g - 2 + n)` when evaluated over the
//! extended system, and its value does not depend on which of the two stock
//! systems supplies the brackets, even at points whose tuples reach
//! negative indices where the systems themselves disagree.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{DegreeWindow, SimplexPoint};
use crate::combinatorics::{all_partitions, BlockProfile};
use crate::correlators::{CorrelatorKey, CorrelatorSystem};
use crate::exact::{binomial, double_factorial_odd, rat, Rational};
use crate::{Error, Result};

/// `Q_m` at a non-negative integer argument `s`, in the binomial closed form
/// `(-1)^m C(2s+1, 2m) (2m-1)!! / 4^m`; zero for `m < 0`.
///
/// This is the specialization of the polynomial `q_poly` to the block sums
/// the expression actually uses; the test suite pins the two forms to each
/// other.
pub(crate) fn q_int(m: i64, s: u64) -> Rational {
    if m < 0 {
        return Rational::zero();
    }
    let front = binomial(2 * s + 1, 2 * m);
    if front.is_zero() {
        return Rational::zero();
    }
    let odd = double_factorial_odd(2 * m - 1).expect("2m - 1 is odd");
    let value = rat(front) * odd / rat(BigInt::from(4).pow(m as u32));
    if m % 2 == 1 {
        -value
    } else {
        value
    }
}

fn collect_tuples(
    windows: &[DegreeWindow],
    lo_tail: &[i64],
    hi_tail: &[i64],
    j: usize,
    remaining: i64,
    current: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if j == windows.len() {
        if remaining == 0 {
            out.push(current.clone());
        }
        return;
    }
    let lo = windows[j].lo.max(remaining - hi_tail[j + 1]);
    let hi = windows[j].hi.min(remaining - lo_tail[j + 1]);
    for d in lo..=hi {
        current.push(d);
        collect_tuples(
            windows,
            lo_tail,
            hi_tail,
            j + 1,
            remaining - d,
            current,
            out,
        );
        current.pop();
    }
}

fn tuples_with_sum(windows: &[DegreeWindow], total: i64) -> Vec<Vec<i64>> {
    let mut lo_tail = Vec::with_capacity(windows.len() + 1);
    let mut hi_tail = Vec::with_capacity(windows.len() + 1);
    lo_tail.resize(windows.len() + 1, 0i64);
    hi_tail.resize(windows.len() + 1, 0i64);
    for j in (0..windows.len()).rev() {
        lo_tail[j] = lo_tail[j + 1] + windows[j].lo;
        hi_tail[j] = hi_tail[j + 1] + windows[j].hi;
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(windows.len());
    collect_tuples(
        windows,
        &lo_tail,
        &hi_tail,
        0,
        total,
        &mut current,
        &mut out,
    );
    out
}

/// Evaluates the expression at a point over the given correlator system.
///
/// Needs at least two entries and a system of the matching genus. The point
/// may lie on or off the simplex.
pub fn eval_e(point: &SimplexPoint, system: &CorrelatorSystem) -> Result<Rational> {
    let n = point.n();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    if system.genus() != point.genus() {
        return Err(Error::GenusMismatch {
            system: system.genus(),
            key: point.genus(),
        });
    }
    let g = point.genus();
    let a = point.entries();
    let mut total = Rational::zero();
    for partition in all_partitions(n) {
        let k = partition.block_count();
        let target = i64::from(g) - 2 + k as i64;
        let mut windows = Vec::with_capacity(k);
        let mut q_tables: Vec<Vec<Rational>> = Vec::with_capacity(k);
        for block in partition.blocks() {
            let profile = BlockProfile {
                a_sum: block.iter().map(|&i| a[i]).sum(),
                size: block.len(),
            };
            let window = DegreeWindow::expression_form(profile);
            let table = window
                .iter()
                .map(|d| q_int(d + profile.size as i64 - 1, profile.a_sum))
                .collect();
            windows.push(window);
            q_tables.push(table);
        }
        let mut acc = Rational::zero();
        for tuple in tuples_with_sum(&windows, target) {
            let mut weight = Rational::one();
            for (j, &d) in tuple.iter().enumerate() {
                weight *= &q_tables[j][(d - windows[j].lo) as usize];
            }
            if weight.is_zero() {
                continue;
            }
            let key = CorrelatorKey::new(g, tuple)?;
            acc += weight * system.value(&key)?;
        }
        if k % 2 == 1 {
            total -= acc;
        } else {
            total += acc;
        }
    }
    Ok(total)
}
