//! Set partitions, integer compositions, and the block-profile census.
//!
//! The evaluators sum over all partitions of the index positions
//! `{0, .., n-1}` of an entry vector `a`. Every summand depends on a block
//! only through its *profile* — the pair (sum of entries in the block, block
//! size) — so partitions inducing the same multiset of profiles contribute
//! identical weights. [`full_profile_census`] counts partitions per profile
//! multiset once, letting the evaluators multiply a weight by a multiplicity
//! instead of revisiting structurally equal partitions.
//!
//! Partitions are enumerated through restricted growth strings: the string
//! `s` maps position `i` to block `s[i]`, with `s[0] = 0` and
//! `s[i] <= 1 + max(s[0..i])`. Strings are generated in lexicographic order,
//! which orders blocks by their least element.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

/// A partition of the index set `{0, .., n-1}` into nonempty blocks.
///
/// Blocks are ordered by least element and each block lists its positions in
/// increasing order, matching the restricted-growth string it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Rebuilds the blocks from a restricted growth string.
    pub fn from_rgs(rgs: &[usize]) -> Self {
        let block_count = rgs.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); block_count];
        for (position, &block) in rgs.iter().enumerate() {
            blocks[block].push(position);
        }
        SetPartition { blocks }
    }

    /// The blocks, ordered by least element.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// The profile multiset of this partition against an entry vector:
    /// one `(entry sum, size)` pair per block, sorted.
    pub fn profiles(&self, a: &[u64]) -> Vec<BlockProfile> {
        let mut profiles: Vec<BlockProfile> = self
            .blocks
            .iter()
            .map(|block| BlockProfile {
                a_sum: block.iter().map(|&i| a[i]).sum(),
                size: block.len(),
            })
            .collect();
        profiles.sort_unstable();
        profiles
    }
}

/// Iterator over all restricted growth strings of length `n`, lexicographic.
struct RgsIter {
    rgs: Vec<usize>,
    fresh: bool,
}

impl RgsIter {
    fn new(n: usize) -> Self {
        RgsIter {
            rgs: vec![0; n],
            fresh: n > 0,
        }
    }
}

impl Iterator for RgsIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.fresh {
            self.fresh = false;
            return Some(self.rgs.clone());
        }
        // Increment the rightmost position that can still grow, then reset
        // everything to its right to zero.
        let n = self.rgs.len();
        for j in (1..n).rev() {
            let prefix_max = *self.rgs[..j].iter().max().expect("j >= 1");
            if self.rgs[j] <= prefix_max {
                self.rgs[j] += 1;
                self.rgs[j + 1..].fill(0);
                return Some(self.rgs.clone());
            }
        }
        None
    }
}

/// All partitions of `{0, .., n-1}`, in restricted-growth-string order.
pub fn all_partitions(n: usize) -> impl Iterator<Item = SetPartition> {
    RgsIter::new(n).map(|rgs| SetPartition::from_rgs(&rgs))
}

/// The partitions of `{0, .., n-1}` with exactly `k` blocks, in
/// restricted-growth-string order.
pub fn set_partitions(n: usize, k: usize) -> impl Iterator<Item = SetPartition> {
    all_partitions(n).filter(move |p| p.block_count() == k)
}

/// All length-`k` tuples of non-negative integers summing to `total`,
/// lexicographically ascending. Empty for `k == 0` unless you never call it
/// that way; the evaluators always have `k >= 1`.
pub fn compositions(total: u64, k: usize) -> Compositions {
    Compositions::new(total, k)
}

/// Iterator state for [`compositions`].
pub struct Compositions {
    current: Vec<u64>,
    fresh: bool,
}

impl Compositions {
    fn new(total: u64, k: usize) -> Self {
        if k == 0 {
            return Compositions {
                current: Vec::new(),
                fresh: total == 0,
            };
        }
        let mut current = vec![0; k];
        current[k - 1] = total;
        Compositions {
            current,
            fresh: true,
        }
    }
}

impl Iterator for Compositions {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.fresh {
            self.fresh = false;
            return Some(self.current.clone());
        }
        let k = self.current.len();
        // Move one unit from the tail onto the entry left of the last
        // nonzero position; everything after collapses onto the end.
        let j = (1..k).rev().find(|&j| self.current[j] > 0)?;
        self.current[j - 1] += 1;
        let rest = self.current[j] - 1;
        self.current[j..].fill(0);
        self.current[k - 1] = rest;
        Some(self.current.clone())
    }
}

/// Calls `visit` once for every tuple `(x_1, .., x_k)` with
/// `0 <= x_j <= bounds[j]` and `sum(x) = total`, in lexicographic order.
///
/// This is [`compositions`] with per-coordinate caps, used wherever a factor
/// vanishes beyond a known degree and the enumeration should skip the zero
/// terms outright. A bound may exceed `total`; the effective cap is the
/// smaller of the two.
pub fn bounded_compositions(bounds: &[u64], total: u64, mut visit: impl FnMut(&[u64])) {
    fn recurse(
        bounds: &[u64],
        suffix_capacity: &[u64],
        current: &mut Vec<u64>,
        remaining: u64,
        visit: &mut impl FnMut(&[u64]),
    ) {
        let j = current.len();
        if j == bounds.len() {
            debug_assert_eq!(remaining, 0);
            visit(current);
            return;
        }
        // The rest of the tuple can absorb at most `suffix_capacity[j + 1]`,
        // so anything below `remaining - that` underfills the total.
        let lo = remaining.saturating_sub(suffix_capacity[j + 1]);
        let hi = bounds[j].min(remaining);
        for x in lo..=hi {
            current.push(x);
            recurse(bounds, suffix_capacity, current, remaining - x, visit);
            current.pop();
        }
    }

    // suffix_capacity[j] = bounds[j] + .. + bounds[k-1], saturating.
    let mut suffix_capacity = vec![0u64; bounds.len() + 1];
    for j in (0..bounds.len()).rev() {
        suffix_capacity[j] = suffix_capacity[j + 1].saturating_add(bounds[j]);
    }
    if total > suffix_capacity[0] {
        return;
    }
    recurse(
        bounds,
        &suffix_capacity,
        &mut Vec::with_capacity(bounds.len()),
        total,
        &mut visit,
    );
}

/// The profile of one block against an entry vector: the sum of the entries
/// it covers and how many positions it has. Everything a block contributes
/// to an evaluator factors through this pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockProfile {
    /// Sum of the covered entries of `a`.
    pub a_sum: u64,
    /// Number of covered positions.
    pub size: usize,
}

/// How many partitions induce each profile multiset.
///
/// Keys are sorted profile vectors (so the key length is the block count);
/// per key the census stores the number of set partitions realising exactly
/// that multiset. Summing multiplicities over keys of length `k` recovers the
/// Stirling number `S(n, k)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProfileCensus {
    entries: BTreeMap<Vec<BlockProfile>, u64>,
}

impl ProfileCensus {
    /// Iterates `(profile multiset, multiplicity)` in key order.
    pub fn entries(&self) -> impl Iterator<Item = (&[BlockProfile], u64)> {
        self.entries.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    /// Number of distinct profile multisets.
    pub fn class_count(&self) -> usize {
        self.entries.len()
    }

    /// Total multiplicity across classes with exactly `k` blocks.
    pub fn partitions_with(&self, k: usize) -> u64 {
        self.entries
            .iter()
            .filter(|(profiles, _)| profiles.len() == k)
            .map(|(_, &m)| m)
            .sum()
    }
}

/// Census over partitions of the positions of `a` into exactly `k` blocks.
pub fn profile_census(a: &[u64], k: usize) -> ProfileCensus {
    census_filtered(a, Some(k))
}

/// Census over all partitions of the positions of `a`; key length encodes
/// the block count. One enumeration pass serves every `k` at once.
pub fn full_profile_census(a: &[u64]) -> ProfileCensus {
    census_filtered(a, None)
}

fn census_filtered(a: &[u64], only_k: Option<usize>) -> ProfileCensus {
    let n = a.len();
    let mut entries: BTreeMap<Vec<BlockProfile>, u64> = BTreeMap::new();
    for rgs in RgsIter::new(n) {
        let block_count = rgs.iter().copied().max().map_or(0, |m| m + 1);
        if only_k.is_some_and(|k| k != block_count) {
            continue;
        }
        let mut profiles = vec![BlockProfile { a_sum: 0, size: 0 }; block_count];
        for (position, &block) in rgs.iter().enumerate() {
            profiles[block].a_sum += a[position];
            profiles[block].size += 1;
        }
        profiles.sort_unstable();
        *entries.entry(profiles).or_insert(0) += 1;
    }
    ProfileCensus { entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent Bell-number oracle: the Bell triangle.
    fn bell(n: usize) -> u64 {
        let mut row = vec![1u64];
        for _ in 1..=n {
            let mut next = vec![*row.last().unwrap()];
            for &x in &row {
                let last = *next.last().unwrap();
                next.push(last + x);
            }
            row = next;
        }
        row[0]
    }

    /// Independent Stirling-number oracle: S(n,k) = k S(n-1,k) + S(n-1,k-1).
    fn stirling(n: usize, k: usize) -> u64 {
        if n == 0 {
            return u64::from(k == 0);
        }
        if k == 0 || k > n {
            return 0;
        }
        k as u64 * stirling(n - 1, k) + stirling(n - 1, k - 1)
    }

    #[test]
    fn partitions_of_three_in_growth_string_order() {
        let got: Vec<Vec<Vec<usize>>> = all_partitions(3).map(|p| p.blocks().to_vec()).collect();
        let want: Vec<Vec<Vec<usize>>> = vec![
            vec![vec![0, 1, 2]],
            vec![vec![0, 1], vec![2]],
            vec![vec![0, 2], vec![1]],
            vec![vec![0], vec![1, 2]],
            vec![vec![0], vec![1], vec![2]],
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn partition_counts_match_stirling_and_bell() {
        for n in 1..=8 {
            let mut total = 0;
            for k in 1..=n {
                let count = set_partitions(n, k).count() as u64;
                assert_eq!(count, stirling(n, k), "S({n},{k})");
                total += count;
            }
            assert_eq!(total, bell(n), "Bell({n})");
        }
    }

    #[test]
    fn four_elements_two_blocks_is_seven() {
        assert_eq!(set_partitions(4, 2).count(), 7);
    }

    #[test]
    fn compositions_of_two_into_three_parts() {
        let got: Vec<Vec<u64>> = compositions(2, 3).collect();
        let want = vec![
            vec![0, 0, 2],
            vec![0, 1, 1],
            vec![0, 2, 0],
            vec![1, 0, 1],
            vec![1, 1, 0],
            vec![2, 0, 0],
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn composition_edge_cases() {
        assert_eq!(compositions(0, 3).collect::<Vec<_>>(), vec![vec![0, 0, 0]]);
        assert_eq!(compositions(4, 1).collect::<Vec<_>>(), vec![vec![4]]);
        let count = compositions(5, 4).count() as u64;
        assert_eq!(count, 56); // C(5+3, 3)
    }

    #[test]
    fn bounded_compositions_respect_caps() {
        let mut got = Vec::new();
        bounded_compositions(&[1, 2, 1], 3, |t| got.push(t.to_vec()));
        let want = vec![vec![0, 2, 1], vec![1, 1, 1], vec![1, 2, 0]];
        assert_eq!(got, want);
    }

    #[test]
    fn bounded_compositions_match_unbounded_when_caps_are_slack() {
        let mut got = Vec::new();
        bounded_compositions(&[9, 9, 9], 4, |t| got.push(t.to_vec()));
        let want: Vec<Vec<u64>> = compositions(4, 3).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn bounded_compositions_edge_cases() {
        let mut count = 0;
        bounded_compositions(&[1, 1], 5, |_| count += 1);
        assert_eq!(count, 0, "total above the combined caps");
        let mut tuples = Vec::new();
        bounded_compositions(&[0, 3], 3, |t| tuples.push(t.to_vec()));
        assert_eq!(tuples, vec![vec![0, 3]]);
        let mut empty = Vec::new();
        bounded_compositions(&[], 0, |t| empty.push(t.to_vec()));
        assert_eq!(empty, vec![Vec::<u64>::new()]);
    }

    #[test]
    fn census_collapses_equal_profiles() {
        // a = (1,1,2): the partitions {0,2}{1} and {0}{1,2} share the
        // profile multiset {(1,1),(3,2)} and must be counted together.
        let census = profile_census(&[1, 1, 2], 2);
        let entries: Vec<(Vec<BlockProfile>, u64)> =
            census.entries().map(|(p, m)| (p.to_vec(), m)).collect();
        let profile = |a_sum, size| BlockProfile { a_sum, size };
        assert_eq!(
            entries,
            vec![
                (vec![profile(1, 1), profile(3, 2)], 2),
                (vec![profile(2, 1), profile(2, 2)], 1),
            ]
        );
    }

    #[test]
    fn census_multiplicities_sum_to_stirling_numbers() {
        let vectors: [&[u64]; 4] = [&[0, 0, 0, 0], &[1, 2, 3, 4], &[5, 0, 5, 0], &[2, 2, 1, 7]];
        for a in vectors {
            let census = full_profile_census(a);
            for k in 1..=a.len() {
                assert_eq!(
                    census.partitions_with(k),
                    stirling(a.len(), k),
                    "a={a:?}, k={k}"
                );
            }
        }
    }
}
