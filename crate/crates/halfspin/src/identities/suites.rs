//! Verification campaigns: exhaustive simplex scans, seeded randomized
//! suites for the off-simplex polynomial identities, and the exhaustive
//! sweeps for the string equation and the parity-flip lemma.
//!
//! Everything here is deterministic. Scans enumerate entry vectors in
//! lexicographic order and emit per-point rows in check-name order; the
//! randomized suites derive their streams from a base seed and the campaign
//! cell via [`subseed`], so a fixed seed reproduces every row. Scan drivers
//! cache evaluator values per entry multiset (all evaluators are symmetric
//! in the entries), which collapses the point count by roughly `n!`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{
    check_parity_flip, check_reduction, conjecture_coefficient, eval_a, eval_e, kernel, power,
    recursion_sides, s_value_from, tilde_s_from, AVariant, CheckStatus, Optimizer, Parity,
    SimplexPoint, VerificationReport,
};
use crate::correlators::{double_factorial_formula, CorrelatorSystem};
use crate::exact::{rat, Rational};
use crate::sampling::{subseed, PointSampler};
use crate::{Error, Result};

/// Sample abscissas for the generating-polynomial check: the polynomials
/// have degree `n <= 5`, so six distinct points force identity.
pub const S_SAMPLE_XS: [i64; 6] = [-2, -1, 0, 1, 2, 3];

/// Vectors per cell for the hyperplane-vanishing suite.
pub const HYPERPLANE_SAMPLES: usize = 50;
/// Vectors per cell for the splitting-completeness suite.
pub const SPLITTING_SAMPLES: usize = 50;
/// Vectors per cell for the reduction-identity suite.
pub const REDUCTION_SAMPLES: usize = 50;
/// Vectors per cell for the system-equivalence suite.
pub const EQUIVALENCE_SAMPLES: usize = 25;
/// Vectors per cell for the proportionality suite.
pub const PROPORTIONALITY_SAMPLES: usize = 25;
/// Vectors per perturbation target for the derivative-independence suite.
pub const PERTURBATION_VECTORS: usize = 20;
/// Largest entry the randomized suites draw.
pub const RANDOM_ENTRY_MAX: u64 = 10;

/// The checks a simplex scan can run at each point. Variants are listed (and
/// always emitted) in check-name order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SimplexCheck {
    /// Low- and high-variant `A_n` agree.
    AVariant,
    /// `P_{n,t}` equals its closed form for every `t`.
    Conjecture,
    /// `P` vanishes (`n >= 2`).
    MainIdentity,
    /// The `n = 1` closed forms `P_{1,0} = (2g-2) A_1`, `P_{1,1} = (2g-1) A_1`.
    N1Remark,
    /// `R` agrees with `P`.
    RAgreement,
    /// The three-term recursion holds for every `t`.
    Recursion,
    /// `S(x)` matches its closed product form at the sample abscissas.
    SPolynomial,
}

impl SimplexCheck {
    /// Every check, in check-name order.
    pub const ALL: [SimplexCheck; 7] = [
        SimplexCheck::AVariant,
        SimplexCheck::Conjecture,
        SimplexCheck::MainIdentity,
        SimplexCheck::N1Remark,
        SimplexCheck::RAgreement,
        SimplexCheck::Recursion,
        SimplexCheck::SPolynomial,
    ];

    /// Canonical name, as emitted in report rows.
    pub fn name(self) -> &'static str {
        match self {
            SimplexCheck::AVariant => "a-variant",
            SimplexCheck::Conjecture => "conjecture",
            SimplexCheck::MainIdentity => "main-identity",
            SimplexCheck::N1Remark => "n1-remark",
            SimplexCheck::RAgreement => "r-agreement",
            SimplexCheck::Recursion => "recursion",
            SimplexCheck::SPolynomial => "s-polynomial",
        }
    }

    /// Parses a check name; "p-vanishing" is accepted as an alias for the
    /// main identity.
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "p-vanishing" => Some(SimplexCheck::MainIdentity),
            _ => SimplexCheck::ALL.iter().copied().find(|c| c.name() == name),
        }
    }

    /// Whether the check is defined at `n` entries: the main identity needs
    /// `n >= 2`, the `n = 1` remark exactly one entry, everything else any.
    pub fn applicable(self, n: usize) -> bool {
        match self {
            SimplexCheck::MainIdentity => n >= 2,
            SimplexCheck::N1Remark => n == 1,
            _ => n >= 1,
        }
    }

    /// Whether the check's claim holds only on the simplex. Simplex-bound
    /// checks reject off-simplex points; `P` and `R` evaluate anywhere, so
    /// their comparisons run (and may informatively fail) off the simplex.
    pub fn simplex_only(self) -> bool {
        !matches!(self, SimplexCheck::MainIdentity | SimplexCheck::RAgreement)
    }
}

/// The seeded randomized suites for the off-simplex polynomial identities.
/// Variants are listed in check-name order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RandomCheck {
    /// `E` is unchanged by perturbing a negative-index initial value.
    DerivativeIndependence,
    /// `E` agrees across the two stock correlator systems.
    EEquivalence,
    /// `P` vanishes whenever an entry is zero.
    HyperplaneVanishing,
    /// `P = (-4)^(g-2+n) E` over the extended system.
    PeProportionality,
    /// The last-entry reduction identity.
    ReductionIdentity,
    /// `sum_t P_{n,t} = P`.
    SplittingCompleteness,
}

impl RandomCheck {
    /// Every suite, in check-name order.
    pub const ALL: [RandomCheck; 6] = [
        RandomCheck::DerivativeIndependence,
        RandomCheck::EEquivalence,
        RandomCheck::HyperplaneVanishing,
        RandomCheck::PeProportionality,
        RandomCheck::ReductionIdentity,
        RandomCheck::SplittingCompleteness,
    ];

    /// Canonical name, as emitted in report rows.
    pub fn name(self) -> &'static str {
        match self {
            RandomCheck::DerivativeIndependence => "derivative-independence",
            RandomCheck::EEquivalence => "e-equivalence",
            RandomCheck::HyperplaneVanishing => "hyperplane-vanishing",
            RandomCheck::PeProportionality => "pe-proportionality",
            RandomCheck::ReductionIdentity => "reduction-identity",
            RandomCheck::SplittingCompleteness => "splitting-completeness",
        }
    }

    /// Parses a suite name.
    pub fn parse(name: &str) -> Option<Self> {
        RandomCheck::ALL.iter().copied().find(|c| c.name() == name)
    }

    /// The `(g, n)` cells the suite samples; outside them
    /// [`random_reports`] emits nothing.
    pub fn in_domain(self, g: u32, n: usize) -> bool {
        match self {
            RandomCheck::DerivativeIndependence => {
                matches!((g, n), (2, 2) | (2, 3) | (3, 2))
            }
            RandomCheck::EEquivalence | RandomCheck::PeProportionality => {
                (2..=3).contains(&g) && (2..=3).contains(&n)
            }
            RandomCheck::HyperplaneVanishing | RandomCheck::SplittingCompleteness => {
                (2..=3).contains(&g) && (2..=5).contains(&n)
            }
            RandomCheck::ReductionIdentity => (2..=3).contains(&g) && (1..=4).contains(&n),
        }
    }
}

/// Lazily computed evaluator values at one entry multiset.
#[derive(Default)]
struct PointValues {
    p: Option<Rational>,
    r: Option<Rational>,
    /// Splitting slices `P_{n,0}..P_{n,stored}`; the vector length encodes
    /// how far the slices were taken.
    pnt: Option<Vec<Rational>>,
    a_low: Option<Rational>,
    a_high: Option<Rational>,
}

/// Per-scan cache keyed by sorted entries: every cached evaluator is
/// symmetric in the entries, so one multiset serves all its permutations.
struct ValueCache {
    g: u32,
    optimizer: Optimizer,
    map: BTreeMap<Vec<u64>, PointValues>,
}

impl ValueCache {
    fn new(g: u32, optimizer: Optimizer) -> Self {
        ValueCache {
            g,
            optimizer,
            map: BTreeMap::new(),
        }
    }

    fn sorted(a: &[u64]) -> Vec<u64> {
        let mut key = a.to_vec();
        key.sort_unstable();
        key
    }

    fn p(&mut self, a: &[u64]) -> Rational {
        let key = Self::sorted(a);
        let (g, optimizer) = (self.g, self.optimizer);
        let slot = self.map.entry(key.clone()).or_default();
        slot.p
            .get_or_insert_with(|| kernel::p_value(g, &key, optimizer))
            .clone()
    }

    fn r(&mut self, a: &[u64]) -> Rational {
        let key = Self::sorted(a);
        let (g, optimizer) = (self.g, self.optimizer);
        let slot = self.map.entry(key.clone()).or_default();
        slot.r
            .get_or_insert_with(|| kernel::r_value(g, &key, optimizer))
            .clone()
    }

    fn pnt(&mut self, a: &[u64], t_needed: usize) -> Vec<Rational> {
        let key = Self::sorted(a);
        let (g, optimizer) = (self.g, self.optimizer);
        let slot = self.map.entry(key.clone()).or_default();
        let stored = slot.pnt.as_ref().map_or(0, Vec::len);
        if stored <= t_needed {
            slot.pnt = Some(kernel::p_nt_values(g, &key, t_needed, optimizer));
        }
        slot.pnt.clone().expect("just stored")
    }

    fn a_variant(&mut self, a: &[u64], variant: AVariant) -> Rational {
        let key = Self::sorted(a);
        let g = self.g;
        let slot = self.map.entry(key.clone()).or_default();
        let cell = match variant {
            AVariant::Low => &mut slot.a_low,
            AVariant::High => &mut slot.a_high,
        };
        cell.get_or_insert_with(|| {
            let point = SimplexPoint::new(g, key).expect("validated upstream");
            eval_a(&point, variant)
        })
        .clone()
    }
}

fn push_check_rows(
    check: SimplexCheck,
    g: u32,
    a: &[u64],
    cache: &mut ValueCache,
    out: &mut Vec<VerificationReport>,
) {
    let n = a.len();
    let ctx = |t: Option<i64>| (Some(g), Some(n), t, Some(a.to_vec()));
    match check {
        SimplexCheck::MainIdentity => {
            let (cg, cn, ct, ca) = ctx(None);
            out.push(VerificationReport::equality(
                "main-identity",
                cg,
                cn,
                ct,
                ca,
                cache.p(a),
                Rational::zero(),
            ));
        }
        SimplexCheck::RAgreement => {
            let lhs = cache.r(a);
            let rhs = cache.p(a);
            let (cg, cn, ct, ca) = ctx(None);
            out.push(VerificationReport::equality(
                "r-agreement",
                cg,
                cn,
                ct,
                ca,
                lhs,
                rhs,
            ));
        }
        SimplexCheck::AVariant => {
            let lhs = cache.a_variant(a, AVariant::Low);
            let rhs = cache.a_variant(a, AVariant::High);
            let (cg, cn, ct, ca) = ctx(None);
            out.push(VerificationReport::equality(
                "a-variant",
                cg,
                cn,
                ct,
                ca,
                lhs,
                rhs,
            ));
        }
        SimplexCheck::Conjecture => {
            let slices = cache.pnt(a, n);
            let base = cache.a_variant(a, AVariant::Low);
            for (t, slice) in slices.iter().enumerate().take(n + 1) {
                let rhs = rat(conjecture_coefficient(g, n, t)) * &base;
                let (cg, cn, ct, ca) = ctx(Some(t as i64));
                out.push(VerificationReport::equality(
                    "conjecture",
                    cg,
                    cn,
                    ct,
                    ca,
                    slice.clone(),
                    rhs,
                ));
            }
        }
        SimplexCheck::N1Remark => {
            let slices = cache.pnt(a, 1);
            let base = cache.a_variant(a, AVariant::Low);
            for (t, factor) in [(0usize, 2 * i64::from(g) - 2), (1, 2 * i64::from(g) - 1)] {
                let (cg, cn, ct, ca) = ctx(Some(t as i64));
                out.push(VerificationReport::equality(
                    "n1-remark",
                    cg,
                    cn,
                    ct,
                    ca,
                    slices[t].clone(),
                    rat(factor) * &base,
                ));
            }
        }
        SimplexCheck::Recursion => {
            let slices = cache.pnt(a, n);
            for t in 0..=n {
                let (lhs, rhs) = recursion_sides(g, n, &slices, t);
                let (cg, cn, ct, ca) = ctx(Some(t as i64));
                out.push(VerificationReport::equality(
                    "recursion",
                    cg,
                    cn,
                    ct,
                    ca,
                    lhs,
                    rhs,
                ));
            }
        }
        SimplexCheck::SPolynomial => {
            let slices = cache.pnt(a, n);
            for x in S_SAMPLE_XS {
                let abscissa = rat(x);
                let lhs = s_value_from(&slices, &abscissa);
                let rhs = tilde_s_from(g, n, &slices[0], &abscissa);
                // The t column carries the abscissa: s-polynomial rows are
                // indexed by where the polynomials were compared.
                let (cg, cn, ct, ca) = ctx(Some(x));
                out.push(VerificationReport::equality(
                    "s-polynomial",
                    cg,
                    cn,
                    ct,
                    ca,
                    lhs,
                    rhs,
                ));
            }
        }
    }
}

/// Runs the requested checks at every integer point of the simplex
/// `sum(a) = 2g - 3 + n`: one pass over the compositions in lexicographic
/// order, rows per point in check-name order.
pub fn verify_simplex(
    g: u32,
    n: usize,
    checks: &[SimplexCheck],
    optimizer: Optimizer,
) -> Result<Vec<VerificationReport>> {
    if g < 2 {
        return Err(Error::GenusTooSmall { g });
    }
    if n == 0 {
        return Err(Error::EmptyKey);
    }
    let total = 2 * u64::from(g) + n as u64 - 3;
    let mut cache = ValueCache::new(g, optimizer);
    let mut out = Vec::new();
    for a in crate::combinatorics::compositions(total, n) {
        for check in SimplexCheck::ALL {
            if checks.contains(&check) && check.applicable(n) {
                push_check_rows(check, g, &a, &mut cache, &mut out);
            }
        }
    }
    Ok(out)
}

/// Runs the requested checks at one explicit point, in check-name order.
/// Off the simplex, simplex-bound checks are rejected rather than evaluated;
/// the `P`- and `R`-based comparisons run anywhere and may informatively
/// fail.
pub fn point_reports(
    point: &SimplexPoint,
    checks: &[SimplexCheck],
    optimizer: Optimizer,
) -> Result<Vec<VerificationReport>> {
    if !point.on_simplex() && checks.iter().any(|c| c.simplex_only()) {
        return Err(Error::OffSimplex {
            total: point.entry_total(),
            expected: point.simplex_total(),
        });
    }
    let mut cache = ValueCache::new(point.genus(), optimizer);
    let mut out = Vec::new();
    for check in SimplexCheck::ALL {
        if checks.contains(&check) && check.applicable(point.n()) {
            push_check_rows(check, point.genus(), point.entries(), &mut cache, &mut out);
        }
    }
    Ok(out)
}

/// The conjecture scan with a slice bound: every on-simplex point, rows for
/// `t <= t_max` only. `t_max` may not exceed `n`.
pub fn conjecture_reports(
    g: u32,
    n: usize,
    t_max: usize,
    optimizer: Optimizer,
) -> Result<Vec<VerificationReport>> {
    if g < 2 {
        return Err(Error::GenusTooSmall { g });
    }
    if n == 0 {
        return Err(Error::EmptyKey);
    }
    if t_max > n {
        return Err(Error::SplitOutOfRange { t: t_max, n });
    }
    let total = 2 * u64::from(g) + n as u64 - 3;
    let mut cache = ValueCache::new(g, optimizer);
    let mut out = Vec::new();
    for a in crate::combinatorics::compositions(total, n) {
        let slices = cache.pnt(&a, t_max);
        let base = cache.a_variant(&a, AVariant::Low);
        for (t, slice) in slices.iter().enumerate().take(t_max + 1) {
            let rhs = rat(conjecture_coefficient(g, n, t)) * &base;
            out.push(VerificationReport::equality(
                "conjecture",
                Some(g),
                Some(n),
                Some(t as i64),
                Some(a.clone()),
                slice.clone(),
                rhs,
            ));
        }
    }
    Ok(out)
}

/// Non-decreasing integer tuples of length `k` in `[lo, hi]` summing to
/// `total`, lexicographically.
fn sorted_tuples(lo: i64, hi: i64, k: usize, total: i64) -> Vec<Vec<i64>> {
    fn go(
        min_value: i64,
        hi: i64,
        k_left: usize,
        remaining: i64,
        current: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if k_left == 0 {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        for d in min_value..=hi {
            if d * k_left as i64 > remaining {
                break; // non-decreasing tails only grow past the target
            }
            if remaining - d > hi * (k_left as i64 - 1) {
                continue; // the tail cannot absorb the rest yet
            }
            current.push(d);
            go(d, hi, k_left - 1, remaining - d, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(lo, hi, k, total, &mut Vec::with_capacity(k), &mut out);
    out
}

/// The perturbation targets of the derivative-independence suite: sorted
/// zero-free index multisets with at least one negative index, `k <= k_max`
/// entries in `[-3, g + 2]`, satisfying the dimension constraint.
fn perturbation_targets(g: u32, k_max: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for k in 1..=k_max {
        let total = i64::from(g) - 2 + k as i64;
        for tuple in sorted_tuples(-3, i64::from(g) + 2, k, total) {
            if tuple.iter().all(|&d| d != 0) && tuple.iter().any(|&d| d < 0) {
                out.push(tuple);
            }
        }
    }
    out
}

/// Runs one randomized suite in one `(g, n)` cell. Outside the suite's
/// domain the row list is empty. The stream is derived from the seed, the
/// suite name, and the cell, except that the proportionality suite reuses
/// the equivalence suite's stream so both test the very same points.
pub fn random_reports(
    check: RandomCheck,
    g: u32,
    n: usize,
    seed: u64,
    optimizer: Optimizer,
) -> Result<Vec<VerificationReport>> {
    if !check.in_domain(g, n) {
        return Ok(Vec::new());
    }
    let tag = match check {
        RandomCheck::PeProportionality => RandomCheck::EEquivalence.name(),
        other => other.name(),
    };
    let mut sampler = PointSampler::new(subseed(seed, tag, g, n as u64));
    let mut out = Vec::new();
    match check {
        RandomCheck::HyperplaneVanishing => {
            for _ in 0..HYPERPLANE_SAMPLES {
                let a = sampler.vector_with_zero(n, RANDOM_ENTRY_MAX);
                let value = kernel::p_value(g, &a, optimizer);
                out.push(VerificationReport::equality(
                    "hyperplane-vanishing",
                    Some(g),
                    Some(n),
                    None,
                    Some(a),
                    value,
                    Rational::zero(),
                ));
            }
        }
        RandomCheck::SplittingCompleteness => {
            for _ in 0..SPLITTING_SAMPLES {
                let a = sampler.vector(n, RANDOM_ENTRY_MAX);
                let slices = kernel::p_nt_values(g, &a, n, optimizer);
                let lhs = slices.iter().sum();
                let rhs = kernel::p_value(g, &a, optimizer);
                out.push(VerificationReport::equality(
                    "splitting-completeness",
                    Some(g),
                    Some(n),
                    None,
                    Some(a),
                    lhs,
                    rhs,
                ));
            }
        }
        RandomCheck::EEquivalence => {
            let star = CorrelatorSystem::faber_star(g)?;
            let extended = CorrelatorSystem::double_factorial(g)?;
            for _ in 0..EQUIVALENCE_SAMPLES {
                let a = sampler.vector(n, RANDOM_ENTRY_MAX);
                let point = SimplexPoint::new(g, a.clone())?;
                let lhs = eval_e(&point, &star)?;
                let rhs = eval_e(&point, &extended)?;
                out.push(VerificationReport::equality(
                    "e-equivalence",
                    Some(g),
                    Some(n),
                    None,
                    Some(a),
                    lhs,
                    rhs,
                ));
            }
        }
        RandomCheck::PeProportionality => {
            let extended = CorrelatorSystem::double_factorial(g)?;
            let scale = power(&rat(-4), g as usize - 2 + n);
            for _ in 0..PROPORTIONALITY_SAMPLES {
                let a = sampler.vector(n, RANDOM_ENTRY_MAX);
                let point = SimplexPoint::new(g, a.clone())?;
                let lhs = kernel::p_value(g, &a, optimizer);
                let rhs = &scale * eval_e(&point, &extended)?;
                out.push(VerificationReport::equality(
                    "pe-proportionality",
                    Some(g),
                    Some(n),
                    None,
                    Some(a),
                    lhs,
                    rhs,
                ));
            }
        }
        RandomCheck::DerivativeIndependence => {
            let base = CorrelatorSystem::faber_star(g)?;
            for target in perturbation_targets(g, 3) {
                let perturbed = base.perturbed(&target, rat(1))?;
                for _ in 0..PERTURBATION_VECTORS {
                    let a = sampler.vector(n, RANDOM_ENTRY_MAX);
                    let point = SimplexPoint::new(g, a.clone())?;
                    let lhs = eval_e(&point, &base)?;
                    let rhs = eval_e(&point, &perturbed)?;
                    out.push(
                        VerificationReport::equality(
                            "derivative-independence",
                            Some(g),
                            Some(n),
                            None,
                            Some(a),
                            lhs,
                            rhs,
                        )
                        .with_detail(format!("target {target:?}")),
                    );
                }
            }
        }
        RandomCheck::ReductionIdentity => {
            let forbidden = 2 * u64::from(g) + n as u64 - 3;
            for _ in 0..REDUCTION_SAMPLES {
                let a = sampler.vector_off_simplex(n, RANDOM_ENTRY_MAX, forbidden);
                out.push(check_reduction(g, &a, optimizer)?);
            }
        }
    }
    Ok(out)
}

/// Checks that the closed correlator formula satisfies the string equation:
/// for every non-decreasing index tuple `d` in `[-bound, bound]^k` with
/// `sum d = g - 1 + k`, appending a zero index equals the sum of the
/// single-index lowerings. One aggregate row per `(g, k)`; a failing row
/// carries the first violated instance.
pub fn string_equation_reports(
    g_lo: u32,
    g_hi: u32,
    k_max: usize,
    bound: i64,
) -> Result<Vec<VerificationReport>> {
    if g_lo < 2 {
        return Err(Error::GenusTooSmall { g: g_lo });
    }
    let mut out = Vec::new();
    for g in g_lo..=g_hi {
        for k in 1..=k_max {
            let total = i64::from(g) - 1 + k as i64;
            let mut count = 0u64;
            let mut failure: Option<(Vec<i64>, Rational, Rational)> = None;
            for tuple in sorted_tuples(-bound, bound, k, total) {
                count += 1;
                let mut with_zero = tuple.clone();
                with_zero.push(0);
                let lhs = double_factorial_formula(g, &with_zero)?;
                let mut rhs = Rational::zero();
                for j in 0..k {
                    let mut lowered = tuple.clone();
                    lowered[j] -= 1;
                    rhs += double_factorial_formula(g, &lowered)?;
                }
                if lhs != rhs && failure.is_none() {
                    failure = Some((tuple, lhs, rhs));
                }
            }
            let report = match failure {
                None => VerificationReport {
                    check: "string-equation",
                    g: Some(g),
                    n: Some(k),
                    t: None,
                    a: None,
                    status: CheckStatus::Pass,
                    lhs: None,
                    rhs: None,
                    value: None,
                    detail: Some(format!("{count} index tuples")),
                },
                Some((tuple, lhs, rhs)) => VerificationReport {
                    check: "string-equation",
                    g: Some(g),
                    n: Some(k),
                    t: None,
                    a: None,
                    status: CheckStatus::Fail,
                    lhs: Some(lhs),
                    rhs: Some(rhs),
                    value: None,
                    detail: Some(format!("first failure at {tuple:?} of {count} tuples")),
                },
            };
            out.push(report);
        }
    }
    Ok(out)
}

fn product_vectors(max: u64, k: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut current = vec![0u64; k];
    loop {
        out.push(current.clone());
        // mixed-radix increment, least-significant last
        let mut j = k;
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            if current[j] < max {
                current[j] += 1;
                current[j + 1..].fill(0);
                break;
            }
        }
    }
}

fn sorted_vectors(max: u64, k: usize) -> Vec<Vec<u64>> {
    fn go(
        min_value: u64,
        max: u64,
        k_left: usize,
        current: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if k_left == 0 {
            out.push(current.clone());
            return;
        }
        for v in min_value..=max {
            current.push(v);
            go(v, max, k_left - 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(0, max, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Exhaustively checks the parity-flip resummation over every entry multiset
/// with `n <= n_max` entries bounded by `a_max`, every shift vector bounded
/// by `t_max`, every parity vector, and every left total `B` up to
/// `2 sum(a) + sum(t)`. One aggregate row per entry multiset.
pub fn parity_flip_reports(n_max: usize, a_max: u64, t_max: u64) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let shift_vectors = product_vectors(t_max, n);
        for a in sorted_vectors(a_max, n) {
            let entry_total: u64 = a.iter().sum();
            let mut count = 0u64;
            let mut failure: Option<VerificationReport> = None;
            for shifts in &shift_vectors {
                let shift_total: u64 = shifts.iter().sum();
                for mask in 0u32..(1 << n) {
                    let parities: Vec<Parity> = (0..n)
                        .map(|i| {
                            if mask & (1 << i) == 0 {
                                Parity::Even
                            } else {
                                Parity::Odd
                            }
                        })
                        .collect();
                    for b in 0..=(2 * entry_total + shift_total) {
                        let report = check_parity_flip(&a, b, shifts, &parities)
                            .expect("lengths match by construction");
                        count += 1;
                        if !report.is_pass() && failure.is_none() {
                            failure =
                                Some(report.with_detail(format!(
                                    "shifts {shifts:?}, parity mask {mask:#b}"
                                )));
                        }
                    }
                }
            }
            let report = match failure {
                None => VerificationReport {
                    check: "parity-flip",
                    g: None,
                    n: Some(n),
                    t: None,
                    a: Some(a),
                    status: CheckStatus::Pass,
                    lhs: None,
                    rhs: None,
                    value: None,
                    detail: Some(format!("{count} instances")),
                },
                Some(inner) => inner,
            };
            out.push(report);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_names_are_canonical() {
        for window in SimplexCheck::ALL.windows(2) {
            assert!(
                window[0].name() < window[1].name(),
                "ALL must stay name-ordered"
            );
        }
        for window in RandomCheck::ALL.windows(2) {
            assert!(
                window[0].name() < window[1].name(),
                "ALL must stay name-ordered"
            );
        }
        for check in SimplexCheck::ALL {
            assert_eq!(SimplexCheck::parse(check.name()), Some(check));
        }
        for check in RandomCheck::ALL {
            assert_eq!(RandomCheck::parse(check.name()), Some(check));
        }
        assert_eq!(
            SimplexCheck::parse("p-vanishing"),
            Some(SimplexCheck::MainIdentity)
        );
        assert_eq!(SimplexCheck::parse("no-such-check"), None);
        assert_eq!(RandomCheck::parse("no-such-suite"), None);
    }

    #[test]
    fn simplex_scan_is_exhaustive_and_ordered() {
        let rows = verify_simplex(2, 2, &SimplexCheck::ALL, Optimizer::Census).unwrap();
        // 4 points, and per point: a-variant 1, conjecture 3, main-identity
        // 1, r-agreement 1, recursion 3, s-polynomial 6 (the n1 remark is
        // inapplicable at n = 2).
        assert_eq!(rows.len(), 4 * 15);
        assert!(rows.iter().all(VerificationReport::is_pass));
        let first_point: Vec<_> = rows[..15].iter().map(|r| r.a.clone().unwrap()).collect();
        assert!(first_point.iter().all(|a| a == &[0, 3]));
        assert_eq!(rows[15].a.as_deref(), Some(&[1, 2][..]));
        assert_eq!(rows[30].a.as_deref(), Some(&[2, 1][..]));
        assert_eq!(rows[45].a.as_deref(), Some(&[3, 0][..]));
        let names: Vec<_> = rows[..15].iter().map(|r| r.check).collect();
        assert_eq!(
            names,
            [
                "a-variant",
                "conjecture",
                "conjecture",
                "conjecture",
                "main-identity",
                "r-agreement",
                "recursion",
                "recursion",
                "recursion",
                "s-polynomial",
                "s-polynomial",
                "s-polynomial",
                "s-polynomial",
                "s-polynomial",
                "s-polynomial",
            ]
        );
    }

    #[test]
    fn single_entry_scan_runs_the_remark() {
        let rows = verify_simplex(2, 1, &SimplexCheck::ALL, Optimizer::Census).unwrap();
        // One point (a = 2): a-variant 1, conjecture 2, n1-remark 2,
        // r-agreement 1, recursion 2, s-polynomial 6.
        assert_eq!(rows.len(), 14);
        assert!(rows.iter().all(VerificationReport::is_pass));
        let remark: Vec<_> = rows.iter().filter(|r| r.check == "n1-remark").collect();
        assert_eq!(remark.len(), 2);
        assert_eq!(remark[0].t, Some(0));
        assert_eq!(remark[0].value, Some(rat(-8)));
        assert_eq!(remark[1].t, Some(1));
        assert_eq!(remark[1].value, Some(rat(-12)));
        assert!(!rows.iter().any(|r| r.check == "main-identity"));
    }

    #[test]
    fn point_reports_guard_the_simplex() {
        let off = SimplexPoint::new(2, [3u64]).unwrap();
        // Informative off-simplex run: R and P both evaluate, and differ.
        let rows = point_reports(&off, &[SimplexCheck::RAgreement], Optimizer::Census).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].status, CheckStatus::Fail);
        assert_eq!(rows[0].lhs, Some(rat(-70)));
        assert_eq!(rows[0].rhs, Some(rat(-42)));
        // Simplex-bound checks refuse off-simplex points outright.
        assert!(matches!(
            point_reports(&off, &[SimplexCheck::Conjecture], Optimizer::Census),
            Err(Error::OffSimplex {
                total: 3,
                expected: 2
            })
        ));
        // On the simplex everything runs.
        let on = SimplexPoint::new(2, [1u64, 2]).unwrap();
        let rows = point_reports(&on, &SimplexCheck::ALL, Optimizer::Census).unwrap();
        assert_eq!(rows.len(), 15);
        assert!(rows.iter().all(VerificationReport::is_pass));
    }

    #[test]
    fn conjecture_scan_respects_the_slice_bound() {
        let rows = conjecture_reports(2, 2, 1, Optimizer::Census).unwrap();
        assert_eq!(rows.len(), 4 * 2);
        assert!(rows.iter().all(VerificationReport::is_pass));
        assert!(rows.iter().all(|r| r.t == Some(0) || r.t == Some(1)));
        assert!(matches!(
            conjecture_reports(2, 2, 3, Optimizer::Census),
            Err(Error::SplitOutOfRange { t: 3, n: 2 })
        ));
    }

    #[test]
    fn random_suites_pass_in_their_domains() {
        use crate::sampling::DEFAULT_SEED;
        let cells = [
            (RandomCheck::HyperplaneVanishing, 2, 2, HYPERPLANE_SAMPLES),
            (RandomCheck::SplittingCompleteness, 2, 2, SPLITTING_SAMPLES),
            (RandomCheck::EEquivalence, 2, 2, EQUIVALENCE_SAMPLES),
            (
                RandomCheck::PeProportionality,
                2,
                2,
                PROPORTIONALITY_SAMPLES,
            ),
            (RandomCheck::ReductionIdentity, 2, 1, REDUCTION_SAMPLES),
        ];
        for (check, g, n, expected) in cells {
            let rows = random_reports(check, g, n, DEFAULT_SEED, Optimizer::Census).unwrap();
            assert_eq!(rows.len(), expected, "{}", check.name());
            assert!(
                rows.iter().all(VerificationReport::is_pass),
                "{} should pass",
                check.name()
            );
        }
        // Out of domain: silence, not failure.
        let rows = random_reports(
            RandomCheck::HyperplaneVanishing,
            4,
            2,
            DEFAULT_SEED,
            Optimizer::Census,
        )
        .unwrap();
        assert!(rows.is_empty());
    }

    #[test]
    fn proportionality_reuses_the_equivalence_points() {
        use crate::sampling::DEFAULT_SEED;
        let eq = random_reports(
            RandomCheck::EEquivalence,
            2,
            2,
            DEFAULT_SEED,
            Optimizer::Census,
        )
        .unwrap();
        let pe = random_reports(
            RandomCheck::PeProportionality,
            2,
            2,
            DEFAULT_SEED,
            Optimizer::Census,
        )
        .unwrap();
        assert_eq!(eq.len(), pe.len());
        for (left, right) in eq.iter().zip(&pe) {
            assert_eq!(left.a, right.a, "both suites must see the same points");
        }
    }

    #[test]
    fn derivative_targets_are_the_expected_multisets() {
        let targets = perturbation_targets(2, 3);
        assert_eq!(
            targets,
            [
                vec![-2, 4],
                vec![-1, 3],
                vec![-3, 2, 4],
                vec![-3, 3, 3],
                vec![-2, 1, 4],
                vec![-2, 2, 3],
                vec![-1, 1, 3],
                vec![-1, 2, 2],
            ]
            .to_vec()
        );
        use crate::sampling::DEFAULT_SEED;
        let rows = random_reports(
            RandomCheck::DerivativeIndependence,
            2,
            2,
            DEFAULT_SEED,
            Optimizer::Census,
        )
        .unwrap();
        assert_eq!(rows.len(), 8 * PERTURBATION_VECTORS);
        assert!(rows.iter().all(VerificationReport::is_pass));
        assert!(rows[0].detail.as_deref().unwrap().contains("[-2, 4]"));
    }

    #[test]
    fn string_sweep_passes_per_cell() {
        let rows = string_equation_reports(2, 3, 3, 4).unwrap();
        assert_eq!(rows.len(), 2 * 3);
        for row in &rows {
            assert!(row.is_pass(), "{row:?}");
            assert!(row.detail.as_deref().unwrap().ends_with("index tuples"));
        }
    }

    #[test]
    fn parity_sweep_covers_all_multisets() {
        let rows = parity_flip_reports(2, 2, 1);
        // n = 1: multisets (0), (1), (2); n = 2: six non-decreasing pairs.
        assert_eq!(rows.len(), 3 + 6);
        assert!(rows.iter().all(VerificationReport::is_pass));
        assert_eq!(rows[0].a.as_deref(), Some(&[0][..]));
        assert_eq!(rows.last().unwrap().a.as_deref(), Some(&[2, 2][..]));
    }

    #[test]
    fn enumerators_match_their_contracts() {
        assert_eq!(
            sorted_tuples(-1, 2, 2, 1),
            [[-1, 2], [0, 1]].map(|t| t.to_vec()).to_vec()
        );
        assert_eq!(product_vectors(1, 2).len(), 4);
        assert_eq!(sorted_vectors(2, 2).len(), 6);
        assert_eq!(sorted_tuples(0, 0, 3, 1), Vec::<Vec<i64>>::new());
    }
}
