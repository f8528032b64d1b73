//! Evaluators and exact checkers for the identity family around the
//! partition-sum polynomial `P` and the bracket-weighted expression `E`.
//!
//! The cast, all exact rationals in the entries `a_1..a_n` at a genus
//! `g >= 2`:
//!
//! - [`eval_p`]: the alternating partition sum whose vanishing on the simplex
//!   `sum(a) = 2g - 3 + n` is the headline identity; defined everywhere.
//! - [`eval_r`]: the reindexed form of the same sum; agrees with `P` exactly
//!   on the simplex and deliberately not elsewhere.
//! - [`eval_e`]: the bracket-weighted expression over a correlator system;
//!   proportional to `P` by `(-4)^(g - 2 + n)` for the extended system.
//! - [`eval_a`]: the odd-binomial sum `A_n`, in both of its variants, which
//!   agree on the simplex.
//! - [`eval_p_nt`] / [`eval_p_nt_all`]: the splitting of `P` by how many
//!   blocks take a lowered binomial; `sum_t P_{n,t} = P` by Pascal's rule.
//! - [`conjecture_rhs`]: the closed-form candidate for `P_{n,t}` on the
//!   simplex.
//! - [`eval_s`] / [`tilde_s_closed`]: the generating polynomial of the
//!   `P_{n,t}` and its closed product form.
//! - [`check_recursion`], [`check_reduction`], [`check_parity_flip`]: report
//!   producers for the three-term recursion, the last-entry reduction, and
//!   the parity-flip resummation.
//! - [`faber_integral`]: the normalized intersection number the whole family
//!   encodes.
//!
//! Checks come back as [`VerificationReport`] values: a failing report always
//! carries both sides of the violated equality, a passing one the common
//! value. Scan drivers, randomized campaigns, and exhaustive sweeps live in
//! [`suites`].

mod expression;
mod kernel;
pub mod suites;

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use expression::eval_e;

use crate::combinatorics::{bounded_compositions, BlockProfile};
use crate::exact::{
    binomial, double_factorial_odd, faber_constant, factorial, falling_factorial, rat, Rational,
};
use crate::{Error, Result};

/// An entry vector at a genus, the common argument of every evaluator.
///
/// "Simplex" refers to the lattice simplex `sum(a) = 2g - 3 + n`: several
/// identities hold only there, and [`SimplexPoint::on_simplex`] tells the
/// checkers whether they may assert them. Points off the simplex are valid
/// arguments wherever the claim is polynomial in the entries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SimplexPoint {
    g: u32,
    a: Vec<u64>,
}

impl SimplexPoint {
    /// Requires `g >= 2` and at least one entry.
    pub fn new(g: u32, a: impl Into<Vec<u64>>) -> Result<Self> {
        let a = a.into();
        if g < 2 {
            return Err(Error::GenusTooSmall { g });
        }
        if a.is_empty() {
            return Err(Error::EmptyKey);
        }
        Ok(SimplexPoint { g, a })
    }

    /// The genus.
    pub fn genus(&self) -> u32 {
        self.g
    }

    /// The entries `a_1..a_n`.
    pub fn entries(&self) -> &[u64] {
        &self.a
    }

    /// Number of entries.
    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// `sum(a)`.
    pub fn entry_total(&self) -> u64 {
        self.a.iter().sum()
    }

    /// The simplex total `2g - 3 + n`.
    pub fn simplex_total(&self) -> u64 {
        2 * u64::from(self.g) + self.a.len() as u64 - 3
    }

    /// The degree total `g - 2 + n` every index tuple sums to.
    pub fn degree_total(&self) -> u64 {
        u64::from(self.g) - 2 + self.a.len() as u64
    }

    /// Whether the entries lie on the simplex.
    pub fn on_simplex(&self) -> bool {
        self.entry_total() == self.simplex_total()
    }

    fn require_on_simplex(&self) -> Result<()> {
        if self.on_simplex() {
            Ok(())
        } else {
            Err(Error::OffSimplex {
                total: self.entry_total(),
                expected: self.simplex_total(),
            })
        }
    }
}

/// The finite support of one block's summation index: outside the window a
/// binomial or Q factor vanishes, so sums over all integers truncate here.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeWindow {
    /// Smallest contributing index.
    pub lo: i64,
    /// Largest contributing index.
    pub hi: i64,
}

impl DegreeWindow {
    /// Window of the bracket-weighted expression for a block with the given
    /// profile: `1 - size <= d <= a_sum - size + 1` (the Q factor vanishes
    /// below, its odd binomial above).
    pub fn expression_form(profile: BlockProfile) -> Self {
        let size = profile.size as i64;
        DegreeWindow {
            lo: 1 - size,
            hi: profile.a_sum as i64 - size + 1,
        }
    }

    /// Window of the partition sums: `0 <= d <= a_sum` (the binomial
    /// `binom(2 a_sum + 1, 2d)` vanishes above).
    pub fn partition_form(profile: BlockProfile) -> Self {
        DegreeWindow {
            lo: 0,
            hi: profile.a_sum as i64,
        }
    }

    /// Whether `d` lies inside the window.
    pub fn contains(&self, d: i64) -> bool {
        self.lo <= d && d <= self.hi
    }

    /// The contributing indices, ascending.
    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

/// Evaluation strategy for the partition sums. The two routes are
/// implemented independently and cross-checked; `Census` collapses
/// structurally equal partitions and is the fast default, `Direct` follows
/// the defining sums literally.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Optimizer {
    /// Profile census plus series convolution.
    #[default]
    Census,
    /// Literal partition-by-partition enumeration.
    Direct,
}

/// Which total the odd-binomial sum `A_n` runs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AVariant {
    /// Odd tuples summing to `2g - 4 + n`.
    Low,
    /// Odd tuples summing to `2g - 2 + n`; agrees with `Low` exactly on the
    /// simplex.
    High,
}

/// Parity class of one summation variable in the parity-flip checker.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    /// Even values.
    Even,
    /// Odd values.
    Odd,
}

impl Parity {
    /// Whether `f` belongs to this class.
    pub fn admits(self, f: u64) -> bool {
        (f % 2 == 1) == (self == Parity::Odd)
    }

    /// The class shifted by `t`: flipped for odd `t`, kept for even.
    pub fn shifted(self, t: u64) -> Parity {
        if t % 2 == 0 {
            self
        } else {
            match self {
                Parity::Even => Parity::Odd,
                Parity::Odd => Parity::Even,
            }
        }
    }
}

/// Outcome of one check instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    /// Both sides agreed exactly.
    Pass,
    /// The equality was violated.
    Fail,
}

/// One check outcome with enough context to reproduce it.
///
/// `lhs`/`rhs` are populated exactly when the check failed (a failing report
/// must show both sides); `value` carries the agreed value on a pass where
/// one is meaningful. `detail` is free-form context (perturbation targets,
/// instance counts) that serializers may keep or drop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    /// Canonical check name.
    pub check: &'static str,
    /// Genus, when the check has one.
    pub g: Option<u32>,
    /// Number of entries, when the check has one.
    pub n: Option<usize>,
    /// Splitting index, sample abscissa, or other small integer parameter.
    pub t: Option<i64>,
    /// The entry vector the instance ran at.
    pub a: Option<Vec<u64>>,
    /// Pass or fail.
    pub status: CheckStatus,
    /// Left-hand side, on failure.
    pub lhs: Option<Rational>,
    /// Right-hand side, on failure.
    pub rhs: Option<Rational>,
    /// The common value, on a pass that has one.
    pub value: Option<Rational>,
    /// Free-form context.
    pub detail: Option<String>,
}

impl VerificationReport {
    pub(crate) fn equality(
        check: &'static str,
        g: Option<u32>,
        n: Option<usize>,
        t: Option<i64>,
        a: Option<Vec<u64>>,
        lhs: Rational,
        rhs: Rational,
    ) -> Self {
        if lhs == rhs {
            VerificationReport {
                check,
                g,
                n,
                t,
                a,
                status: CheckStatus::Pass,
                lhs: None,
                rhs: None,
                value: Some(lhs),
                detail: None,
            }
        } else {
            VerificationReport {
                check,
                g,
                n,
                t,
                a,
                status: CheckStatus::Fail,
                lhs: Some(lhs),
                rhs: Some(rhs),
                value: None,
                detail: None,
            }
        }
    }

    pub(crate) fn with_detail(mut self, detail: String) -> Self {
        self.detail = Some(detail);
        self
    }

    /// Whether the instance passed.
    pub fn is_pass(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// The alternating partition sum `P(a_1..a_n)`:
/// `sum_k (-1)^k (2g - 3 + k)! sum_{partitions} sum_d prod_j
/// binom(2 a_[I_j] + 1, 2 d_j) odd_ratio(d_j, |I_j|)` with `sum d = g - 2 + n`.
/// Defined on and off the simplex; vanishes identically on it.
pub fn eval_p(point: &SimplexPoint, optimizer: Optimizer) -> Rational {
    kernel::p_value(point.genus(), point.entries(), optimizer)
}

/// The reindexed sum `R(a_1..a_n)` with per-block weight
/// `binom(2 a_[I] + 1, 2f + 1) odd_ratio(a_[I] - f, |I|)` and `sum f = g - 1`.
/// Coincides with [`eval_p`] exactly on the simplex.
pub fn eval_r(point: &SimplexPoint, optimizer: Optimizer) -> Rational {
    kernel::r_value(point.genus(), point.entries(), optimizer)
}

/// `P` divided by the entry product — the normalized polynomial the
/// divisibility claim is about. Errors on a zero entry.
pub fn eval_p_tilde(point: &SimplexPoint, optimizer: Optimizer) -> Result<Rational> {
    if let Some(position) = point.entries().iter().position(|&x| x == 0) {
        return Err(Error::ZeroEntry { position });
    }
    let mut value = eval_p(point, optimizer);
    for &entry in point.entries() {
        value /= rat(entry as i64);
    }
    Ok(value)
}

/// The odd-binomial sum
/// `A_n = (-1)^n (2g - 4 + n)! sum_{odd o, sum o = total} prod binom(2 a_j, o_j)`
/// with the variant's total.
pub fn eval_a(point: &SimplexPoint, variant: AVariant) -> Rational {
    let g = point.genus();
    let a = point.entries();
    let n = a.len();
    let o_total = match variant {
        AVariant::Low => 2 * u64::from(g) + n as u64 - 4,
        AVariant::High => 2 * u64::from(g) + n as u64 - 2,
    };
    // Odd tuples o_j = 2 b_j + 1 with binom(2 a_j, o_j) != 0 need b_j < a_j;
    // any zero entry kills every term.
    if a.contains(&0) {
        return Rational::zero();
    }
    let bounds: Vec<u64> = a.iter().map(|&x| x - 1).collect();
    let b_total = (o_total - n as u64) / 2;
    let mut acc = BigInt::zero();
    bounded_compositions(&bounds, b_total, |b| {
        let mut term = BigInt::one();
        for (j, &bj) in b.iter().enumerate() {
            term *= binomial(2 * a[j], 2 * bj as i64 + 1);
        }
        acc += term;
    });
    let factorial_part = factorial(2 * u64::from(g) + n as u64 - 4);
    let signed = if n % 2 == 1 { -acc } else { acc };
    rat(signed * factorial_part)
}

/// The splitting value `P_{n,t}`: the variant of `P` where, per partition,
/// every choice of `n - t` blocks takes the lowered binomial
/// `binom(2 a_[I], 2d - 1)` and the rest take `binom(2 a_[I], 2d)`.
pub fn eval_p_nt(point: &SimplexPoint, t: usize, optimizer: Optimizer) -> Result<Rational> {
    let n = point.n();
    if t > n {
        return Err(Error::SplitOutOfRange { t, n });
    }
    let mut values = kernel::p_nt_values(point.genus(), point.entries(), t, optimizer);
    Ok(values.pop().expect("t <= t_max slices"))
}

/// All splitting values `P_{n,0}..P_{n,n}` in one pass.
pub fn eval_p_nt_all(point: &SimplexPoint, optimizer: Optimizer) -> Vec<Rational> {
    kernel::p_nt_values(point.genus(), point.entries(), point.n(), optimizer)
}

/// The closed-form coefficient `c` with `P_{n,t} = c * A_n` on the simplex:
/// `(-1)^t [ (binom(n-1,t) - binom(n-1,t-1)) (2g - 3 + n + t)
///           + 2 (t - 1) binom(n-1,t-1) ]`.
pub(crate) fn conjecture_coefficient(g: u32, n: usize, t: usize) -> BigInt {
    let upper = (n - 1) as u64;
    let first = binomial(upper, t as i64);
    let second = binomial(upper, t as i64 - 1);
    let scale = BigInt::from(2 * i64::from(g) - 3 + n as i64 + t as i64);
    let coefficient = (first - &second) * scale + BigInt::from(2 * (t as i64 - 1)) * second;
    if t % 2 == 1 {
        -coefficient
    } else {
        coefficient
    }
}

/// The conjectured closed form for `P_{n,t}` on the simplex, built from the
/// low-variant `A_n` (the variants agree there).
pub fn conjecture_rhs(point: &SimplexPoint, t: usize) -> Result<Rational> {
    point.require_on_simplex()?;
    let n = point.n();
    if t > n {
        return Err(Error::SplitOutOfRange { t, n });
    }
    Ok(rat(conjecture_coefficient(point.genus(), n, t)) * eval_a(point, AVariant::Low))
}

pub(crate) fn power(base: &Rational, exponent: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exponent {
        acc *= base;
    }
    acc
}

pub(crate) fn s_value_from(values: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for value in values.iter().rev() {
        acc = acc * x + value;
    }
    acc
}

pub(crate) fn tilde_s_from(g: u32, n: usize, head: &Rational, x: &Rational) -> Rational {
    let one_minus = Rational::one() - x;
    let linear = rat(2 * i64::from(g) - 1) * (x + Rational::one()) + rat(n as i64 - 2);
    power(&one_minus, n - 1) * linear * head / rat(2 * i64::from(g) - 3 + n as i64)
}

/// The generating polynomial `S(x) = sum_t P_{n,t} x^t`, on the simplex.
pub fn eval_s(point: &SimplexPoint, x: &Rational, optimizer: Optimizer) -> Result<Rational> {
    point.require_on_simplex()?;
    Ok(s_value_from(&eval_p_nt_all(point, optimizer), x))
}

/// The closed product form the generating polynomial satisfies on the
/// simplex: `(1 - x)^(n-1) ((2g - 1)(x + 1) + n - 2) P_{n,0} / (2g - 3 + n)`.
pub fn tilde_s_closed(
    point: &SimplexPoint,
    x: &Rational,
    optimizer: Optimizer,
) -> Result<Rational> {
    point.require_on_simplex()?;
    let head = eval_p_nt(point, 0, optimizer)?;
    Ok(tilde_s_from(point.genus(), point.n(), &head, x))
}

pub(crate) fn recursion_sides(
    g: u32,
    n: usize,
    values: &[Rational],
    t: usize,
) -> (Rational, Rational) {
    let next = if t < n {
        values[t + 1].clone()
    } else {
        Rational::zero()
    };
    let lhs = rat(t as i64 + 1) * next + rat(n as i64 - t as i64 - 1) * &values[t];
    let mut rhs = rat(2 * i64::from(g) - 1) * rat(binomial(n as u64, t as i64)) * &values[0]
        / rat(2 * i64::from(g) - 3 + n as i64);
    if t % 2 == 1 {
        rhs = -rhs;
    }
    (lhs, rhs)
}

/// Checks the three-term recursion
/// `(t+1) P_{n,t+1} + (n - t - 1) P_{n,t}
///  = (-1)^t (2g - 1) binom(n,t) P_{n,0} / (2g - 3 + n)`
/// at one simplex point (with `P_{n,n+1} = 0`).
pub fn check_recursion(
    point: &SimplexPoint,
    t: usize,
    optimizer: Optimizer,
) -> Result<VerificationReport> {
    point.require_on_simplex()?;
    let n = point.n();
    if t > n {
        return Err(Error::SplitOutOfRange { t, n });
    }
    let values = kernel::p_nt_values(point.genus(), point.entries(), (t + 1).min(n), optimizer);
    let (lhs, rhs) = recursion_sides(point.genus(), n, &values, t);
    Ok(VerificationReport::equality(
        "recursion",
        Some(point.genus()),
        Some(n),
        Some(t as i64),
        Some(point.entries().to_vec()),
        lhs,
        rhs,
    ))
}

/// Checks the last-entry reduction
/// `P(a_1..a_n, 1) - P(a_1..a_n, 0) = P(a_1..a_n) (4 sum(a) - 8g + 10 - 2n)`,
/// an identity in all entries — no simplex constraint.
pub fn check_reduction(g: u32, a: &[u64], optimizer: Optimizer) -> Result<VerificationReport> {
    let point = SimplexPoint::new(g, a)?;
    let mut extended = a.to_vec();
    extended.push(1);
    let raised = kernel::p_value(g, &extended, optimizer);
    *extended.last_mut().expect("nonempty") = 0;
    let grounded = kernel::p_value(g, &extended, optimizer);
    let coefficient = 4 * point.entry_total() as i64 - 8 * i64::from(g) + 10 - 2 * a.len() as i64;
    let lhs = raised - grounded;
    let rhs = eval_p(&point, optimizer) * rat(coefficient);
    Ok(VerificationReport::equality(
        "reduction-identity",
        Some(g),
        Some(a.len()),
        None,
        Some(a.to_vec()),
        lhs,
        rhs,
    ))
}

fn parity_restricted_sum(weights: &[Vec<BigInt>], parities: &[Parity], total: i64) -> BigInt {
    if total < 0 {
        return BigInt::zero();
    }
    let bounds: Vec<u64> = weights.iter().map(|w| w.len() as u64 - 1).collect();
    let mut acc = BigInt::zero();
    bounded_compositions(&bounds, total as u64, |f| {
        if f.iter()
            .zip(parities)
            .any(|(&fj, parity)| !parity.admits(fj))
        {
            return;
        }
        let mut term = BigInt::one();
        for (j, &fj) in f.iter().enumerate() {
            term *= &weights[j][fj as usize];
        }
        acc += term;
    });
    acc
}

/// Checks the parity-flip resummation: with weights
/// `binom(2 a_i, f_i) (f_i)_(t_i)` (falling factorial), the sum over
/// `sum f = b_total, f_i = p_i (mod 2)` equals the sum over
/// `sum f = 2 sum(a) - b_total + sum(t), f_i = p_i + t_i (mod 2)`.
pub fn check_parity_flip(
    a: &[u64],
    b_total: u64,
    shifts: &[u64],
    parities: &[Parity],
) -> Result<VerificationReport> {
    if a.is_empty() {
        return Err(Error::EmptyKey);
    }
    if shifts.len() != a.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: shifts.len(),
        });
    }
    if parities.len() != a.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: parities.len(),
        });
    }
    let weights: Vec<Vec<BigInt>> = a
        .iter()
        .zip(shifts)
        .map(|(&ai, &ti)| {
            (0..=2 * ai)
                .map(|f| binomial(2 * ai, f as i64) * falling_factorial(f as i64, ti))
                .collect()
        })
        .collect();
    let lhs = parity_restricted_sum(&weights, parities, b_total as i64);
    let flipped: Vec<Parity> = parities
        .iter()
        .zip(shifts)
        .map(|(p, &t)| p.shifted(t))
        .collect();
    let entry_total: u64 = a.iter().sum();
    let shift_total: u64 = shifts.iter().sum();
    let mirrored_total = 2 * entry_total as i64 + shift_total as i64 - b_total as i64;
    let rhs = parity_restricted_sum(&weights, &flipped, mirrored_total);
    Ok(VerificationReport::equality(
        "parity-flip",
        None,
        Some(a.len()),
        Some(b_total as i64),
        Some(a.to_vec()),
        rat(lhs),
        rat(rhs),
    ))
}

/// The normalized intersection number
/// `C_g (2g - 3 + n)! / prod (2 d_i - 1)!!` for positive exponents summing to
/// `g - 2 + n`, with `C_g = |B_2g| / (2^(2g-1) (2g)!)`.
pub fn faber_integral(g: u32, d: &[u64]) -> Result<Rational> {
    let constant = faber_constant(g)?;
    if d.is_empty() {
        return Err(Error::EmptyKey);
    }
    if d.contains(&0) {
        return Err(Error::BadIntegralExponents {
            reason: "exponents must be positive",
        });
    }
    let n = d.len() as u64;
    if d.iter().sum::<u64>() != u64::from(g) - 2 + n {
        return Err(Error::BadIntegralExponents {
            reason: "exponents must sum to g - 2 + n",
        });
    }
    let mut value = constant * rat(factorial(2 * u64::from(g) + n - 3));
    for &di in d {
        value /= double_factorial_odd(2 * di as i64 - 1).expect("2d - 1 is odd");
    }
    Ok(value)
}
