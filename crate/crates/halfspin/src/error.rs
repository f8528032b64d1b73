use alloc::string::String;
use core::fmt;

/// Errors surfaced by the library.
///
/// Precondition violations that cannot be expressed in the type system are
/// reported through this enum rather than panicking, so the CLI can map them
/// to usage errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `double_factorial_odd` was called with an even argument.
    EvenDoubleFactorial { m: i64 },
    /// A rational was constructed with denominator zero, or a division by an
    /// exact zero was requested.
    DivisionByZero,
    /// A rational string did not parse as `num` or `num/den`.
    BadRational(String),
    /// Genus below 2; none of the evaluated families are defined there.
    GenusTooSmall { g: u32 },
    /// An index or entry vector with no entries.
    EmptyKey,
    /// Correlator indices do not satisfy the dimension constraint
    /// `sum(d) = g - 2 + k`.
    DimensionConstraint { g: u32, k: usize, sum: i64 },
    /// A key was evaluated against a system built for a different genus.
    GenusMismatch { system: u32, key: u32 },
    /// A perturbation target must have all indices nonzero and at least one
    /// negative index.
    BadPerturbationTarget { reason: &'static str },
    /// Evaluator requires at least this many marked points.
    TooFewPoints { needed: usize, got: usize },
    /// `faber_integral` requires positive exponents summing to `g - 2 + n`.
    BadIntegralExponents { reason: &'static str },
    /// Division by a product of entries that contains a zero entry.
    ZeroEntry { position: usize },
    /// An identity that is only claimed on the simplex `sum(a) = 2g - 3 + n`
    /// was evaluated off it.
    OffSimplex { total: u64, expected: u64 },
    /// A splitting index `t` outside `0..=n`.
    SplitOutOfRange { t: usize, n: usize },
    /// Parallel vectors (indices, shift orders, parities) of unequal length.
    LengthMismatch { left: usize, right: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EvenDoubleFactorial { m } => {
                write!(
                    f,
                    "double factorial is only defined for odd arguments, got {m}"
                )
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::BadRational(s) => {
                write!(f, "cannot parse {s:?} as a rational (`num` or `num/den`)")
            }
            Error::GenusTooSmall { g } => write!(f, "genus must be at least 2, got {g}"),
            Error::EmptyKey => write!(f, "at least one index is required"),
            Error::DimensionConstraint { g, k, sum } => write!(
                f,
                "indices sum to {sum}, but a genus-{g} correlator with {k} indices requires {}",
                i64::from(*g) - 2 + *k as i64
            ),
            Error::GenusMismatch { system, key } => {
                write!(
                    f,
                    "key has genus {key} but the system was built for genus {system}"
                )
            }
            Error::BadPerturbationTarget { reason } => {
                write!(f, "invalid perturbation target: {reason}")
            }
            Error::TooFewPoints { needed, got } => {
                write!(
                    f,
                    "evaluator needs at least {needed} marked points, got {got}"
                )
            }
            Error::BadIntegralExponents { reason } => {
                write!(f, "invalid psi exponents: {reason}")
            }
            Error::ZeroEntry { position } => {
                write!(
                    f,
                    "entry {position} is zero, cannot divide by the entry product"
                )
            }
            Error::OffSimplex { total, expected } => write!(
                f,
                "entries sum to {total}, but this identity needs the simplex total {expected}"
            ),
            Error::SplitOutOfRange { t, n } => {
                write!(f, "splitting index {t} is outside 0..={n}")
            }
            Error::LengthMismatch { left, right } => {
                write!(f, "parallel vectors have lengths {left} and {right}")
            }
        }
    }
}

impl core::error::Error for Error {}
