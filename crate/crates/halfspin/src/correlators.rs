//! Bracket systems `<tau_{d_1} .. tau_{d_k}>` over integer exponent vectors
//! and their string-equation closure.
//!
//! A [`CorrelatorKey`] pins a genus `g >= 2` and a nonempty exponent vector
//! whose sum satisfies the dimension constraint `sum(d) = g - 2 + k`. Values
//! on keys without zero exponents come from the system's *initial
//! assignment*; keys containing zeros are reduced through the string
//! equation: drop one zero, then sum the values obtained by lowering each
//! remaining exponent by one. The reduction strictly shrinks the arity, so it
//! terminates, and it never reaches arity zero because a valid single-index
//! key forces `d_1 = g - 1 >= 1`.
//!
//! Two stock assignments are provided. [`CorrelatorSystem::faber_star`]
//! vanishes on every key with a negative exponent and otherwise equals the
//! closed product formula; [`CorrelatorSystem::double_factorial`] extends the
//! same formula to all integer exponents through the extended odd double
//! factorial, and is closed under the string equation as a single formula
//! (see [`double_factorial_formula`]). [`CorrelatorSystem::perturbed`] shifts
//! one negative-exponent initial value, which is how independence of the
//! expression evaluators from those values gets probed.
//!
//! Values are memoized per system behind a [`RefCell`], so a system is not
//! `Sync`; parallel drivers give each worker its own system (construction is
//! cheap and evaluation is deterministic, so replicas agree).

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_traits::{One, Zero};

use crate::exact::{double_factorial_odd, factorial, rat, Rational};
use crate::{Error, Result};

/// A genus together with a sorted exponent vector satisfying the dimension
/// constraint `sum(d) = g - 2 + k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CorrelatorKey {
    g: u32,
    indices: Vec<i64>,
}

impl CorrelatorKey {
    /// Validates `g >= 2`, a nonempty vector, and the dimension constraint;
    /// the exponents are stored sorted (bracket values are symmetric).
    pub fn new(g: u32, indices: impl Into<Vec<i64>>) -> Result<Self> {
        let mut indices = indices.into();
        if g < 2 {
            return Err(Error::GenusTooSmall { g });
        }
        if indices.is_empty() {
            return Err(Error::EmptyKey);
        }
        let k = indices.len();
        let sum: i64 = indices.iter().sum();
        if sum != i64::from(g) - 2 + k as i64 {
            return Err(Error::DimensionConstraint { g, k, sum });
        }
        indices.sort_unstable();
        Ok(CorrelatorKey { g, indices })
    }

    /// The genus the key belongs to.
    pub fn genus(&self) -> u32 {
        self.g
    }

    /// The exponents, sorted ascending.
    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    /// Number of exponents.
    pub fn arity(&self) -> usize {
        self.indices.len()
    }
}

fn validate_formula_input(g: u32, indices: &[i64]) -> Result<()> {
    if g < 2 {
        return Err(Error::GenusTooSmall { g });
    }
    if indices.is_empty() {
        return Err(Error::EmptyKey);
    }
    Ok(())
}

/// `(2g - 3 + k)! / prod_i (2 d_i - 1)!!` over the extended odd double
/// factorial, total in the exponents (no dimension constraint).
///
/// On keys satisfying the constraint this formula is its own string-equation
/// closure: dropping a zero and lowering each remaining exponent multiplies
/// the product by `sum_j (2 d_j - 1) = 2g - 2 + k`, which is exactly the
/// factor the numerator gains. The sweep drivers verify that exhaustively.
pub fn double_factorial_formula(g: u32, indices: &[i64]) -> Result<Rational> {
    validate_formula_input(g, indices)?;
    Ok(closed_formula(g, indices))
}

/// The same product formula, except the value is zero whenever any exponent
/// is negative.
pub fn faber_star_formula(g: u32, indices: &[i64]) -> Result<Rational> {
    validate_formula_input(g, indices)?;
    if indices.iter().any(|&d| d < 0) {
        return Ok(Rational::zero());
    }
    Ok(closed_formula(g, indices))
}

fn closed_formula(g: u32, indices: &[i64]) -> Rational {
    let k = indices.len() as u64;
    let numerator = rat(factorial(2 * u64::from(g) + k - 3));
    let mut denominator = Rational::one();
    for &d in indices {
        denominator *= double_factorial_odd(2 * d - 1).expect("2d - 1 is odd");
    }
    numerator / denominator
}

/// Initial assignment on keys without zero exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
enum InitialRule {
    FaberStar,
    DoubleFactorial,
    Perturbed {
        base: Box<InitialRule>,
        target: Vec<i64>,
        amount: Rational,
    },
}

impl InitialRule {
    fn initial(&self, g: u32, indices: &[i64]) -> Rational {
        match self {
            InitialRule::FaberStar => {
                if indices.iter().any(|&d| d < 0) {
                    Rational::zero()
                } else {
                    closed_formula(g, indices)
                }
            }
            InitialRule::DoubleFactorial => closed_formula(g, indices),
            InitialRule::Perturbed {
                base,
                target,
                amount,
            } => {
                let mut value = base.initial(g, indices);
                if indices == target.as_slice() {
                    value += amount.clone();
                }
                value
            }
        }
    }
}

/// An initial assignment at a fixed genus, closed under the string equation.
#[derive(Clone, Debug)]
pub struct CorrelatorSystem {
    g: u32,
    rule: InitialRule,
    memo: RefCell<BTreeMap<Vec<i64>, Rational>>,
}

impl CorrelatorSystem {
    /// The assignment that vanishes on negative exponents.
    pub fn faber_star(g: u32) -> Result<Self> {
        Self::with_rule(g, InitialRule::FaberStar)
    }

    /// The assignment extending the product formula to all integers.
    pub fn double_factorial(g: u32) -> Result<Self> {
        Self::with_rule(g, InitialRule::DoubleFactorial)
    }

    fn with_rule(g: u32, rule: InitialRule) -> Result<Self> {
        if g < 2 {
            return Err(Error::GenusTooSmall { g });
        }
        Ok(CorrelatorSystem {
            g,
            rule,
            memo: RefCell::new(BTreeMap::new()),
        })
    }

    /// A copy of this system whose initial value at `target` is shifted by
    /// `amount`. The target must be a valid key of this genus with at least
    /// one negative exponent and no zero exponent (zero-exponent keys are
    /// derived, not assigned, so shifting one would be meaningless).
    pub fn perturbed(&self, target: &[i64], amount: Rational) -> Result<Self> {
        let key = CorrelatorKey::new(self.g, target)?;
        if key.indices().contains(&0) {
            return Err(Error::BadPerturbationTarget {
                reason: "target contains a zero exponent",
            });
        }
        if !key.indices().iter().any(|&d| d < 0) {
            return Err(Error::BadPerturbationTarget {
                reason: "target has no negative exponent",
            });
        }
        Ok(CorrelatorSystem {
            g: self.g,
            rule: InitialRule::Perturbed {
                base: Box::new(self.rule.clone()),
                target: key.indices().to_vec(),
                amount,
            },
            memo: RefCell::new(BTreeMap::new()),
        })
    }

    /// The genus every accepted key must carry.
    pub fn genus(&self) -> u32 {
        self.g
    }

    /// The bracket value at `key`: the initial assignment on zero-free keys,
    /// the string-equation reduction otherwise. Deterministic and memoized.
    pub fn value(&self, key: &CorrelatorKey) -> Result<Rational> {
        if key.genus() != self.g {
            return Err(Error::GenusMismatch {
                system: self.g,
                key: key.genus(),
            });
        }
        Ok(self.value_sorted(key.indices()))
    }

    fn value_sorted(&self, indices: &[i64]) -> Rational {
        if let Some(value) = self.memo.borrow().get(indices) {
            return value.clone();
        }
        let value = match indices.iter().position(|&d| d == 0) {
            None => self.rule.initial(self.g, indices),
            Some(zero_at) => {
                // String equation: drop one zero (which one is immaterial —
                // the vector is sorted, so zeros are interchangeable), then
                // lower each remaining exponent in turn.
                let mut rest = Vec::with_capacity(indices.len() - 1);
                rest.extend_from_slice(&indices[..zero_at]);
                rest.extend_from_slice(&indices[zero_at + 1..]);
                let mut acc = Rational::zero();
                for j in 0..rest.len() {
                    let mut child = rest.clone();
                    child[j] -= 1;
                    child.sort_unstable();
                    acc += self.value_sorted(&child);
                }
                acc
            }
        };
        self.memo
            .borrow_mut()
            .insert(indices.to_vec(), value.clone());
        value
    }
}
