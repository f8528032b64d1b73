use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{rat, ratio, Rational};
use crate::{Error, Result};

/// `n!` as an exact integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// `m!!` for odd `m`, extended to negative odd arguments.
///
/// For positive odd `m` this is the usual product `m (m-2) ... 3 * 1`, with
/// `(-1)!! = 1`. Negative odd arguments are defined by running the recurrence
/// `m!! = (m+2)!! / (m+2)` downward, which leaves the integers:
/// `(-3)!! = -1`, `(-5)!! = 1/3`, `(-7)!! = -1/15`, never zero.
///
/// Even arguments are rejected; nothing in this crate needs them.
pub fn double_factorial_odd(m: i64) -> Result<Rational> {
    if m % 2 == 0 {
        return Err(Error::EvenDoubleFactorial { m });
    }
    if m >= -1 {
        let mut acc = BigInt::one();
        let mut i = m;
        while i >= 3 {
            acc *= i;
            i -= 2;
        }
        Ok(rat(acc))
    } else {
        // m!! = 1 / ((m+2) (m+4) ... (-1))
        let mut acc = BigInt::one();
        let mut i = m + 2;
        while i <= -1 {
            acc *= i;
            i += 2;
        }
        ratio(1, acc)
    }
}

/// Binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i; // exact: C(n-k+i, i) is an integer
    }
    acc
}

/// Falling factorial `(f)_t = f (f-1) ... (f-t+1)`, with `(f)_0 = 1`.
///
/// `f` may be negative; for `0 <= f < t` the product crosses zero and
/// vanishes.
pub fn falling_factorial(f: i64, t: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..t {
        acc *= f - i as i64;
    }
    acc
}

/// The double-factorial quotient `(2d-1)!! / (2d+1-2s)!!` realised as the
/// integer product `prod_{j=1}^{s-1} (2d+1-2j)`.
///
/// Taking the product directly keeps the value an exact (possibly negative
/// or zero-free) integer even where the quotient's denominator runs through
/// the extended negative range. Requires `size >= 1`; with `size == 1` the
/// product is empty and the ratio is 1.
pub fn odd_ratio(d: u64, size: u64) -> BigInt {
    assert!(size >= 1, "odd_ratio needs a block size of at least 1");
    let mut acc = BigInt::one();
    for j in 1..size {
        acc *= 2 * d as i128 + 1 - 2 * j as i128;
    }
    acc
}

/// The polynomial `Q_m(a) = (-1)^m / (2^m m!) * prod_{k=1}^{2m} (a + 1 - k/2)`,
/// evaluated at an arbitrary rational argument; identically zero for `m < 0`.
///
/// The product telescopes through integer and half-integer nodes, so for
/// integer `a >= 0` the value vanishes as soon as `m > a`. This is the
/// defining product form; the binomial closed form on non-negative integers,
/// `(-1)^m C(2a+1, 2m) (2m-1)!! / 4^m`, is kept as an independent
/// cross-check in the test suite.
pub fn q_poly(m: i64, a: &Rational) -> Rational {
    if m < 0 {
        return Rational::zero();
    }
    if m == 0 {
        return Rational::one();
    }
    let m = m as u64;
    // With t = 2a the product is prod_{k=1}^{2m} (t + 2 - k) / 2^{2m},
    // so Q_m(a) = (-1)^m prod_{k=1}^{2m} (t + 2 - k) / (8^m m!).
    let t = a * rat(2);
    let mut prod = Rational::one();
    for k in 1..=2 * m {
        prod *= &t + rat(2 - k as i64);
        if prod.is_zero() {
            return prod;
        }
    }
    let mut den = factorial(m);
    den *= BigInt::from(8).pow(m as u32);
    if m % 2 == 1 {
        den = -den;
    }
    prod / rat(den)
}

/// Bernoulli number `B_m` (convention `B_1 = -1/2`), by the classical
/// recurrence `sum_{j=0}^{m} C(m+1, j) B_j = 0`.
///
/// The whole table up to `m` is built per call; the indices used anywhere in
/// this crate are small enough that the quadratic recurrence is instant, and
/// keeping the function pure means it can be called freely from any worker.
pub fn bernoulli(m: u64) -> Rational {
    let mut table: Vec<Rational> = Vec::with_capacity(m as usize + 1);
    table.push(Rational::one());
    for i in 1..=m {
        let mut sum = Rational::zero();
        for (j, b) in table.iter().enumerate() {
            sum += rat(binomial(i + 1, j as i64)) * b;
        }
        let b_i = -sum / rat(i + 1);
        table.push(b_i);
    }
    table.pop().expect("table holds at least B_0")
}

/// The genus constant `C_g = |B_{2g}| / (2^{2g-1} (2g)!)` scaling the
/// intersection numbers; defined for `g >= 2`.
///
/// `C_2 = 1/5760` and `C_3 = 1/967680`.
pub fn faber_constant(g: u32) -> Result<Rational> {
    if g < 2 {
        return Err(Error::GenusTooSmall { g });
    }
    let b = bernoulli(2 * u64::from(g)).abs();
    let den = BigInt::from(2).pow(2 * g - 1) * factorial(2 * u64::from(g));
    Ok(b / rat(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_small_values() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(1), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(factorial(10), BigInt::from(3628800));
    }

    #[test]
    fn double_factorial_positive_and_extended() {
        let ddf = |m| double_factorial_odd(m).unwrap();
        assert_eq!(ddf(9), rat(945));
        assert_eq!(ddf(7), rat(105));
        assert_eq!(ddf(5), rat(15));
        assert_eq!(ddf(3), rat(3));
        assert_eq!(ddf(1), rat(1));
        assert_eq!(ddf(-1), rat(1));
        assert_eq!(ddf(-3), rat(-1));
        assert_eq!(ddf(-5), ratio(1, 3).unwrap());
        assert_eq!(ddf(-7), ratio(-1, 15).unwrap());
    }

    #[test]
    fn double_factorial_rejects_even_arguments() {
        assert_eq!(
            double_factorial_odd(4),
            Err(Error::EvenDoubleFactorial { m: 4 })
        );
        assert_eq!(
            double_factorial_odd(0),
            Err(Error::EvenDoubleFactorial { m: 0 })
        );
        assert_eq!(
            double_factorial_odd(-2),
            Err(Error::EvenDoubleFactorial { m: -2 })
        );
    }

    #[test]
    fn double_factorial_satisfies_the_downward_recurrence() {
        // m!! = (m+2)!!/(m+2) across the sign boundary
        for m in (-21..=19).filter(|m| m % 2 != 0) {
            let lhs = double_factorial_odd(m).unwrap();
            let rhs = double_factorial_odd(m + 2).unwrap() / rat(m + 2);
            assert_eq!(lhs, rhs, "recurrence fails at m = {m}");
        }
    }

    #[test]
    fn binomial_small_values_and_edges() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(21, 10), BigInt::from(352716));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(3, -1), BigInt::from(0));
        assert_eq!(binomial(3, 4), BigInt::from(0));
    }

    #[test]
    fn binomial_pascal_split() {
        // C(2a+1, 2d) = C(2a, 2d) + C(2a, 2d-1): the splitting that defines
        // the partial evaluators.
        for a in 0u64..8 {
            for d in 0i64..10 {
                assert_eq!(
                    binomial(2 * a + 1, 2 * d),
                    binomial(2 * a, 2 * d) + binomial(2 * a, 2 * d - 1)
                );
            }
        }
    }

    #[test]
    fn falling_factorial_values() {
        assert_eq!(falling_factorial(5, 2), BigInt::from(20));
        assert_eq!(falling_factorial(3, 1), BigInt::from(3));
        assert_eq!(falling_factorial(7, 0), BigInt::from(1));
        assert_eq!(falling_factorial(3, 5), BigInt::from(0)); // crosses zero
        assert_eq!(falling_factorial(-2, 2), BigInt::from(6)); // (-2)(-3)
    }

    #[test]
    fn odd_ratio_values() {
        assert_eq!(odd_ratio(3, 2), BigInt::from(5));
        assert_eq!(odd_ratio(1, 3), BigInt::from(-1));
        assert_eq!(odd_ratio(0, 2), BigInt::from(-1));
        for d in 0..6 {
            assert_eq!(odd_ratio(d, 1), BigInt::from(1), "empty product at size 1");
        }
    }

    #[test]
    fn odd_ratio_matches_the_double_factorial_quotient() {
        // Wherever the quotient form is defined the integral product agrees.
        for d in 0u64..8 {
            for size in 1u64..6 {
                let quotient = double_factorial_odd(2 * d as i64 - 1).unwrap()
                    / double_factorial_odd(2 * d as i64 + 1 - 2 * size as i64).unwrap();
                assert_eq!(rat(odd_ratio(d, size)), quotient, "d={d}, size={size}");
            }
        }
    }

    #[test]
    fn q_poly_frozen_values() {
        assert_eq!(q_poly(0, &rat(17)), rat(1));
        assert_eq!(q_poly(1, &rat(1)), ratio(-3, 4).unwrap());
        assert_eq!(q_poly(2, &rat(2)), ratio(15, 16).unwrap());
        assert_eq!(q_poly(3, &rat(2)), rat(0)); // vanishes once m > a
        assert_eq!(q_poly(-1, &rat(5)), rat(0));
        assert_eq!(q_poly(-4, &ratio(1, 2).unwrap()), rat(0));
        // a half-integer argument off the vanishing window
        assert_eq!(q_poly(1, &ratio(-5, 2).unwrap()), ratio(-5, 2).unwrap());
    }

    #[test]
    fn q_poly_matches_the_binomial_closed_form_at_integers() {
        for m in 0i64..8 {
            for a in 0u64..10 {
                let closed = rat(binomial(2 * a + 1, 2 * m))
                    * double_factorial_odd(2 * m - 1).unwrap()
                    / rat(BigInt::from(4).pow(m as u32));
                let closed = if m % 2 == 1 { -closed } else { closed };
                assert_eq!(q_poly(m, &rat(a)), closed, "m={m}, a={a}");
            }
        }
    }

    #[test]
    fn q_poly_cocycle_instance() {
        // Q_m(a+m) Q_{m'}(b+m') = C(m+m', m) Q_{m+m'}(a+m+m') on the
        // constraint a + b + m + m' = -3/2; here m = m' = 1, a = 0, b = -7/2.
        let lhs = q_poly(1, &rat(1)) * q_poly(1, &ratio(-5, 2).unwrap());
        let rhs = rat(binomial(2, 1)) * q_poly(2, &rat(2));
        assert_eq!(lhs, ratio(15, 8).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bernoulli_frozen_values() {
        assert_eq!(bernoulli(0), rat(1));
        assert_eq!(bernoulli(1), ratio(-1, 2).unwrap());
        assert_eq!(bernoulli(2), ratio(1, 6).unwrap());
        assert_eq!(bernoulli(3), rat(0));
        assert_eq!(bernoulli(4), ratio(-1, 30).unwrap());
        assert_eq!(bernoulli(6), ratio(1, 42).unwrap());
        assert_eq!(bernoulli(12), ratio(-691, 2730).unwrap());
    }

    #[test]
    fn faber_constant_values() {
        assert_eq!(faber_constant(2).unwrap(), ratio(1, 5760).unwrap());
        assert_eq!(faber_constant(3).unwrap(), ratio(1, 967680).unwrap());
        assert_eq!(faber_constant(1), Err(Error::GenusTooSmall { g: 1 }));
    }
}
