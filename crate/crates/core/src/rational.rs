//! Exact scalar arithmetic: arbitrary-precision integers and rationals.
//!
//! # Key Operations
//!
//! Thin helpers over [`num_bigint`] / [`num_rational`]: short constructors
//! ([`int`], [`rat`]), factorials and falling factorials, and the binomial
//! coefficient with an arbitrary rational upper argument (needed by closed
//! forms such as `binom(3n/2, n)`).
//!
//! # Design Notes
//!
//! Every computation in this crate is exact; floating point is never used.
//! Factorials are recomputed on demand — profiling shows they are far from
//! any hot path, and the solver's inner loops use dedicated falling
//! factorials instead.

use num_traits::{One, Zero};

/// Arbitrary-precision signed integer.
pub type Int = num_bigint::BigInt;

/// Arbitrary-precision rational; always kept in lowest terms by the
/// underlying library.
pub type Rational = num_rational::BigRational;

/// `n` as an [`Int`].
pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// `n/d` as a [`Rational`] in lowest terms.  Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(int(n), int(d))
}

/// `n` as a [`Rational`].
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(int(n))
}

/// `n!` as an [`Int`].
pub fn factorial(n: u64) -> Int {
    let mut acc = Int::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// Falling factorial `n (n-1) ... (n-k+1)`, i.e. `n!/(n-k)!` for `k <= n`.
pub fn falling(n: u64, k: u64) -> Int {
    assert!(k <= n, "falling factorial needs k <= n, got n={n} k={k}");
    let mut acc = Int::one();
    for j in 0..k {
        acc *= n - j;
    }
    acc
}

/// Binomial coefficient `C(n, k)` for integer arguments.
pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Generalised binomial coefficient `C(x, k) = x(x-1)...(x-k+1)/k!` with a
/// rational upper argument.
pub fn binomial_rat(x: &Rational, k: u64) -> Rational {
    let mut num = Rational::one();
    for j in 0..k {
        num *= x - rat_int(j as i64);
    }
    num / Rational::from_integer(factorial(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(5), int(120));
        assert_eq!(factorial(12), int(479_001_600));
    }

    #[test]
    fn falling_factorials() {
        assert_eq!(falling(10, 0), int(1));
        assert_eq!(falling(10, 3), int(720));
        assert_eq!(falling(6, 6), factorial(6));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), int(120));
        assert_eq!(binomial(3, 7), int(0));
        // C(3/2, 2) = (3/2)(1/2)/2 = 3/8
        assert_eq!(binomial_rat(&rat(3, 2), 2), rat(3, 8));
        // integer agreement
        assert_eq!(
            binomial_rat(&rat_int(9), 4),
            Rational::from_integer(binomial(9, 4))
        );
    }
}
