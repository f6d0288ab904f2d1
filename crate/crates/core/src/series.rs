//! Truncated power series in the edge-counting variable `t` with
//! polynomial coefficients.
//!
//! # Key Operations
//!
//! [`TSeries`] stores the coefficients of `t^0 .. t^trunc`; each
//! coefficient is a [`Poly`] in the vertex weights and the genus marker.
//! Supported: ring arithmetic up to the common truncation order, scalar
//! multiples, multiplication by powers of `t`, and slice access with a
//! typed error when an order past the truncation is requested.
//!
//! # Design Notes
//!
//! * Arithmetic demands *equal* truncation orders and fails loudly
//!   otherwise ([`Error::TruncationMismatch`]); silently taking the
//!   minimum hides dropped tails, which has historically been the
//!   hardest class of series bug to catch.
//! * Products are plain Cauchy convolutions; the series appearing in the
//!   consistency residuals are short enough that no transform-based
//!   multiplication is warranted.

use crate::poly::Poly;
use crate::rational::Rational;
use crate::{Error, Result};

/// Polynomial-coefficient power series truncated at `t^trunc` (inclusive).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSeries {
    trunc: usize,
    coeffs: Vec<Poly>,
}

impl TSeries {
    /// The zero series truncated at `t^trunc`.
    pub fn zero(trunc: usize) -> Self {
        TSeries {
            trunc,
            coeffs: vec![Poly::zero(); trunc + 1],
        }
    }

    /// Builds a series from coefficients `c[0], c[1], ..`; the truncation
    /// order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<Poly>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the t^0 slot");
        TSeries {
            trunc: coeffs.len() - 1,
            coeffs,
        }
    }

    /// Truncation order (largest retained power of `t`).
    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// Coefficient of `t^n`, or an error past the truncation.
    pub fn coeff(&self, n: usize) -> Result<&Poly> {
        self.coeffs.get(n).ok_or(Error::GradeOutOfRange {
            grade: n,
            trunc: self.trunc,
        })
    }

    /// Mutable coefficient of `t^n`.
    pub fn coeff_mut(&mut self, n: usize) -> Result<&mut Poly> {
        let trunc = self.trunc;
        self.coeffs.get_mut(n).ok_or(Error::GradeOutOfRange {
            grade: n,
            trunc,
        })
    }

    /// All coefficients, lowest order first.
    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// True when every retained coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// Lowest order with a nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|p| !p.is_zero())
    }

    /// Copy truncated to a (weakly) smaller order.
    pub fn truncated(&self, trunc: usize) -> Result<TSeries> {
        if trunc > self.trunc {
            return Err(Error::GradeOutOfRange {
                grade: trunc,
                trunc: self.trunc,
            });
        }
        Ok(TSeries {
            trunc,
            coeffs: self.coeffs[..=trunc].to_vec(),
        })
    }

    fn check_trunc(&self, other: &TSeries) -> Result<()> {
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch(self.trunc, other.trunc));
        }
        Ok(())
    }

    /// `self + other` (equal truncations required).
    pub fn add(&self, other: &TSeries) -> Result<TSeries> {
        self.check_trunc(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(p, q)| p + q)
            .collect();
        Ok(TSeries {
            trunc: self.trunc,
            coeffs,
        })
    }

    /// `self - other` (equal truncations required).
    pub fn sub(&self, other: &TSeries) -> Result<TSeries> {
        self.check_trunc(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(p, q)| p - q)
            .collect();
        Ok(TSeries {
            trunc: self.trunc,
            coeffs,
        })
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &TSeries) -> Result<TSeries> {
        self.check_trunc(other)?;
        let mut out = TSeries::zero(self.trunc);
        for (i, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in other.coeffs.iter().take(self.trunc + 1 - i).enumerate() {
                if q.is_zero() {
                    continue;
                }
                let prod = p * q;
                out.coeffs[i + j].add_scaled(&prod, &num_traits::One::one());
            }
        }
        Ok(out)
    }

    /// `scale * self`.
    pub fn scaled(&self, scale: &Rational) -> TSeries {
        TSeries {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|p| p.scaled(scale)).collect(),
        }
    }

    /// Per-coefficient map (e.g. a derivation applied slice by slice).
    pub fn map<F: Fn(usize, &Poly) -> Poly>(&self, f: F) -> TSeries {
        TSeries {
            trunc: self.trunc,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, p)| f(n, p))
                .collect(),
        }
    }

    /// Multiplies by `t^k`, keeping the truncation order (the top `k`
    /// coefficients fall off the retained window only if they are zero;
    /// otherwise this errors, because dropping them would silently lose
    /// information).
    pub fn shifted_t(&self, k: usize) -> Result<TSeries> {
        if k == 0 {
            return Ok(self.clone());
        }
        for (n, p) in self.coeffs.iter().enumerate().rev().take(k) {
            if !p.is_zero() {
                return Err(Error::GradeOutOfRange {
                    grade: n + k,
                    trunc: self.trunc,
                });
            }
        }
        let mut coeffs = vec![Poly::zero(); self.trunc + 1];
        for (n, p) in self.coeffs.iter().enumerate() {
            if n + k <= self.trunc {
                coeffs[n + k] = p.clone();
            }
        }
        Ok(TSeries {
            trunc: self.trunc,
            coeffs,
        })
    }

    /// The `t`-degree scaling `t d/dt` (multiplies `t^n` by `n`).
    pub fn euler_t(&self) -> TSeries {
        self.map(|n, p| p.scaled(&Rational::from_integer(n.into())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use crate::rational::{rat_int, Rational};
    use crate::testing::{random_poly, SplitMix64};

    fn series_of(polys: Vec<Poly>) -> TSeries {
        TSeries::from_coeffs(polys)
    }

    #[test]
    fn coeff_past_truncation_is_an_error() {
        let s = TSeries::zero(3);
        assert!(s.coeff(3).is_ok());
        assert!(matches!(
            s.coeff(4),
            Err(Error::GradeOutOfRange { grade: 4, trunc: 3 })
        ));
    }

    #[test]
    fn mismatched_truncations_refuse_arithmetic() {
        let a = TSeries::zero(3);
        let b = TSeries::zero(4);
        assert!(matches!(
            a.add(&b),
            Err(Error::TruncationMismatch(3, 4))
        ));
        assert!(matches!(
            a.mul(&b),
            Err(Error::TruncationMismatch(3, 4))
        ));
    }

    #[test]
    fn product_matches_schoolbook_convolution() {
        let mut rng = SplitMix64::new(0xBEEF_0001);
        let trunc = 6;
        let a = series_of((0..=trunc).map(|_| random_poly(&mut rng, 3, 2, 3)).collect());
        let b = series_of((0..=trunc).map(|_| random_poly(&mut rng, 3, 2, 3)).collect());
        let prod = a.mul(&b).unwrap();
        for n in 0..=trunc {
            let mut expect = Poly::zero();
            for i in 0..=n {
                expect.add_scaled(
                    &(a.coeff(i).unwrap() * b.coeff(n - i).unwrap()),
                    &Rational::from_integer(1.into()),
                );
            }
            assert_eq!(prod.coeff(n).unwrap(), &expect);
        }
    }

    #[test]
    fn shift_preserves_information_or_errors() {
        let mut s = TSeries::zero(4);
        *s.coeff_mut(1).unwrap() = Poly::constant(rat_int(5));
        let shifted = s.shifted_t(2).unwrap();
        assert_eq!(shifted.coeff(3).unwrap(), &Poly::constant(rat_int(5)));
        assert!(shifted.coeff(1).unwrap().is_zero());
        // shifting t^1 term by 4 would push it past t^4
        assert!(s.shifted_t(4).is_err());
    }

    #[test]
    fn euler_t_scales_each_grade() {
        let mut s = TSeries::zero(3);
        *s.coeff_mut(0).unwrap() = Poly::constant(rat_int(7));
        *s.coeff_mut(3).unwrap() = Poly::monomial(Monomial::new(1, 0, 0), rat_int(2));
        let e = s.euler_t();
        assert!(e.coeff(0).unwrap().is_zero());
        assert_eq!(
            e.coeff(3).unwrap(),
            &Poly::monomial(Monomial::new(1, 0, 0), rat_int(6))
        );
    }
}
