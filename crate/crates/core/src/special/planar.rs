//! The genus-zero (planar) restriction of the defining equation.
//!
//! Setting `s = 0` removes the quartic term and the `s`-parts of the two
//! sources, leaving a closed equation for the planar series `I₀`:
//!
//! ```text
//! Ω I₀ = ½ (Λ² I₀)² + t ν∘ Λ² I₀ + 2 t⁴ A Λ² I₀ + t⁵ (2ν∘A) + t⁸ (2A²)
//! ```
//!
//! [`planar_residual`] evaluates left minus right on a genus-zero series;
//! the solver's output must drive it to zero identically, while the zero
//! series leaves the `t⁵` source — a useful negative control, exposed by
//! the tests.  Planar all-white counts also admit the closed form checked
//! by [`check_white_counts`].

use crate::{Error, Result};
use crate::ops::{lambda_op, omega_op};
use crate::poly::{Monomial, Poly};
use crate::rational::rat;
use crate::series::TSeries;
use crate::solver::{coupling_polynomial, source_t5, source_t8, SolveState};
use crate::special::cubic;

/// The genus-zero slice of the solved series.
pub fn planar_series(state: &SolveState) -> TSeries {
    state.j_series().map(|_, p| p.s_slice(0))
}

/// Left minus right of the planar equation, valid through `trunc + 2`.
///
/// The input must be a genus-zero series (no `s` exponents); the equation
/// does not close otherwise.
pub fn planar_residual(planar: &TSeries) -> Result<TSeries> {
    for n in 0..=planar.trunc() {
        if planar.coeff(n)?.max_genus().unwrap_or(0) > 0 {
            return Err(Error::Verification(format!(
                "planar residual fed a positive-genus term at grade {n}"
            )));
        }
    }
    let window = planar.trunc() + 2;

    // Multiplication by t^k into the comparison window.
    let shift_into = |src: &TSeries, k: usize| -> Result<TSeries> {
        let mut coeffs = vec![Poly::zero(); window + 1];
        for (m, c) in coeffs.iter_mut().enumerate().skip(k) {
            *c = src.coeff(m - k)?.clone();
        }
        Ok(TSeries::from_coeffs(coeffs))
    };

    let lhs = omega_op().apply_series(planar).truncated(window)?;

    let lam2 = lambda_op().apply_series(&lambda_op().apply_series(planar));
    let square = lam2.mul(&lam2)?.truncated(window)?.scaled(&rat(1, 2));
    let linear_w = shift_into(&lam2.map(|_, p| p.shift_exponents(0, 1, 0)), 1)?;
    let coupling = coupling_polynomial();
    let linear_a = shift_into(
        &lam2.map(|_, p| p.mul_poly(&coupling).scaled(&rat(2, 1))),
        4,
    )?;

    let mut source = TSeries::zero(window);
    if window >= 5 {
        *source.coeff_mut(5)? = source_t5().s_slice(0);
    }
    if window >= 8 {
        *source.coeff_mut(8)? = source_t8().s_slice(0);
    }

    let mut rhs = square.add(&linear_w)?;
    rhs = rhs.add(&linear_a)?;
    rhs = rhs.add(&source)?;
    lhs.sub(&rhs)
}

/// Checks the planar all-white rooted counts against the closed form
/// `2·8ⁿ/((n+1)(n+2)) · C(3n/2, n)` for `1 ≤ n ≤ n_max`.
pub fn check_white_counts(state: &SolveState, n_max: usize) -> Result<()> {
    for n in 1..=n_max {
        let rooted = state.rooted_polynomial(n, 0)?;
        let got = rooted.coeff(Monomial::new(0, 3 * n as u16, 0));
        let want = cubic::planar_count(n as u64);
        if got != want {
            return Err(Error::Verification(format!(
                "planar all-white count differs at n = {n}: computed {got}, closed form {want}"
            )));
        }
    }
    Ok(())
}

/// Convenience wrapper: residual of the solver's own planar slice, which
/// must vanish identically on its window of validity.
pub fn check_planar_equation(state: &SolveState) -> Result<()> {
    let residual = planar_residual(&planar_series(state))?;
    for n in 0..=residual.trunc() {
        if !residual.coeff(n)?.is_zero() {
            return Err(Error::Verification(format!(
                "planar equation residual is nonzero at grade {n}"
            )));
        }
    }
    Ok(())
}
