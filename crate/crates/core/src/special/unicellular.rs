//! One-face (unicellular) cubic maps of maximal genus.
//!
//! A cubic map with `6g − 3` edges reaches genus at most `g`, and the maps
//! attaining the bound have a single face.  Their two-colour polynomials
//! `U_g` therefore sit at the top genus of the solved grade `6g − 3`, and
//! satisfy a self-contained first-order recursion: each `U_g` arises from
//! `U_{g−1}` by three applications of a rooted-growth operator, summed over
//! the two colours of the new branch,
//!
//! ```text
//! U_g = (Υ•³ + Υ∘³) U_{g−1} / (12 g),        U_1 = (ν•³ + ν∘³ + 2) / 6.
//! ```
//!
//! The module also carries eleven closed-form coefficient families (six at
//! the top of the degree range, five at the bottom) and the linear equation
//! `Ω U_g = Λ⁴ U_{g−1} / 12` that the family satisfies inside the full
//! defining equation.

use num_traits::{One, Zero};

use crate::{Error, Result};
use crate::ops::{lambda_apply, omega_apply, upsilon_bullet_op, upsilon_circ_op};
use crate::poly::{Monomial, Poly};
use crate::rational::{factorial, rat, rat_int, Int, Rational};

/// Grade (edge count) of `U_g`.
pub fn edge_count(g: usize) -> usize {
    6 * g - 3
}

/// `U_1 = (ν•³ + ν∘³ + 2) / 6`.
pub fn genus_one() -> Poly {
    Poly::from_terms([
        (Monomial::new(3, 0, 0), rat(1, 6)),
        (Monomial::new(0, 3, 0), rat(1, 6)),
        (Monomial::new(0, 0, 0), rat(1, 3)),
    ])
}

/// `U_1, …, U_{g_max}` by the growth recursion; `polys[g - 1]` is `U_g`.
pub fn one_face_polynomials(g_max: usize) -> Vec<Poly> {
    assert!(g_max >= 1, "the family starts at genus one");
    let (bullet, circ) = (upsilon_bullet_op(), upsilon_circ_op());
    let mut polys = vec![genus_one()];
    for g in 2..=g_max {
        let prev = polys.last().expect("previous genus present");
        // `U_{g−1}` lives at grade 6(g−1)−3; each operator application
        // raises the grade by two.
        let e = edge_count(g - 1);
        let grow = |op: &crate::ops::LinOp| {
            op.apply_graded(e + 4, &op.apply_graded(e + 2, &op.apply_graded(e, prev)))
        };
        let mut next = grow(&bullet);
        next.add_scaled(&grow(&circ), &Rational::one());
        polys.push(next.scaled(&rat(1, 12 * g as i64)));
    }
    polys
}

/// `1/k!`, extended by zero to negative arguments — the natural convention
/// for the closed forms below, where a vanishing reciprocal factorial kills
/// a family that has not started yet.
fn recip_factorial(k: i64) -> Rational {
    if k < 0 {
        Rational::zero()
    } else {
        Rational::from_integer(factorial(k as u64)).recip()
    }
}

/// `k!` for arguments known to be nonnegative.
fn fact(k: i64) -> Rational {
    assert!(k >= 0, "factorial of negative argument {k}");
    Rational::from_integer(factorial(k as u64))
}

/// Exact `3^k` for possibly negative `k`.
fn pow3(k: i64) -> Rational {
    let p = Rational::from_integer(num_traits::pow(Int::from(3), k.unsigned_abs() as usize));
    if k < 0 {
        p.recip()
    } else {
        p
    }
}

/// Exact `12^g`.
fn pow12(g: i64) -> Rational {
    Rational::from_integer(num_traits::pow(Int::from(12), g as usize))
}

/// The six coefficient values at the top of the degree range of `U_g`
/// (`g ≥ 2`), keyed by monomial `(a, b)`: the extreme coefficient
/// `[ν•^{3n}]` (and its colour mirror), then the five nearest companions on
/// the white side.  Here `n = 2g − 1`.
pub fn top_family(g: usize) -> Vec<((u16, u16), Rational)> {
    assert!(g >= 2);
    let n = (2 * g - 1) as u16;
    let gi = g as i64;
    let top = fact(6 * gi - 4) / (pow12(gi) * fact(gi) * fact(3 * gi - 2));
    let v2 = rat(2, 3) * fact(6 * gi - 3) / (pow12(gi) * fact(gi) * fact(3 * gi - 2));
    let v3 = rat_int(6) * fact(6 * gi - 6) / (pow12(gi) * fact(gi - 1) * fact(3 * gi - 3));
    let v4 = rat_int(6 * (12 * gi * gi - 18 * gi + 5)) * fact(6 * gi - 6)
        / (pow12(gi) * fact(gi) * fact(3 * gi - 3));
    let v5 = rat_int(2 * (4 * gi - 5) * (12 * gi * gi - 19 * gi + 6)) * fact(6 * gi - 6)
        / (pow12(gi) * fact(gi) * fact(3 * gi - 3));
    vec![
        ((3 * n, 0), top.clone()),
        ((0, 3 * n), top),
        ((3 * n - 2, 1), Rational::zero()),
        ((3 * n - 3, 0), v2),
        ((3 * n - 4, 2), v3),
        ((3 * n - 5, 1), v4),
        ((3 * n - 6, 0), v5),
    ]
}

/// The five coefficient values at the bottom of the degree range of `U_g`
/// (`g ≥ 2`), keyed by monomial `(a, b)`.
///
/// The constant term follows one hypergeometric family; the other four
/// follow families whose natural index sits one genus higher, so they are
/// evaluated at `g + 1`.
pub fn bottom_family(g: usize) -> Vec<((u16, u16), Rational)> {
    assert!(g >= 2);
    let gi = g as i64;

    let b1 = |y: i64| {
        rat_int(2)
            * fact(3 * y - 2)
            * fact(2 * y - 3)
            * recip_factorial(y)
            * recip_factorial(y - 1)
            * recip_factorial(y - 2)
            / pow3(y)
    };
    let b2 = |y: i64| {
        rat(3 * y - 5, 4)
            * fact(3 * y - 4)
            * fact(2 * y - 3)
            * recip_factorial(y - 1)
            * recip_factorial(y - 2)
            * recip_factorial(y - 2)
            / pow3(y - 1)
    };
    let b3 = |y: i64| {
        rat(1, 2)
            * fact(3 * y - 5)
            * fact(2 * y - 3)
            * recip_factorial(y - 1)
            * recip_factorial(y - 2)
            * recip_factorial(y - 3)
            * pow3(3 - y)
    };
    let b4 = |y: i64| {
        rat(18 * y * y * y - 75 * y * y + 75 * y - 2, 32)
            * fact(3 * y - 4)
            * fact(2 * y - 3)
            * recip_factorial(y)
            * recip_factorial(y - 2)
            * recip_factorial(y - 3)
            / pow3(y - 2)
    };
    let b5 = |y: i64| {
        rat(54 * y * y * y - 225 * y * y + 231 * y - 4, 16)
            * fact(3 * y - 5)
            * fact(2 * y - 3)
            * recip_factorial(y)
            * recip_factorial(y - 2)
            * recip_factorial(y - 3)
            / pow3(y - 2)
    };

    vec![
        ((0, 0), b1(gi)),
        ((0, 3), b2(gi + 1)),
        ((1, 1), b3(gi + 1)),
        ((1, 4), b4(gi + 1)),
        ((2, 2), b5(gi + 1)),
    ]
}

/// Checks every closed-form coefficient of `U_g` (`g ≥ 2`) against the
/// polynomial, both colour orientations included.
pub fn check_closed_forms(u: &Poly, g: usize) -> Result<()> {
    let mut expected = top_family(g);
    expected.extend(bottom_family(g));
    for ((a, b), want) in expected {
        for (a, b) in [(a, b), (b, a)] {
            let got = u.coeff(Monomial::new(a, b, 0));
            if got != want {
                return Err(Error::Verification(format!(
                    "one-face closed form fails at genus {g}, monomial \
                     nu_b^{a} nu_w^{b}: computed {got}, closed form {want}"
                )));
            }
        }
    }
    Ok(())
}

/// Checks the linear equation tying consecutive members of the family:
/// `Ω U_1 = ν∘⁵ + 2ν∘² + ν•` and, for `g ≥ 2`,
/// `Ω U_g = Λ⁴ U_{g−1} / 12` (operators applied at the family's grades).
pub fn check_linear_equation(prev: Option<&Poly>, u: &Poly, g: usize) -> Result<()> {
    let lhs = omega_apply(edge_count(g), u);
    let rhs = match (g, prev) {
        (1, _) => Poly::from_terms([
            (Monomial::new(0, 5, 0), Rational::one()),
            (Monomial::new(0, 2, 0), rat_int(2)),
            (Monomial::new(1, 0, 0), Rational::one()),
        ]),
        (_, Some(prev)) => {
            let e = edge_count(g - 1);
            let mut quartic = prev.clone();
            for step in 0..4 {
                quartic = lambda_apply(e + 2 * step, &quartic);
            }
            quartic.scaled(&rat(1, 12))
        }
        (_, None) => {
            return Err(Error::Verification(format!(
                "genus {g} needs the genus-{} polynomial for its linear equation",
                g - 1
            )))
        }
    };
    let mut residual = lhs;
    residual.add_scaled(&rhs, &-Rational::one());
    if residual.is_zero() {
        Ok(())
    } else {
        Err(Error::Verification(format!(
            "one-face linear equation fails at genus {g}"
        )))
    }
}
