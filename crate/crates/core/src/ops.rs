//! The differential operators acting on the generating series.
//!
//! # Key Operations
//!
//! Three operators drive everything:
//!
//! * `Lambda` — the first-order "insertion" operator
//!   `2 t^2 ((nu_w^2 + nu_b) D_t + nu_w (1 - nu_b nu_w) d/d nu_b
//!   + (1 - nu_b nu_w) d/d nu_w)`;
//! * `Omega` — the second-order operator
//!   `(1/3)(D_t + D_w - D_b - 1) Lambda - (t nu_w D_t + t (1 - nu_b nu_w)
//!   d/d nu_b)^2`, the left-hand side of the defining equation;
//! * `Upsilon` (one per colour) — the operators generating one-face maps
//!   of successive genera.
//!
//! Each is available in two independent shapes, which the tests play
//! against each other:
//!
//! * [`LinOp`] — a flat sum of [`OpTerm`]s (polynomial factor times a
//!   word of basic derivations, times a power of `t`), obtained by
//!   commuting all `t`-powers to the left by hand; good for applying to
//!   whole series.
//! * Direct graded appliers ([`lambda_apply`], [`omega_apply`], ...) —
//!   the operator evaluated on a single `t`-grade with the grade passed
//!   explicitly; these mirror the factored form of the definition.
//!
//! # Design Notes
//!
//! * On a `t^n`-graded piece, `D_t` is just multiplication by `n`; the
//!   flat form exploits this, so an [`OpTerm`] word is a list of
//!   grade-preserving maps applied right to left at fixed input grade,
//!   after which the `t`-shift moves the result up.
//! * Integer twins ([`lambda_apply_int`], [`omega12_apply_int`]) act on
//!   the solver's rescaled integer series; `12 * Omega` has integer
//!   coefficients, which is why the factor 12 appears.

use crate::poly::{IntPoly, Monomial, Poly};
use crate::rational::{rat, Int, Rational};
use crate::series::TSeries;
use num_traits::One;

/// Builds a small polynomial from `(a, b, g, coefficient)` rows.
fn poly_of(rows: &[(u16, u16, u16, i64)]) -> Poly {
    Poly::from_terms(
        rows.iter()
            .map(|&(a, b, g, c)| (Monomial::new(a, b, g), rat(c, 1))),
    )
}

/// One basic derivation on the weight variables (all grade-preserving).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Derivation {
    /// Multiplication by the `t`-grade of the input.
    Dt,
    /// Euler derivation `nu_b d/d nu_b`.
    DBullet,
    /// Euler derivation `nu_w d/d nu_w`.
    DCirc,
    /// Plain derivative `d/d nu_b`.
    PartialBullet,
    /// Plain derivative `d/d nu_w`.
    PartialCirc,
}

impl Derivation {
    fn apply(self, grade: usize, p: &Poly) -> Poly {
        match self {
            Derivation::Dt => p.scaled(&Rational::from_integer(grade.into())),
            Derivation::DBullet => p.euler_b(),
            Derivation::DCirc => p.euler_w(),
            Derivation::PartialBullet => p.partial_b(),
            Derivation::PartialCirc => p.partial_w(),
        }
    }
}

/// `factor * word`, where the word is applied right to left (the last
/// entry acts first) at the input grade.
#[derive(Clone, Debug)]
pub struct OpTerm {
    pub factor: Poly,
    pub word: Vec<Derivation>,
}

/// A linear operator `t^tshift * sum of OpTerms`.
#[derive(Clone, Debug)]
pub struct LinOp {
    tshift: usize,
    terms: Vec<OpTerm>,
}

impl LinOp {
    fn new(tshift: usize, terms: Vec<OpTerm>) -> Self {
        LinOp { tshift, terms }
    }

    /// The uniform `t`-power every term carries.
    pub fn tshift(&self) -> usize {
        self.tshift
    }

    /// Applies to a single graded piece; the result lives at
    /// `grade + tshift`.
    pub fn apply_graded(&self, grade: usize, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for term in &self.terms {
            let mut q = p.clone();
            for d in term.word.iter().rev() {
                q = d.apply(grade, &q);
                if q.is_zero() {
                    break;
                }
            }
            if q.is_zero() {
                continue;
            }
            out.add_scaled(&term.factor.mul_poly(&q), &Rational::one());
        }
        out
    }

    /// Applies to a whole series; the truncation order grows by
    /// `tshift`, so nothing is dropped.
    pub fn apply_series(&self, series: &TSeries) -> TSeries {
        let mut out = TSeries::zero(series.trunc() + self.tshift);
        for (n, p) in series.coeffs().iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            *out.coeff_mut(n + self.tshift).expect("within truncation") =
                self.apply_graded(n, p);
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Lambda
// ---------------------------------------------------------------------------

/// Coefficient of `D_t` in `Lambda / t^2`: `2 (nu_w^2 + nu_b)`.
fn lambda_f1() -> Poly {
    poly_of(&[(0, 2, 0, 2), (1, 0, 0, 2)])
}

/// Coefficient of `d/d nu_b`: `2 nu_w (1 - nu_b nu_w)`.
fn lambda_f2() -> Poly {
    poly_of(&[(0, 1, 0, 2), (1, 2, 0, -2)])
}

/// Coefficient of `d/d nu_w`: `2 (1 - nu_b nu_w)`.
fn lambda_f3() -> Poly {
    poly_of(&[(0, 0, 0, 2), (1, 1, 0, -2)])
}

/// `Lambda` as a flat operator (three terms, `t`-shift 2).
pub fn lambda_op() -> LinOp {
    LinOp::new(
        2,
        vec![
            OpTerm {
                factor: lambda_f1(),
                word: vec![Derivation::Dt],
            },
            OpTerm {
                factor: lambda_f2(),
                word: vec![Derivation::PartialBullet],
            },
            OpTerm {
                factor: lambda_f3(),
                word: vec![Derivation::PartialCirc],
            },
        ],
    )
}

/// `Lambda` in the equivalent grouped form
/// `2 t^2 (nu_w^2 (D_t - D_b) + nu_b (D_t - D_w) + nu_w d/d nu_b + d/d nu_w)`;
/// the identity `D_b = nu_b d/d nu_b` makes this the same operator, and a
/// test keeps the two transcriptions honest against each other.
pub fn lambda_grouped_op() -> LinOp {
    LinOp::new(
        2,
        vec![
            OpTerm {
                factor: poly_of(&[(0, 2, 0, 2)]),
                word: vec![Derivation::Dt],
            },
            OpTerm {
                factor: poly_of(&[(0, 2, 0, -2)]),
                word: vec![Derivation::DBullet],
            },
            OpTerm {
                factor: poly_of(&[(1, 0, 0, 2)]),
                word: vec![Derivation::Dt],
            },
            OpTerm {
                factor: poly_of(&[(1, 0, 0, -2)]),
                word: vec![Derivation::DCirc],
            },
            OpTerm {
                factor: poly_of(&[(0, 1, 0, 2)]),
                word: vec![Derivation::PartialBullet],
            },
            OpTerm {
                factor: poly_of(&[(0, 0, 0, 2)]),
                word: vec![Derivation::PartialCirc],
            },
        ],
    )
}

/// `Lambda` on a `t^grade` piece, directly from the factored definition.
/// The result lives at grade `grade + 2`.
pub fn lambda_apply(grade: usize, p: &Poly) -> Poly {
    let mut out = lambda_f1().mul_poly(&p.scaled(&Rational::from_integer(grade.into())));
    out.add_scaled(&lambda_f2().mul_poly(&p.partial_b()), &Rational::one());
    out.add_scaled(&lambda_f3().mul_poly(&p.partial_w()), &Rational::one());
    out
}

// ---------------------------------------------------------------------------
// Omega
// ---------------------------------------------------------------------------

/// `Omega` as a flat operator, expanded term by term from
/// `(1/3)(D_t + D_w - D_b - 1) Lambda - S^2` with
/// `S = t nu_w D_t + t (1 - nu_b nu_w) d/d nu_b`, commuting every power
/// of `t` to the front (`D_t t^2 = t^2 (D_t + 2)`).
pub fn omega_op() -> LinOp {
    let f = [lambda_f1(), lambda_f2(), lambda_f3()];
    let d = [
        Derivation::Dt,
        Derivation::PartialBullet,
        Derivation::PartialCirc,
    ];
    // Euler derivatives of the Lambda coefficients.
    let dw_f = [
        poly_of(&[(0, 2, 0, 4)]),                 // D_w f1 = 4 nu_w^2
        poly_of(&[(0, 1, 0, 2), (1, 2, 0, -4)]), // D_w f2 = 2 nu_w - 4 nu_b nu_w^2
        poly_of(&[(1, 1, 0, -2)]),                // D_w f3 = -2 nu_b nu_w
    ];
    let db_f = [
        poly_of(&[(1, 0, 0, 2)]),   // D_b f1 = 2 nu_b
        poly_of(&[(1, 2, 0, -2)]), // D_b f2 = -2 nu_b nu_w^2
        poly_of(&[(1, 1, 0, -2)]), // D_b f3 = -2 nu_b nu_w
    ];

    let third = rat(1, 3);
    let two_thirds = rat(2, 3);
    let minus_third = rat(-1, 3);

    let mut terms = Vec::new();

    // (1/3) D_t Lambda = t^2 ((1/3) D_t + 2/3) (sum f_k d_k)
    for k in 0..3 {
        terms.push(OpTerm {
            factor: f[k].scaled(&third),
            word: vec![d[k], Derivation::Dt],
        });
        terms.push(OpTerm {
            factor: f[k].scaled(&two_thirds),
            word: vec![d[k]],
        });
    }
    // (1/3) D_w Lambda: product rule on the factor, then the word.
    for k in 0..3 {
        terms.push(OpTerm {
            factor: dw_f[k].scaled(&third),
            word: vec![d[k]],
        });
        terms.push(OpTerm {
            factor: f[k].scaled(&third),
            word: vec![Derivation::DCirc, d[k]],
        });
    }
    // -(1/3) D_b Lambda
    for k in 0..3 {
        terms.push(OpTerm {
            factor: db_f[k].scaled(&minus_third),
            word: vec![d[k]],
        });
        terms.push(OpTerm {
            factor: f[k].scaled(&minus_third),
            word: vec![Derivation::DBullet, d[k]],
        });
    }
    // -(1/3) Lambda
    for k in 0..3 {
        terms.push(OpTerm {
            factor: f[k].scaled(&minus_third),
            word: vec![d[k]],
        });
    }

    // -S^2 with S = t nu_w D_t + t (1 - nu_b nu_w) d/d nu_b.
    let nu_w2 = poly_of(&[(0, 2, 0, 1)]);
    let nu_w_q = poly_of(&[(0, 1, 0, 1), (1, 2, 0, -1)]); // nu_w (1 - nu_b nu_w)
    let q_sq = poly_of(&[(0, 0, 0, 1), (1, 1, 0, -2), (2, 2, 0, 1)]); // (1 - nu_b nu_w)^2
    let neg = |p: &Poly| p.scaled(&-Rational::one());

    // (t nu_w D_t)^2 -> nu_w^2 (n^2 + n)
    terms.push(OpTerm {
        factor: neg(&nu_w2),
        word: vec![Derivation::Dt, Derivation::Dt],
    });
    terms.push(OpTerm {
        factor: neg(&nu_w2),
        word: vec![Derivation::Dt],
    });
    // t nu_w D_t . t (1-P) d_b -> nu_w (1-P) (n+1) d_b
    terms.push(OpTerm {
        factor: neg(&nu_w_q),
        word: vec![Derivation::Dt, Derivation::PartialBullet],
    });
    terms.push(OpTerm {
        factor: neg(&nu_w_q),
        word: vec![Derivation::PartialBullet],
    });
    // t (1-P) d_b . t nu_w D_t -> nu_w (1-P) n d_b
    terms.push(OpTerm {
        factor: neg(&nu_w_q),
        word: vec![Derivation::PartialBullet, Derivation::Dt],
    });
    // t (1-P) d_b . t (1-P) d_b -> (1-P)(-nu_w) d_b + (1-P)^2 d_b^2
    terms.push(OpTerm {
        factor: nu_w_q.clone(),
        word: vec![Derivation::PartialBullet],
    });
    terms.push(OpTerm {
        factor: neg(&q_sq),
        word: vec![Derivation::PartialBullet, Derivation::PartialBullet],
    });

    LinOp::new(2, terms)
}

/// `Omega` on a `t^grade` piece, straight from the factored definition:
/// apply `Lambda`, then `(1/3)(D_t + D_w - D_b - 1)` at the shifted
/// grade, and subtract the square of `S` applied twice.  Independent of
/// [`omega_op`]'s expansion.  The result lives at grade `grade + 2`.
pub fn omega_apply(grade: usize, p: &Poly) -> Poly {
    let n = Rational::from_integer(grade.into());
    // inner = Lambda(p) / (2 t^2)
    let mut inner = poly_of(&[(0, 2, 0, 1), (1, 0, 0, 1)])
        .mul_poly(&p.scaled(&n));
    inner.add_scaled(
        &poly_of(&[(0, 1, 0, 1), (1, 2, 0, -1)]).mul_poly(&p.partial_b()),
        &Rational::one(),
    );
    inner.add_scaled(
        &poly_of(&[(0, 0, 0, 1), (1, 1, 0, -1)]).mul_poly(&p.partial_w()),
        &Rational::one(),
    );

    // first = (2/3) ((n+1) inner + D_w inner - D_b inner)
    let mut first = inner.scaled(&(&n + Rational::one()));
    first.add_scaled(&inner.euler_w(), &Rational::one());
    first.add_scaled(&inner.euler_b(), &-Rational::one());
    let first = first.scaled(&rat(2, 3));

    // S on grade n, then S again on grade n + 1.
    let q = poly_of(&[(0, 0, 0, 1), (1, 1, 0, -1)]); // 1 - nu_b nu_w
    let nu_w = poly_of(&[(0, 1, 0, 1)]);
    let mut s1 = nu_w.mul_poly(&p.scaled(&n));
    s1.add_scaled(&q.mul_poly(&p.partial_b()), &Rational::one());
    let mut s2 = nu_w.mul_poly(&s1.scaled(&(&n + Rational::one())));
    s2.add_scaled(&q.mul_poly(&s1.partial_b()), &Rational::one());

    &first - &s2
}

// ---------------------------------------------------------------------------
// Upsilon (one-face map generators)
// ---------------------------------------------------------------------------

/// The white-rooted `Upsilon`:
/// `2 t^2 ((nu_b + nu_w^2)(D_t - D_w - D_b) + (nu_b^2 + nu_w) d/d nu_b
/// + (1 + nu_w^3) d/d nu_w)`.
pub fn upsilon_circ_op() -> LinOp {
    let c1 = poly_of(&[(1, 0, 0, 2), (0, 2, 0, 2)]); // 2 (nu_b + nu_w^2)
    LinOp::new(
        2,
        vec![
            OpTerm {
                factor: c1.clone(),
                word: vec![Derivation::Dt],
            },
            OpTerm {
                factor: c1.scaled(&-Rational::one()),
                word: vec![Derivation::DCirc],
            },
            OpTerm {
                factor: c1.scaled(&-Rational::one()),
                word: vec![Derivation::DBullet],
            },
            OpTerm {
                factor: poly_of(&[(2, 0, 0, 2), (0, 1, 0, 2)]), // 2 (nu_b^2 + nu_w)
                word: vec![Derivation::PartialBullet],
            },
            OpTerm {
                factor: poly_of(&[(0, 0, 0, 2), (0, 3, 0, 2)]), // 2 (1 + nu_w^3)
                word: vec![Derivation::PartialCirc],
            },
        ],
    )
}

/// The black-rooted `Upsilon` — the colour swap of [`upsilon_circ_op`].
pub fn upsilon_bullet_op() -> LinOp {
    let c1 = poly_of(&[(0, 1, 0, 2), (2, 0, 0, 2)]); // 2 (nu_w + nu_b^2)
    LinOp::new(
        2,
        vec![
            OpTerm {
                factor: c1.clone(),
                word: vec![Derivation::Dt],
            },
            OpTerm {
                factor: c1.scaled(&-Rational::one()),
                word: vec![Derivation::DBullet],
            },
            OpTerm {
                factor: c1.scaled(&-Rational::one()),
                word: vec![Derivation::DCirc],
            },
            OpTerm {
                factor: poly_of(&[(0, 2, 0, 2), (1, 0, 0, 2)]), // 2 (nu_w^2 + nu_b)
                word: vec![Derivation::PartialCirc],
            },
            OpTerm {
                factor: poly_of(&[(0, 0, 0, 2), (3, 0, 0, 2)]), // 2 (1 + nu_b^3)
                word: vec![Derivation::PartialBullet],
            },
        ],
    )
}

// ---------------------------------------------------------------------------
// Integer twins for the solver's rescaled series
// ---------------------------------------------------------------------------

fn int_poly_of(rows: &[(u16, u16, u16, i64)]) -> IntPoly {
    let mut p = IntPoly::zero();
    for &(a, b, g, c) in rows {
        p.add_term(Monomial::new(a, b, g), Int::from(c));
    }
    p
}

fn euler_b_int(p: &IntPoly) -> IntPoly {
    let mut out = IntPoly::zero();
    for (m, c) in p.terms.iter() {
        if m.a > 0 {
            out.add_term(*m, c * Int::from(m.a));
        }
    }
    out
}

fn euler_w_int(p: &IntPoly) -> IntPoly {
    let mut out = IntPoly::zero();
    for (m, c) in p.terms.iter() {
        if m.b > 0 {
            out.add_term(*m, c * Int::from(m.b));
        }
    }
    out
}

fn partial_b_int(p: &IntPoly) -> IntPoly {
    let mut out = IntPoly::zero();
    for (m, c) in p.terms.iter() {
        if m.a > 0 {
            out.add_term(Monomial::new(m.a - 1, m.b, m.g), c * Int::from(m.a));
        }
    }
    out
}

fn partial_w_int(p: &IntPoly) -> IntPoly {
    let mut out = IntPoly::zero();
    for (m, c) in p.terms.iter() {
        if m.b > 0 {
            out.add_term(Monomial::new(m.a, m.b - 1, m.g), c * Int::from(m.b));
        }
    }
    out
}

/// Integer `Lambda` on a `t^grade` piece (the operator has integer
/// coefficients, so no scaling is needed).
pub(crate) fn lambda_apply_int(grade: usize, p: &IntPoly) -> IntPoly {
    let mut out = int_poly_of(&[(0, 2, 0, 2), (1, 0, 0, 2)])
        .mul_poly(&p.scaled(&Int::from(grade)));
    out.add_scaled(
        &int_poly_of(&[(0, 1, 0, 2), (1, 2, 0, -2)]).mul_poly(&partial_b_int(p)),
        &Int::one(),
    );
    out.add_scaled(
        &int_poly_of(&[(0, 0, 0, 2), (1, 1, 0, -2)]).mul_poly(&partial_w_int(p)),
        &Int::one(),
    );
    out
}

/// `12 * Omega` on a `t^grade` piece with integer coefficients:
/// `8 ((n+1) inner + D_w inner - D_b inner) - 12 s2`, where `inner` is
/// `Lambda / (2 t^2)` and `s2` the iterated `S` as in [`omega_apply`].
pub(crate) fn omega12_apply_int(grade: usize, p: &IntPoly) -> IntPoly {
    let n = Int::from(grade);
    let mut inner = int_poly_of(&[(0, 2, 0, 1), (1, 0, 0, 1)]).mul_poly(&p.scaled(&n));
    inner.add_scaled(
        &int_poly_of(&[(0, 1, 0, 1), (1, 2, 0, -1)]).mul_poly(&partial_b_int(p)),
        &Int::one(),
    );
    inner.add_scaled(
        &int_poly_of(&[(0, 0, 0, 1), (1, 1, 0, -1)]).mul_poly(&partial_w_int(p)),
        &Int::one(),
    );

    let mut first = inner.scaled(&(&n + Int::one()));
    first.add_scaled(&euler_w_int(&inner), &Int::one());
    first.add_scaled(&euler_b_int(&inner), &-Int::one());

    let q = int_poly_of(&[(0, 0, 0, 1), (1, 1, 0, -1)]);
    let nu_w = int_poly_of(&[(0, 1, 0, 1)]);
    let mut s1 = nu_w.mul_poly(&p.scaled(&n));
    s1.add_scaled(&q.mul_poly(&partial_b_int(p)), &Int::one());
    let mut s2 = nu_w.mul_poly(&s1.scaled(&(&n + Int::one())));
    s2.add_scaled(&q.mul_poly(&partial_b_int(&s1)), &Int::one());

    let mut out = first.scaled(&Int::from(8));
    out.add_scaled(&s2, &Int::from(-12));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{random_int_poly, random_poly, SplitMix64};

    fn nu_b_pow(k: u16) -> Poly {
        Poly::monomial(Monomial::new(k, 0, 0), rat(1, 1))
    }

    fn nu_w_pow(k: u16) -> Poly {
        Poly::monomial(Monomial::new(0, k, 0), rat(1, 1))
    }

    #[test]
    fn lambda_on_cubed_white_weight() {
        // Lambda(t^3 nu_w^3): the D_t part contributes
        // 6 nu_w^5 + 6 nu_b nu_w^3, the d/d nu_w part 6 nu_w^2 - 6 nu_b nu_w^3;
        // the mixed terms cancel, leaving t^5 (6 nu_w^5 + 6 nu_w^2).
        let got = lambda_apply(3, &nu_w_pow(3));
        let expect = poly_of(&[(0, 5, 0, 6), (0, 2, 0, 6)]);
        assert_eq!(got, expect);
    }

    #[test]
    fn lambda_flat_and_grouped_forms_agree() {
        let mut rng = SplitMix64::new(0x0D5_0001);
        let (a, b) = (lambda_op(), lambda_grouped_op());
        for grade in 0..7 {
            let p = random_poly(&mut rng, 5, 3, 6);
            assert_eq!(a.apply_graded(grade, &p), b.apply_graded(grade, &p));
        }
    }

    #[test]
    fn lambda_flat_matches_direct() {
        let mut rng = SplitMix64::new(0x0D5_0002);
        let op = lambda_op();
        for grade in 0..7 {
            let p = random_poly(&mut rng, 5, 3, 6);
            assert_eq!(op.apply_graded(grade, &p), lambda_apply(grade, &p));
        }
    }

    #[test]
    fn omega_flat_matches_direct() {
        let mut rng = SplitMix64::new(0x0D5_0003);
        let op = omega_op();
        for grade in 0..9 {
            let p = random_poly(&mut rng, 5, 3, 8);
            assert_eq!(
                op.apply_graded(grade, &p),
                omega_apply(grade, &p),
                "grade {grade}"
            );
        }
    }

    #[test]
    fn omega_kernel_elements() {
        // Omega annihilates the first three odd-grade kernel elements:
        // nu_b at grade 1, 1 + nu_b^3 at grade 3,
        // nu_b^5 + 2 nu_b^2 + nu_w at grade 5.
        assert!(omega_apply(1, &nu_b_pow(1)).is_zero());
        let k3 = &Poly::one() + &nu_b_pow(3);
        assert!(omega_apply(3, &k3).is_zero());
        let k5 = Poly::from_terms([
            (Monomial::new(5, 0, 0), rat(1, 1)),
            (Monomial::new(2, 0, 0), rat(2, 1)),
            (Monomial::new(0, 1, 0), rat(1, 1)),
        ]);
        assert!(omega_apply(5, &k5).is_zero());
        // ... and the flat form does too.
        let op = omega_op();
        assert!(op.apply_graded(1, &nu_b_pow(1)).is_zero());
        assert!(op.apply_graded(3, &k3).is_zero());
        assert!(op.apply_graded(5, &k5).is_zero());
    }

    #[test]
    fn omega_does_not_annihilate_generic_input() {
        assert!(!omega_apply(1, &nu_w_pow(1)).is_zero());
        assert!(!omega_apply(3, &Poly::one()).is_zero());
    }

    #[test]
    fn upsilons_are_colour_conjugate()
    {
        let mut rng = SplitMix64::new(0x0D5_0004);
        let (uc, ub) = (upsilon_circ_op(), upsilon_bullet_op());
        for grade in 0..7 {
            let p = random_poly(&mut rng, 5, 3, 6);
            let via_swap = uc.apply_graded(grade, &p.swap_colors()).swap_colors();
            assert_eq!(ub.apply_graded(grade, &p), via_swap);
        }
    }

    #[test]
    fn integer_lambda_matches_rational() {
        let mut rng = SplitMix64::new(0x0D5_0005);
        for grade in 0..7 {
            let p = random_int_poly(&mut rng, 5, 3, 8);
            let ip = IntPoly::from_poly_scaled(&p, &Int::one()).unwrap();
            let got = lambda_apply_int(grade, &ip).to_poly_div(&Int::one());
            assert_eq!(got, lambda_apply(grade, &p));
        }
    }

    #[test]
    fn integer_omega_is_twelve_times_rational() {
        let mut rng = SplitMix64::new(0x0D5_0006);
        for grade in 0..9 {
            let p = random_int_poly(&mut rng, 5, 3, 8);
            let ip = IntPoly::from_poly_scaled(&p, &Int::one()).unwrap();
            let got = omega12_apply_int(grade, &ip).to_poly_div(&Int::one());
            assert_eq!(got, omega_apply(grade, &p).scaled(&rat(12, 1)));
        }
    }

    #[test]
    fn series_application_grows_truncation() {
        let mut s = TSeries::zero(4);
        *s.coeff_mut(3).unwrap() = nu_w_pow(3);
        let out = lambda_op().apply_series(&s);
        assert_eq!(out.trunc(), 6);
        assert_eq!(out.coeff(5).unwrap(), &poly_of(&[(0, 5, 0, 6), (0, 2, 0, 6)]));
        assert!(out.coeff(6).unwrap().is_zero());
    }
}
