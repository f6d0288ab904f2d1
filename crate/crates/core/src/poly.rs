//! Sparse exact polynomials in the two vertex weights and the genus marker.
//!
//! # Key Operations
//!
//! [`Poly`] is a sparse polynomial in three commuting variables: the black
//! vertex weight `nu_b`, the white vertex weight `nu_w`, and the genus
//! marker `s`.  A [`Monomial`] is the exponent triple `(a, b, g)` of
//! `nu_b^a nu_w^b s^g`.  Supported operations: ring arithmetic, scalar
//! multiples, the colour swap `nu_b <-> nu_w`, exact evaluation, the four
//! first-order derivations used by the differential operators, and
//! extraction of `s`-slices.
//!
//! # Design Notes
//!
//! * Canonical form: zero coefficients are never stored, so structural
//!   equality is polynomial equality.  All constructors and mutators
//!   restore this invariant.
//! * Terms live in a hash map keyed by the packed exponent triple; the
//!   iteration order is unspecified, and every user-facing serialisation
//!   sorts by [`Monomial`]'s order (genus, then black, then white degree)
//!   to stay deterministic.
//! * [`IntPoly`] (crate-internal) is the same structure with integer
//!   coefficients.  The grade-by-grade solver works with factorially
//!   rescaled, integer-valued series; keeping those coefficients as plain
//!   big integers avoids a gcd per arithmetic step, which dominates the
//!   profile at deep truncation orders.  Its multiplication splits the
//!   larger operand across threads; exactness makes the reduction order
//!   irrelevant, so results are bit-for-bit deterministic regardless of
//!   the thread budget.

use crate::rational::{Int, Rational};
use num_traits::{One, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent triple `(a, b, g)` of a monomial `nu_b^a nu_w^b s^g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    /// Exponent of the black vertex weight `nu_b`.
    pub a: u16,
    /// Exponent of the white vertex weight `nu_w`.
    pub b: u16,
    /// Exponent of the genus marker `s`.
    pub g: u16,
}

impl Monomial {
    /// Monomial `nu_b^a nu_w^b s^g`.
    pub fn new(a: u16, b: u16, g: u16) -> Self {
        Monomial { a, b, g }
    }

    /// Total degree in the two vertex weights.
    pub fn nu_degree(&self) -> u16 {
        self.a + self.b
    }

    /// The colour-swapped monomial `nu_w^a nu_b^b s^g`.
    pub fn swapped(&self) -> Self {
        Monomial::new(self.b, self.a, self.g)
    }
}

impl Ord for Monomial {
    /// Lexicographic by `(g, a, b)` — the order used by persisted
    /// coefficient tables and all printed forms.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.g, self.a, self.b).cmp(&(other.g, other.a, other.b))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.a > 0 {
            parts.push(format!("nu_b^{}", self.a));
        }
        if self.b > 0 {
            parts.push(format!("nu_w^{}", self.b));
        }
        if self.g > 0 {
            parts.push(format!("s^{}", self.g));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Sparse polynomial in `nu_b`, `nu_w`, `s` with rational coefficients.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Poly {
    terms: FxHashMap<Monomial, Rational>,
}

impl Poly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Poly::default()
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// A constant polynomial.
    pub fn constant(c: Rational) -> Self {
        Poly::monomial(Monomial::new(0, 0, 0), c)
    }

    /// The polynomial `c * nu_b^a nu_w^b s^g`.
    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = FxHashMap::default();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, summing
    /// duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    /// True when no terms are stored (canonical form makes this exact).
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True when there are no terms.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Iterates over the stored terms in unspecified order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms sorted by the canonical monomial order.
    pub fn sorted_terms(&self) -> Vec<(Monomial, Rational)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        v.sort_by(|x, y| x.0.cmp(&y.0));
        v
    }

    /// Adds `c * m` in place, keeping the canonical form.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// `self += scale * other`.
    pub fn add_scaled(&mut self, other: &Poly, scale: &Rational) {
        if scale.is_zero() {
            return;
        }
        for (m, c) in other.terms.iter() {
            self.add_term(*m, c * scale);
        }
    }

    /// `scale * self` as a new polynomial.
    pub fn scaled(&self, scale: &Rational) -> Poly {
        if scale.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c * scale))
                .collect(),
        }
    }

    /// Product of two polynomials (sparse convolution).
    pub fn mul_poly(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in self.terms.iter() {
            for (m2, c2) in other.terms.iter() {
                out.add_term(
                    Monomial::new(m1.a + m2.a, m1.b + m2.b, m1.g + m2.g),
                    c1 * c2,
                );
            }
        }
        out
    }

    /// The colour swap `nu_b <-> nu_w`.
    pub fn swap_colors(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.swapped(), c.clone()))
                .collect(),
        }
    }

    /// True when the polynomial is invariant under the colour swap.
    pub fn is_color_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(m, c)| self.terms.get(&m.swapped()) == Some(c))
    }

    /// Exact evaluation at `(nu_b, nu_w, s)`.
    pub fn eval(&self, nu_b: &Rational, nu_w: &Rational, s: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in self.terms.iter() {
            acc += c * powi(nu_b, m.a) * powi(nu_w, m.b) * powi(s, m.g);
        }
        acc
    }

    /// The Euler derivation `nu_b * d/d nu_b` (multiplies each term by its
    /// black degree).
    pub fn euler_b(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.a > 0)
                .map(|(m, c)| (*m, c * Rational::from_integer(Int::from(m.a))))
                .collect(),
        }
    }

    /// The Euler derivation `nu_w * d/d nu_w`.
    pub fn euler_w(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.b > 0)
                .map(|(m, c)| (*m, c * Rational::from_integer(Int::from(m.b))))
                .collect(),
        }
    }

    /// The plain derivative `d/d nu_b`.
    pub fn partial_b(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.a > 0)
                .map(|(m, c)| {
                    (
                        Monomial::new(m.a - 1, m.b, m.g),
                        c * Rational::from_integer(Int::from(m.a)),
                    )
                })
                .collect(),
        }
    }

    /// The plain derivative `d/d nu_w`.
    pub fn partial_w(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.b > 0)
                .map(|(m, c)| {
                    (
                        Monomial::new(m.a, m.b - 1, m.g),
                        c * Rational::from_integer(Int::from(m.b)),
                    )
                })
                .collect(),
        }
    }

    /// Coefficient polynomial of `s^g`, returned with the `s`-exponent
    /// cleared.
    pub fn s_slice(&self, g: u16) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.g == g)
                .map(|(m, c)| (Monomial::new(m.a, m.b, 0), c.clone()))
                .collect(),
        }
    }

    /// Largest `s`-exponent present (`None` for the zero polynomial).
    pub fn max_genus(&self) -> Option<u16> {
        self.terms.keys().map(|m| m.g).max()
    }

    /// Largest total degree in the vertex weights.
    pub fn max_nu_degree(&self) -> Option<u16> {
        self.terms.keys().map(|m| m.nu_degree()).max()
    }

    /// Multiplies by the monomial `nu_b^da nu_w^db s^dg` in place.
    pub fn shift_exponents(&self, da: u16, db: u16, dg: u16) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.a + da, m.b + db, m.g + dg), c.clone()))
                .collect(),
        }
    }
}

/// `base^exp` by repeated squaring.
fn powi(base: &Rational, exp: u16) -> Rational {
    let mut acc = Rational::one();
    let mut sq = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| format!("({c}) {m}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.mul_poly(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scaled(&-Rational::one())
    }
}

// ---------------------------------------------------------------------------
// Integer-coefficient twin, used by the solver's rescaled series.
// ---------------------------------------------------------------------------

/// Number of term-products above which a polynomial product is split
/// across threads.
const PAR_MUL_THRESHOLD: usize = 1 << 16;

/// Sparse polynomial with big-integer coefficients (crate-internal).
#[derive(Clone, Default, PartialEq, Eq)]
pub(crate) struct IntPoly {
    pub(crate) terms: FxHashMap<Monomial, Int>,
}

impl IntPoly {
    pub(crate) fn zero() -> Self {
        IntPoly::default()
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn len(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Int) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub(crate) fn add_scaled(&mut self, other: &IntPoly, scale: &Int) {
        if scale.is_zero() {
            return;
        }
        for (m, c) in other.terms.iter() {
            self.add_term(*m, c * scale);
        }
    }

    pub(crate) fn scaled(&self, scale: &Int) -> IntPoly {
        if scale.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c * scale))
                .collect(),
        }
    }

    /// Product, splitting the term-pair work across threads when large.
    /// All coefficient arithmetic is exact, so the reduction order cannot
    /// influence the result.
    pub(crate) fn mul_poly(&self, other: &IntPoly) -> IntPoly {
        let work = self.len() * other.len();
        if work == 0 {
            return IntPoly::zero();
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if work < PAR_MUL_THRESHOLD {
            let mut out = IntPoly::zero();
            for (m1, c1) in small.terms.iter() {
                for (m2, c2) in big.terms.iter() {
                    out.add_term(
                        Monomial::new(m1.a + m2.a, m1.b + m2.b, m1.g + m2.g),
                        c1 * c2,
                    );
                }
            }
            return out;
        }
        let big_terms: Vec<(&Monomial, &Int)> = big.terms.iter().collect();
        let chunk = big_terms.len().div_ceil(rayon::current_num_threads().max(1) * 4);
        big_terms
            .par_chunks(chunk.max(1))
            .map(|slice| {
                let mut out = IntPoly::zero();
                for (m2, c2) in slice {
                    for (m1, c1) in small.terms.iter() {
                        out.add_term(
                            Monomial::new(m1.a + m2.a, m1.b + m2.b, m1.g + m2.g),
                            c1 * *c2,
                        );
                    }
                }
                out
            })
            .reduce(IntPoly::zero, |mut acc, part| {
                acc.add_scaled(&part, &Int::one());
                acc
            })
    }

    /// Rational polynomial `self / den`.
    pub(crate) fn to_poly_div(&self, den: &Int) -> Poly {
        assert!(!den.is_zero());
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, Rational::new(c.clone(), den.clone())))
                .collect(),
        }
    }

    /// Reads `scale * p`, which must have integer coefficients.
    pub(crate) fn from_poly_scaled(p: &Poly, scale: &Int) -> crate::Result<IntPoly> {
        let mut out = IntPoly::zero();
        for (m, c) in p.terms() {
            let scaled = c * Rational::from_integer(scale.clone());
            if !scaled.is_integer() {
                return Err(crate::Error::NonInteger(format!(
                    "coefficient {c} of {m} times {scale}"
                )));
            }
            out.add_term(*m, scaled.to_integer());
        }
        Ok(out)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|x, y| x.0.cmp(y.0));
        let parts: Vec<String> = v.into_iter().map(|(m, c)| format!("({c}) {m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use crate::testing::{random_poly, SplitMix64};

    fn m(a: u16, b: u16, g: u16) -> Monomial {
        Monomial::new(a, b, g)
    }

    #[test]
    fn canonical_form_drops_zeros() {
        let mut p = Poly::monomial(m(1, 2, 0), rat_int(3));
        p.add_term(m(1, 2, 0), rat_int(-3));
        assert!(p.is_zero());
        assert_eq!(p, Poly::zero());
    }

    #[test]
    fn from_terms_merges_duplicates() {
        let p = Poly::from_terms([
            (m(1, 0, 0), rat_int(2)),
            (m(1, 0, 0), rat_int(5)),
            (m(0, 1, 0), rat_int(0)),
        ]);
        assert_eq!(p.len(), 1);
        assert_eq!(p.coeff(m(1, 0, 0)), rat_int(7));
    }

    #[test]
    fn ring_axioms_on_random_inputs() {
        let mut rng = SplitMix64::new(0xA5A5_0001);
        for _ in 0..40 {
            let p = random_poly(&mut rng, 4, 2, 3);
            let q = random_poly(&mut rng, 4, 2, 3);
            let r = random_poly(&mut rng, 4, 2, 3);
            // commutativity and associativity of *
            assert_eq!(&p * &q, &q * &p);
            assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            // distributivity
            assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            // additive inverse
            assert!((&p - &p).is_zero());
        }
    }

    #[test]
    fn eval_is_ring_homomorphism() {
        let mut rng = SplitMix64::new(0xA5A5_0002);
        let (nb, nw, s) = (rat(2, 3), rat(-5, 7), rat(1, 2));
        for _ in 0..25 {
            let p = random_poly(&mut rng, 5, 3, 4);
            let q = random_poly(&mut rng, 5, 3, 4);
            assert_eq!(
                (&p * &q).eval(&nb, &nw, &s),
                p.eval(&nb, &nw, &s) * q.eval(&nb, &nw, &s)
            );
            assert_eq!(
                (&p + &q).eval(&nb, &nw, &s),
                p.eval(&nb, &nw, &s) + q.eval(&nb, &nw, &s)
            );
        }
    }

    #[test]
    fn swap_is_an_involution_and_respects_products() {
        let mut rng = SplitMix64::new(0xA5A5_0003);
        for _ in 0..25 {
            let p = random_poly(&mut rng, 5, 3, 4);
            let q = random_poly(&mut rng, 5, 3, 4);
            assert_eq!(p.swap_colors().swap_colors(), p);
            assert_eq!(
                (&p * &q).swap_colors(),
                &p.swap_colors() * &q.swap_colors()
            );
        }
    }

    #[test]
    fn derivations_satisfy_leibniz() {
        let mut rng = SplitMix64::new(0xA5A5_0004);
        for _ in 0..25 {
            let p = random_poly(&mut rng, 4, 3, 3);
            let q = random_poly(&mut rng, 4, 3, 3);
            let pq = &p * &q;
            assert_eq!(pq.partial_b(), &(&p.partial_b() * &q) + &(&p * &q.partial_b()));
            assert_eq!(pq.euler_w(), &(&p.euler_w() * &q) + &(&p * &q.euler_w()));
        }
    }

    #[test]
    fn euler_equals_weight_times_partial() {
        let mut rng = SplitMix64::new(0xA5A5_0005);
        let nu_b = Poly::monomial(m(1, 0, 0), rat_int(1));
        let nu_w = Poly::monomial(m(0, 1, 0), rat_int(1));
        for _ in 0..10 {
            let p = random_poly(&mut rng, 5, 3, 4);
            assert_eq!(p.euler_b(), &nu_b * &p.partial_b());
            assert_eq!(p.euler_w(), &nu_w * &p.partial_w());
        }
    }

    #[test]
    fn s_slices_reassemble() {
        let mut rng = SplitMix64::new(0xA5A5_0006);
        let p = random_poly(&mut rng, 5, 3, 6);
        let gmax = p.max_genus().unwrap_or(0);
        let mut back = Poly::zero();
        for g in 0..=gmax {
            back.add_scaled(&p.s_slice(g).shift_exponents(0, 0, g), &rat_int(1));
        }
        assert_eq!(back, p);
    }

    #[test]
    fn int_poly_mul_matches_rational_mul() {
        let mut rng = SplitMix64::new(0xA5A5_0007);
        for _ in 0..20 {
            let p = random_poly(&mut rng, 4, 3, 3);
            let q = random_poly(&mut rng, 4, 3, 3);
            // clear denominators exactly
            let dp = p
                .terms()
                .fold(Int::one(), |acc, (_, c)| num_integer::lcm(acc, c.denom().clone()));
            let dq = q
                .terms()
                .fold(Int::one(), |acc, (_, c)| num_integer::lcm(acc, c.denom().clone()));
            let ip = IntPoly::from_poly_scaled(&p, &dp).unwrap();
            let iq = IntPoly::from_poly_scaled(&q, &dq).unwrap();
            let prod = ip.mul_poly(&iq).to_poly_div(&(&dp * &dq));
            assert_eq!(prod, &p * &q);
        }
    }

    #[test]
    fn int_poly_parallel_product_is_deterministic() {
        // force the parallel path with two dense-ish operands
        let mut big1 = IntPoly::zero();
        let mut big2 = IntPoly::zero();
        let mut rng = SplitMix64::new(0xA5A5_0008);
        for a in 0..18u16 {
            for b in 0..18u16 {
                big1.add_term(m(a, b, 0), Int::from(rng.next_i64_in(-50, 50)));
                big2.add_term(m(a, b, 1), Int::from(rng.next_i64_in(-50, 50)));
            }
        }
        let p1 = big1.mul_poly(&big2);
        let p2 = big1.mul_poly(&big2);
        assert_eq!(p1, p2);
        assert!(p1.len() > 1000);
    }

    #[test]
    fn from_poly_scaled_rejects_non_integers() {
        let p = Poly::monomial(m(1, 1, 0), rat(1, 3));
        assert!(IntPoly::from_poly_scaled(&p, &Int::from(2)).is_err());
        assert!(IntPoly::from_poly_scaled(&p, &Int::from(6)).is_ok());
    }
}
