//! Grade-by-grade integration of the master equation for the Ising series.
//!
//! The generating series `I(t)` obeys a fourth-order PDE whose `t^{n+2}`
//! coefficient pins down `J_n = [t^n]I` in terms of strictly earlier grades:
//!
//! ```text
//! Omega(I) = (s/12) Lambda^4 I  +  (1/2) (Lambda^2 I)^2
//!          + t (nu_w + 2 t^3 A) Lambda^2 I  +  t^5 (Q_c + t^3 Q_t),
//! ```
//!
//! with `A = 2nu_w^4 + nu_b nu_w^2 + 2nu_b^2 + 3nu_w`.  Extracting `[t^{n+2}]`
//! gives a linear problem `Omega_n(J_n) = rhs` whose right side only involves
//! `J_k` for `k <= n-3`; `Omega_n` has trivial kernel on colour-symmetric
//! polynomials of ν-degree at most n, and the triangular sweep in
//! [`solve_degree`] inverts it coefficient by coefficient.
//!
//! Every solved grade is checked against the defining equation (in both
//! modes): the sweep relations are sign-sensitive, and re-applying the
//! operator is cheap insurance against a mistranscribed recursion.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::grid::{residue_of, Grid};
use crate::ops::{lambda_apply_int, lambda_op, omega12_apply_int, omega_op};
use crate::poly::IntPoly;
use crate::rational::{factorial, rat};
use crate::{Error, Int, Monomial, Poly, Rational, Result, TSeries};

/// How much self-checking the solver performs while it runs.
///
/// Both modes verify every solved grade against the defining equation.
/// `Checked` additionally solves the grades that must vanish (instead of
/// skipping them), audits symmetry, support, genus range and coefficient
/// positivity, and visits every cell of the triangular sweep rather than
/// only the congruence class that can be populated.  The two modes produce
/// identical tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Checked,
    Fast,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Checked => "checked",
            Mode::Fast => "fast",
        })
    }
}

fn poly_of(terms: &[(u16, u16, u16, i64)]) -> Poly {
    Poly::from_terms(
        terms
            .iter()
            .map(|&(a, b, g, c)| (Monomial::new(a, b, g), rat(c, 1))),
    )
}

/// `A = 2ν∘⁴ + ν•ν∘² + 2ν•² + 3ν∘`, the polynomial multiplying the
/// `t⁴ Λ²I` part of the equation.
pub fn coupling_polynomial() -> Poly {
    poly_of(&[(0, 4, 0, 2), (1, 2, 0, 1), (2, 0, 0, 2), (0, 1, 0, 3)])
}

/// The `t⁵` part of the inhomogeneous term:
/// `2ν∘A + (ν∘⁵ + 2ν∘² + ν•)s`.
pub fn source_t5() -> Poly {
    let mut q = coupling_polynomial().shift_exponents(0, 1, 0).scaled(&rat(2, 1));
    q.add_scaled(
        &poly_of(&[(0, 5, 1, 1), (0, 2, 1, 2), (1, 0, 1, 1)]),
        &Rational::one(),
    );
    q
}

/// The `t⁸` part of the inhomogeneous term: `2A² + 2s·(16ν∘⁸ + 5ν•ν∘⁶ +
/// 10ν•²ν∘⁴ + 16ν•³ν∘² + 59ν∘⁵ + 16ν•⁴ + 54ν•ν∘³ + 37ν•²ν∘ + 32ν∘² + 11ν•)`.
pub fn source_t8() -> Poly {
    let a = coupling_polynomial();
    let mut q = a.mul_poly(&a).scaled(&rat(2, 1));
    q.add_scaled(
        &poly_of(&[
            (0, 8, 1, 16),
            (1, 6, 1, 5),
            (2, 4, 1, 10),
            (3, 2, 1, 16),
            (0, 5, 1, 59),
            (4, 0, 1, 16),
            (1, 3, 1, 54),
            (2, 1, 1, 37),
            (0, 2, 1, 32),
            (1, 0, 1, 11),
        ]),
        &rat(2, 1),
    );
    q
}

/// Least common multiple of the coefficient denominators (1 for the zero
/// polynomial).
fn common_denominator(p: &Poly) -> Int {
    p.terms()
        .fold(Int::one(), |acc, (_, c)| acc.lcm(c.denom()))
}

/// `Λ²J_n`, stored densely over GMP integers together with the denominator
/// that scales the grid back to the true rational polynomial.
struct SquaredEntry {
    grid: Grid,
    den: Int,
}

impl SquaredEntry {
    /// Applies `Λ` twice to the grade-`n` coefficient and packs the result.
    /// Returns `None` when the image vanishes.
    fn build(n: usize, jn: &Poly) -> Option<SquaredEntry> {
        if jn.is_zero() {
            return None;
        }
        let den = common_denominator(jn);
        let j_int = IntPoly::from_poly_scaled(jn, &den)
            .expect("scaling by the denominator lcm always yields integers");
        let l2 = lambda_apply_int(n + 2, &lambda_apply_int(n, &j_int));
        if l2.is_zero() {
            return None;
        }
        // Pull the common content out of the numerators so the stored grid
        // is as small as possible (in practice the denominator reduces to 1).
        let mut content = den.clone();
        for c in l2.terms.values() {
            content = content.gcd(c);
            if content.is_one() {
                break;
            }
        }
        let (reduced, den) = if content.is_one() {
            (l2, den)
        } else {
            let mut reduced = IntPoly::zero();
            for (m, c) in l2.terms.iter() {
                reduced.add_term(*m, c / &content);
            }
            (reduced, &den / &content)
        };
        let m = reduced
            .terms
            .keys()
            .next()
            .expect("nonzero polynomial has a monomial");
        let r = residue_of(m.a as usize, m.b as usize);
        Some(SquaredEntry {
            grid: Grid::from_int_poly(&reduced, r),
            den,
        })
    }

    fn to_poly(&self) -> Poly {
        self.grid.to_poly(&self.den)
    }
}

/// All computed coefficients of the series, plus the `Λ²`-images that feed
/// later grades.
pub struct SolveState {
    mode: Mode,
    n_done: usize,
    j: BTreeMap<usize, Poly>,
    rhs_cache: BTreeMap<usize, Poly>,
    squared: BTreeMap<usize, SquaredEntry>,
}

impl SolveState {
    pub fn new(mode: Mode) -> SolveState {
        let mut j = BTreeMap::new();
        j.insert(0, Poly::zero());
        SolveState {
            mode,
            n_done: 0,
            j,
            rhs_cache: BTreeMap::new(),
            squared: BTreeMap::new(),
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Largest t-grade (edge count) computed so far.
    pub fn max_edges(&self) -> usize {
        self.n_done
    }

    /// Extends the computation through grade `n_max` (no-op if already
    /// there).  Each new grade is solved and verified before being stored.
    pub fn compute_up_to(&mut self, n_max: usize) -> Result<()> {
        for n in self.n_done + 1..=n_max {
            self.step(n)?;
            self.n_done = n;
        }
        Ok(())
    }

    /// `J_n`, the grade-`n` coefficient of the series.
    pub fn j_poly(&self, n: usize) -> Result<&Poly> {
        self.j.get(&n).ok_or(Error::MissingDepth {
            requested: n,
            present: self.n_done,
        })
    }

    /// The verified right-hand side for a solved grade, when one was built
    /// (fast mode skips the grades that vanish identically).
    pub fn rhs_poly(&self, n: usize) -> Option<&Poly> {
        self.rhs_cache.get(&n)
    }

    /// The computed truncation as a series in t.
    pub fn j_series(&self) -> TSeries {
        TSeries::from_coeffs(
            (0..=self.n_done)
                .map(|n| self.j.get(&n).cloned().unwrap_or_else(Poly::zero))
                .collect(),
        )
    }

    /// `I_{n,g} = (6n)! · [s^g] J_{3n}` — the genus-`g` Ising partition
    /// polynomial for `2n` vertices (`3n` edges).  Zero when `g` exceeds the
    /// genus range.
    pub fn partition_polynomial(&self, n: usize, g: usize) -> Result<Poly> {
        let edges = 3 * n;
        let jn = self.j_poly(edges)?;
        Ok(jn
            .s_slice(g as u16)
            .scaled(&Rational::from_integer(factorial(6 * n as u64))))
    }

    /// `I_{n,g} / (6n−1)!`, the rooted count; all coefficients must come out
    /// integral.
    pub fn rooted_polynomial(&self, n: usize, g: usize) -> Result<Poly> {
        let p = self.partition_polynomial(n, g)?;
        let den = Rational::from_integer(factorial(6 * n as u64 - 1));
        let rooted = p.scaled(&den.recip());
        for (m, c) in rooted.terms() {
            if !c.is_integer() {
                return Err(Error::NonInteger(format!(
                    "rooted count at n={n}, g={g}, monomial {m}"
                )));
            }
        }
        Ok(rooted)
    }

    /// Largest genus appearing in any computed grade.
    pub fn max_present_genus(&self) -> Option<u16> {
        self.j.values().filter_map(|p| p.max_genus()).max()
    }

    /// Rebuilds a state from stored coefficients (`n → J_n`, nonzero grades
    /// only), as read back from a coefficient table.
    pub fn from_parts(mode: Mode, max_edges: usize, nonzero: BTreeMap<usize, Poly>) -> Result<SolveState> {
        let mut state = SolveState::new(mode);
        for (&n, p) in nonzero.iter() {
            if n == 0 || n > max_edges || n % 3 != 0 {
                return Err(Error::CorruptTable(format!(
                    "stored grade {n} outside the valid range"
                )));
            }
            if p.is_zero() {
                return Err(Error::CorruptTable(format!("stored grade {n} is empty")));
            }
        }
        for n in 1..=max_edges {
            state.j.insert(n, Poly::zero());
        }
        for (n, p) in nonzero {
            if let Some(entry) = SquaredEntry::build(n, &p) {
                state.squared.insert(n + 4, entry);
            }
            state.j.insert(n, p);
        }
        state.n_done = max_edges;
        Ok(state)
    }

    // ------------------------------------------------------------------
    // One grade of the induction.
    // ------------------------------------------------------------------

    fn step(&mut self, n: usize) -> Result<()> {
        if self.mode == Mode::Fast && n % 3 != 0 {
            // Every right-hand-side contribution carries a t-exponent that is
            // a multiple of 3, so these grades vanish identically; checked
            // mode proves that instead of using it.
            self.j.insert(n, Poly::zero());
            return Ok(());
        }
        let rhs = self.rhs(n);
        let jn = self.solve_full(n, &rhs)?;
        if self.mode == Mode::Checked {
            self.audit(n, &jn)?;
        }
        if let Some(entry) = SquaredEntry::build(n, &jn) {
            self.squared.insert(n + 4, entry);
        }
        self.rhs_cache.insert(n, rhs);
        self.j.insert(n, jn);
        Ok(())
    }

    /// `[t^{n+2}]` of the right side of the master equation, using only
    /// grades strictly below `n`.
    fn rhs(&self, n: usize) -> Poly {
        let mut r = Poly::zero();
        if let Some(entry) = (n >= 7).then(|| self.squared.get(&(n - 2))).flatten() {
            // (s/12) Λ⁴I and 2t⁴·A·Λ²I both read Λ²J_{n-6}.
            let l2_int = entry.grid.to_int_poly();
            let lam4 = lambda_apply_int(n, &lambda_apply_int(n - 2, &l2_int));
            r.add_scaled(
                &lam4.to_poly_div(&(Int::from(12) * &entry.den)).shift_exponents(0, 0, 1),
                &Rational::one(),
            );
            let a_int = IntPoly::from_poly_scaled(&coupling_polynomial(), &Int::one())
                .expect("integer coefficients");
            r.add_scaled(
                &a_int.mul_poly(&l2_int).to_poly_div(&entry.den),
                &rat(2, 1),
            );
        }
        if let Some(entry) = self.squared.get(&(n + 1)) {
            // t·ν∘·Λ²I reads Λ²J_{n-3}.
            r.add_scaled(&entry.to_poly().shift_exponents(0, 1, 0), &Rational::one());
        }
        r.add_scaled(&self.squared_series_coeff(n + 2), &Rational::one());
        if n == 3 {
            r.add_scaled(&source_t5(), &Rational::one());
        }
        if n == 6 {
            r.add_scaled(&source_t8(), &Rational::one());
        }
        r
    }

    /// `[t^target] (1/2)(Λ²I)²`, accumulated densely over GMP integers.
    fn squared_series_coeff(&self, target: usize) -> Poly {
        let mut pairs = Vec::new();
        let mut diagonal = None;
        for (&m1, e1) in self.squared.iter() {
            if 2 * m1 > target {
                break;
            }
            let m2 = target - m1;
            if m1 == m2 {
                diagonal = Some(e1);
            } else if let Some(e2) = self.squared.get(&m2) {
                pairs.push((e1, e2));
            }
        }
        let mut out = Poly::zero();
        if pairs.is_empty() && diagonal.is_none() {
            return out;
        }
        let plain = pairs.iter().all(|(a, b)| a.den.is_one() && b.den.is_one())
            && diagonal.is_none_or(|e| e.den.is_one());
        if plain {
            if !pairs.is_empty() {
                let deg = pairs.iter().map(|(a, b)| a.grid.degree() + b.grid.degree()).max().unwrap();
                let gmax = pairs
                    .iter()
                    .map(|(a, b)| a.grid.max_genus() + b.grid.max_genus())
                    .max()
                    .unwrap();
                let r = (pairs[0].0.grid.residue() + pairs[0].1.grid.residue()) % 3;
                let mut acc = Grid::zeros(deg, gmax, r);
                for (a, b) in &pairs {
                    acc.add_conv(&a.grid, &b.grid);
                }
                out.add_scaled(&acc.to_poly(&Int::one()), &Rational::one());
            }
            if let Some(e) = diagonal {
                let r = (2 * e.grid.residue()) % 3;
                let mut acc = Grid::zeros(2 * e.grid.degree(), 2 * e.grid.max_genus(), r);
                acc.add_conv(&e.grid, &e.grid);
                out.add_scaled(&acc.to_poly(&Int::one()), &rat(1, 2));
            }
        } else {
            for (a, b) in &pairs {
                out.add_scaled(&a.to_poly().mul_poly(&b.to_poly()), &Rational::one());
            }
            if let Some(e) = diagonal {
                let p = e.to_poly();
                out.add_scaled(&p.mul_poly(&p), &rat(1, 2));
            }
        }
        out
    }

    /// Solves `Omega_n(P) = rhs` slice by slice in the genus variable, then
    /// verifies the assembled solution against the operator.
    fn solve_full(&self, n: usize, rhs: &Poly) -> Result<Poly> {
        let genus_bound = if n % 3 == 0 { (n / 3 + 1) / 2 } else { 0 };
        let g_top = genus_bound.max(rhs.max_genus().map_or(0, |g| g as usize));
        let mut out = Poly::zero();
        for g in 0..=g_top {
            let slice = rhs.s_slice(g as u16);
            let solved = solve_degree(n, &slice, self.mode);
            out.add_scaled(&solved.shift_exponents(0, 0, g as u16), &Rational::one());
        }
        self.verify_grade(n, &out, rhs)?;
        Ok(out)
    }

    /// Mandatory re-application of the operator: `Omega_n(solved) = rhs`
    /// exactly, in both modes.  Runs over integers (12·den·Ω is integral).
    fn verify_grade(&self, n: usize, solved: &Poly, rhs: &Poly) -> Result<()> {
        let den = common_denominator(solved);
        let j_int = IntPoly::from_poly_scaled(solved, &den)
            .expect("scaling by the denominator lcm always yields integers");
        let lhs12 = omega12_apply_int(n, &j_int);
        let scale = Int::from(12) * &den;
        let rhs12 = IntPoly::from_poly_scaled(rhs, &scale).map_err(|_| {
            Error::Verification(format!(
                "grade {n}: right side does not lie in the solution lattice"
            ))
        })?;
        if lhs12 != rhs12 {
            return Err(Error::Verification(format!(
                "grade {n}: solved coefficient fails the defining equation"
            )));
        }
        Ok(())
    }

    /// Checked-mode structural audits.
    fn audit(&self, n: usize, jn: &Poly) -> Result<()> {
        if n % 3 != 0 {
            if !jn.is_zero() {
                return Err(Error::Verification(format!(
                    "grade {n} must vanish but has {} terms",
                    jn.len()
                )));
            }
            return Ok(());
        }
        if !jn.is_color_symmetric() {
            return Err(Error::Verification(format!(
                "grade {n} is not colour-symmetric"
            )));
        }
        let genus_bound = (n / 3 + 1) / 2;
        let fact = factorial(2 * n as u64);
        for (m, c) in jn.terms() {
            if (m.a as usize) + (m.b as usize) > n || (m.a % 3) != (m.b % 3) {
                return Err(Error::Verification(format!(
                    "grade {n}: monomial {m} outside the support lattice"
                )));
            }
            if (m.g as usize) > genus_bound {
                return Err(Error::Verification(format!(
                    "grade {n}: monomial {m} beyond genus bound {genus_bound}"
                )));
            }
            if !c.is_positive() {
                return Err(Error::Verification(format!(
                    "grade {n}: non-positive count at {m}"
                )));
            }
            if !(&fact % c.denom()).is_zero() {
                return Err(Error::Verification(format!(
                    "grade {n}: denominator at {m} does not divide (2n)!"
                )));
            }
        }
        Ok(())
    }
}

/// Inverts `Omega_n` on one genus slice by the triangular sweep: the corner
/// coefficient `p_{0,n}` comes from the relation at `(0, n)` whose left
/// coefficient is `−n(n+3)`, symmetry gives `p_{n,0}`, and the remaining
/// cells follow with left coefficient `2(n−j)(n−i+j)`, descending in i and
/// ascending in j.  Fast mode only visits the congruence class i ≡ j (mod 3)
/// that can be populated.
fn solve_degree(n: usize, slice: &Poly, mode: Mode) -> Poly {
    let stride = n + 3;
    let cell = |i: usize, j: usize| i * stride + j;
    let mut p: Vec<Rational> = vec![Rational::zero(); (n + 1) * stride];
    let rc = |i: usize, j: usize| slice.coeff(Monomial::new(i as u16, j as u16, 0));

    let ni = n as i64;
    let corner = rc(0, n + 2) * rat(3, ni * (ni + 3));
    p[cell(0, n)] = corner.clone();
    p[cell(n, 0)] = corner;

    for i in (0..n).rev() {
        for j in 0..=(n - i) {
            if i == 0 && j == n {
                continue;
            }
            if mode == Mode::Fast && i % 3 != j % 3 {
                continue;
            }
            let get = |ii: i64, jj: i64| -> Rational {
                if ii < 0 || jj < 0 || ii + jj > ni {
                    Rational::zero()
                } else {
                    p[cell(ii as usize, jj as usize)].clone()
                }
            };
            let (ii, jj) = (i as i64, j as i64);
            let mut acc = rc(i + 1, j) * rat(3, 1);
            acc += get(ii + 1, jj - 2) * rat((ii + 1 - ni) * (ii + 2 * jj - ni), 1);
            acc += get(ii + 1, jj + 1) * rat(2 * (jj + 1) * (ii - jj - ni), 1);
            acc -= get(ii + 2, jj - 1) * rat(2 * (ii + 2) * (2 * ii + 3 + jj - 2 * ni), 1);
            acc += get(ii + 3, jj) * rat(3 * (ii + 3) * (ii + 2), 1);
            let den = 2 * (ni - jj) * (ni - ii + jj);
            debug_assert!(den != 0);
            p[cell(i, j)] = acc / rat(den, 1);
        }
    }

    let mut out = Poly::zero();
    for i in 0..=n {
        for j in 0..=(n - i) {
            let v = std::mem::replace(&mut p[cell(i, j)], Rational::zero());
            if !v.is_zero() {
                out.add_term(Monomial::new(i as u16, j as u16, 0), v);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Whole-series residual
// ---------------------------------------------------------------------------

/// Residual of the master equation on a computed truncation, evaluated by an
/// entirely separate route from the solver: the flat expansion of `Omega`
/// applied to the series, minus the right side assembled from series
/// products and shifts.  Identically zero through grade `trunc + 2` iff the
/// truncation solves the equation.
pub fn equation_residual(j: &TSeries) -> Result<TSeries> {
    let window = j.trunc() + 2;

    // Multiplication by t^k into the comparison window.
    let shift_into = |src: &TSeries, k: usize| -> Result<TSeries> {
        let mut coeffs = vec![Poly::zero(); window + 1];
        for (m, c) in coeffs.iter_mut().enumerate().skip(k) {
            *c = src.coeff(m - k)?.clone();
        }
        Ok(TSeries::from_coeffs(coeffs))
    };

    let lhs = omega_op().apply_series(j).truncated(window)?;

    let lam2 = lambda_op().apply_series(&lambda_op().apply_series(j));
    let lam4 = lambda_op()
        .apply_series(&lambda_op().apply_series(&lam2))
        .truncated(window)?
        .map(|_, p| p.shift_exponents(0, 0, 1).scaled(&rat(1, 12)));

    let square = lam2.mul(&lam2)?.truncated(window)?.scaled(&rat(1, 2));

    let linear_w = shift_into(&lam2.map(|_, p| p.shift_exponents(0, 1, 0)), 1)?;

    let coupling = coupling_polynomial();
    let linear_a = shift_into(
        &lam2.map(|_, p| p.mul_poly(&coupling).scaled(&rat(2, 1))),
        4,
    )?;

    let mut source = TSeries::zero(window);
    if window >= 5 {
        *source.coeff_mut(5)? = source_t5();
    }
    if window >= 8 {
        *source.coeff_mut(8)? = source_t8();
    }

    let mut rhs = lam4.add(&square)?;
    rhs = rhs.add(&linear_w)?;
    rhs = rhs.add(&linear_a)?;
    rhs = rhs.add(&source)?;
    lhs.sub(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn j3_expected() -> Poly {
        Poly::from_terms([
            (Monomial::new(0, 0, 0), rat(1, 3)),
            (Monomial::new(0, 0, 1), rat(1, 3)),
            (Monomial::new(1, 1, 0), rat(1, 1)),
            (Monomial::new(3, 0, 0), rat(2, 3)),
            (Monomial::new(0, 3, 0), rat(2, 3)),
            (Monomial::new(3, 0, 1), rat(1, 6)),
            (Monomial::new(0, 3, 1), rat(1, 6)),
        ])
    }

    #[test]
    fn first_grades_match_hand_values() {
        let mut state = SolveState::new(Mode::Checked);
        state.compute_up_to(5).unwrap();
        assert!(state.j_poly(1).unwrap().is_zero());
        assert!(state.j_poly(2).unwrap().is_zero());
        assert_eq!(*state.j_poly(3).unwrap(), j3_expected());
        assert!(state.j_poly(4).unwrap().is_zero());
        assert!(state.j_poly(5).unwrap().is_zero());
    }

    #[test]
    fn rhs_at_grade_three_is_the_t5_source() {
        let mut state = SolveState::new(Mode::Checked);
        state.compute_up_to(3).unwrap();
        assert_eq!(*state.rhs_poly(3).unwrap(), source_t5());
        assert!(state.rhs_poly(1).unwrap().is_zero());
    }

    #[test]
    fn partition_polynomials_match_displayed_values() {
        let mut state = SolveState::new(Mode::Checked);
        state.compute_up_to(3).unwrap();
        let i10 = state.partition_polynomial(1, 0).unwrap();
        assert_eq!(
            i10,
            poly_of(&[(0, 0, 0, 240), (0, 3, 0, 480), (3, 0, 0, 480), (1, 1, 0, 720)])
        );
        let i11 = state.partition_polynomial(1, 1).unwrap();
        // The s-slice drops the genus marker, so compare at g = 0.
        assert_eq!(
            i11,
            poly_of(&[(0, 0, 0, 240), (0, 3, 0, 120), (3, 0, 0, 120)])
        );
        assert!(state.partition_polynomial(1, 2).unwrap().is_zero());
    }

    #[test]
    fn rooted_polynomials_divide_exactly() {
        let mut state = SolveState::new(Mode::Checked);
        state.compute_up_to(3).unwrap();
        let rooted = state.rooted_polynomial(1, 0).unwrap();
        assert_eq!(
            rooted,
            poly_of(&[(0, 0, 0, 2), (0, 3, 0, 4), (3, 0, 0, 4), (1, 1, 0, 6)])
        );
        let rooted_torus = state.rooted_polynomial(1, 1).unwrap();
        assert_eq!(
            rooted_torus,
            poly_of(&[(0, 0, 0, 2), (0, 3, 0, 1), (3, 0, 0, 1)])
        );
    }

    #[test]
    fn six_edges_match_the_oracle() {
        let mut state = SolveState::new(Mode::Checked);
        state.compute_up_to(6).unwrap();
        let oracle_polys = oracle::ising_polynomials(2).unwrap();
        for (g, want) in oracle_polys.iter().enumerate() {
            assert_eq!(state.partition_polynomial(2, g).unwrap(), *want, "genus {g}");
        }
    }

    #[test]
    fn fast_and_checked_agree_through_fifteen_edges() {
        let mut checked = SolveState::new(Mode::Checked);
        checked.compute_up_to(15).unwrap();
        let mut fast = SolveState::new(Mode::Fast);
        fast.compute_up_to(15).unwrap();
        for n in 0..=15 {
            assert_eq!(checked.j_poly(n).unwrap(), fast.j_poly(n).unwrap(), "grade {n}");
        }
    }

    #[test]
    fn residual_vanishes_on_computed_series() {
        let mut state = SolveState::new(Mode::Checked);
        state.compute_up_to(12).unwrap();
        let residual = equation_residual(&state.j_series()).unwrap();
        assert!(residual.is_zero(), "first nonzero grade: {:?}", residual.first_nonzero());
    }

    #[test]
    fn residual_detects_a_perturbation() {
        let mut state = SolveState::new(Mode::Checked);
        state.compute_up_to(12).unwrap();
        let mut series = state.j_series();
        series
            .coeff_mut(9)
            .unwrap()
            .add_term(Monomial::new(3, 3, 1), rat(1, 7));
        let residual = equation_residual(&series).unwrap();
        assert!(!residual.is_zero());
    }

    #[test]
    fn rebuilt_state_continues_identically() {
        let mut full = SolveState::new(Mode::Checked);
        full.compute_up_to(15).unwrap();

        let mut partial = SolveState::new(Mode::Checked);
        partial.compute_up_to(9).unwrap();
        let nonzero: BTreeMap<usize, Poly> = (1..=9)
            .filter_map(|n| {
                let p = partial.j_poly(n).unwrap();
                (!p.is_zero()).then(|| (n, p.clone()))
            })
            .collect();
        let mut resumed = SolveState::from_parts(Mode::Checked, 9, nonzero).unwrap();
        resumed.compute_up_to(15).unwrap();
        for n in 0..=15 {
            assert_eq!(full.j_poly(n).unwrap(), resumed.j_poly(n).unwrap(), "grade {n}");
        }
    }

    #[test]
    fn from_parts_rejects_bad_grades() {
        let mut bad = BTreeMap::new();
        bad.insert(4usize, poly_of(&[(1, 1, 0, 1)]));
        assert!(matches!(
            SolveState::from_parts(Mode::Checked, 9, bad),
            Err(Error::CorruptTable(_))
        ));
        let mut beyond = BTreeMap::new();
        beyond.insert(12usize, poly_of(&[(0, 0, 0, 1)]));
        assert!(matches!(
            SolveState::from_parts(Mode::Checked, 9, beyond),
            Err(Error::CorruptTable(_))
        ));
    }

    #[test]
    fn genus_range_matches_the_bound() {
        let mut state = SolveState::new(Mode::Checked);
        state.compute_up_to(9).unwrap();
        // n = 9 edges: genus bound (3+1)/2 = 2.
        assert_eq!(state.j_poly(9).unwrap().max_genus(), Some(2));
        assert_eq!(state.max_present_genus(), Some(2));
    }
}
