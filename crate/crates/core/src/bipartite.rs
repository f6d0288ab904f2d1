//! The bipartite side of the correspondence.
//!
//! Cubic Ising maps are equivalent, via a change of variables, to bipartite
//! maps whose vertices have degree 2 or 3 only.  On that side the natural
//! variables are `z` (marking edges), `p₂`/`q₂` (degree-2 vertices of the
//! two colours) and `u` (tracking the Euler characteristic), and the series
//!
//! ```text
//! B = (u²/2)·log(1/(1 − z²p₂q₂)) + u²·Ψ(I)
//! ```
//!
//! satisfies a quadratic fourth-order equation inherited from the KP
//! hierarchy:
//!
//! ```text
//! (1/3)(z∂_z − 2p₂∂_{p₂} − 1) L B
//!   = ∂²B/∂p₂² + (1/12) L⁴B + (1/2) (L²B + uz²q₂/(1−z²p₂q₂))²
//!   + u z⁶ (q₂⁵z⁴ + 2q₂²z + p₂) / (1−z²p₂q₂)⁵
//! ```
//!
//! with the first-order operator
//! `L = 2 (z²q₂ ∂_{p₂} + z ∂_{q₂}) / (1 − z²p₂q₂)`.
//!
//! The change of variables `Ψ` sends `t ↦ u^{1/3} z/(1−z²p₂q₂)`,
//! `s ↦ u⁻²`, `ν• ↦ zp₂`, `ν∘ ↦ zq₂`; on monomials `t^{3n} s^g` all
//! fractional powers of `u` cancel to `u^{n−2g}`.  Everything here is a
//! truncated series in `z` with polynomial coefficients, so the equation is
//! checked as an exact residual.

use num_traits::Zero;
use rustc_hash::FxHashMap;

use crate::poly::Monomial;
use crate::rational::{binomial, rat, rat_int, Rational};
use crate::solver::SolveState;
use crate::{Error, Poly, Result};

/// A monomial `p₂^{p2} q₂^{q2} u^{u}` inside one `z`-grade.  The `u`
/// exponent is signed: the raw image `Ψ(I)` reaches `u⁻¹` before the
/// global `u²` factor of the series `B` lifts every exponent to at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZMonomial {
    pub p2: u16,
    pub q2: u16,
    pub u: i32,
}

/// Coefficient block of a single `z`-grade.
pub type ZPoly = FxHashMap<ZMonomial, Rational>;

/// A series in `z`, truncated inclusively, with [`ZPoly`] coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZSeries {
    coeffs: Vec<ZPoly>,
}

impl ZSeries {
    /// The zero series truncated at `z^trunc`.
    pub fn zero(trunc: usize) -> Self {
        ZSeries {
            coeffs: vec![ZPoly::default(); trunc + 1],
        }
    }

    /// Inclusive truncation order.
    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient block of `z^m`.
    pub fn coeff(&self, m: usize) -> &ZPoly {
        &self.coeffs[m]
    }

    /// Adds `c` to the monomial `mono` at grade `m`; grades beyond the
    /// truncation are discarded.
    pub fn add_term(&mut self, m: usize, mono: ZMonomial, c: Rational) {
        if m > self.trunc() || c.is_zero() {
            return;
        }
        let entry = self.coeffs[m].entry(mono).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs[m].remove(&mono);
        }
    }

    /// `self += scale · other`, on the common truncation window.
    pub fn add_scaled(&mut self, other: &ZSeries, scale: &Rational) {
        let top = self.trunc().min(other.trunc());
        for m in 0..=top {
            for (mono, c) in &other.coeffs[m] {
                self.add_term(m, *mono, c * scale);
            }
        }
    }

    /// Product, truncated at the shorter of the two windows.
    pub fn mul(&self, other: &ZSeries) -> ZSeries {
        let trunc = self.trunc().min(other.trunc());
        let mut out = ZSeries::zero(trunc);
        for (m1, block1) in self.coeffs.iter().enumerate().take(trunc + 1) {
            if block1.is_empty() {
                continue;
            }
            for (m2, block2) in other.coeffs.iter().enumerate().take(trunc + 1 - m1) {
                for (a, ca) in block1 {
                    for (b, cb) in block2 {
                        let mono = ZMonomial {
                            p2: a.p2 + b.p2,
                            q2: a.q2 + b.q2,
                            u: a.u + b.u,
                        };
                        out.add_term(m1 + m2, mono, ca * cb);
                    }
                }
            }
        }
        out
    }

    /// Every coefficient multiplied by `scale`.
    pub fn scaled(&self, scale: &Rational) -> ZSeries {
        let mut out = self.clone();
        for block in &mut out.coeffs {
            block.retain(|_, c| {
                *c *= scale;
                !c.is_zero()
            });
        }
        out
    }

    /// Whether every grade up to `m` (inclusive) vanishes.
    pub fn is_zero_through(&self, m: usize) -> bool {
        self.coeffs[..=m.min(self.trunc())]
            .iter()
            .all(|block| block.is_empty())
    }

    /// First grade `≤ window` carrying a nonzero coefficient.
    pub fn first_nonzero_through(&self, window: usize) -> Option<usize> {
        (0..=window.min(self.trunc())).find(|&m| !self.coeffs[m].is_empty())
    }

    /// `(1 − z²p₂q₂)^{−power}` as a truncated geometric series.
    pub fn geometric(power: u64, trunc: usize) -> ZSeries {
        let mut out = ZSeries::zero(trunc);
        let mut k = 0u64;
        while 2 * k <= trunc as u64 {
            let mono = ZMonomial {
                p2: k as u16,
                q2: k as u16,
                u: 0,
            };
            out.add_term(
                2 * k as usize,
                mono,
                Rational::from_integer(binomial(power - 1 + k, k)),
            );
            k += 1;
        }
        out
    }

    /// The two structural invariants of grade blocks on this side: in grade
    /// `m` the `p₂`- and `q₂`-exponents sum to at most `m`, and (for the
    /// full series `B`) the `u`-exponent lies in `[1, m]`.
    pub fn support_ok(&self, require_u_range: bool) -> bool {
        self.coeffs.iter().enumerate().all(|(m, block)| {
            block.keys().all(|mono| {
                (mono.p2 + mono.q2) as usize <= m
                    && (!require_u_range || (mono.u >= 1 && mono.u <= m as i32))
            })
        })
    }

    /// Whether every grade block is invariant under `p₂ ↔ q₂`.
    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|block| {
            block.iter().all(|(mono, c)| {
                let swapped = ZMonomial {
                    p2: mono.q2,
                    q2: mono.p2,
                    u: mono.u,
                };
                block.get(&swapped) == Some(c)
            })
        })
    }
}

/// Exact image `Ψ(I)` truncated at `z^zmax`.
///
/// A solved monomial `t^{3n} s^g ν•^a ν∘^b` lands on
/// `u^{n−2g} (zp₂)^a (zq₂)^b z^{3n} (1−z²p₂q₂)^{−3n}`, so the solver must
/// have reached grade `zmax`: grade `e` starts contributing at `z^e`.
pub fn psi_substitute(state: &SolveState, zmax: usize) -> Result<ZSeries> {
    if state.max_edges() < zmax {
        return Err(Error::MissingDepth {
            requested: zmax,
            present: state.max_edges(),
        });
    }
    let mut out = ZSeries::zero(zmax);
    for e in (3..=zmax).step_by(3) {
        let jn = state.j_poly(e)?;
        let n = (e / 3) as i32;
        for (m, c) in jn.terms() {
            let base = e + (m.a + m.b) as usize;
            if base > zmax {
                continue;
            }
            let u = n - 2 * m.g as i32;
            // geometric tail of (1 − z²p₂q₂)^{−e}
            let mut k = 0usize;
            while base + 2 * k <= zmax {
                let mono = ZMonomial {
                    p2: m.a + k as u16,
                    q2: m.b + k as u16,
                    u,
                };
                let tail = Rational::from_integer(binomial((e - 1 + k) as u64, k as u64));
                out.add_term(base + 2 * k, mono, c * tail);
                k += 1;
            }
        }
    }
    Ok(out)
}

/// The bipartite series
/// `B = (u²/2)·log(1/(1 − z²p₂q₂)) + u²·Ψ(I)`, truncated at `z^zmax`.
pub fn b_series(state: &SolveState, zmax: usize) -> Result<ZSeries> {
    let mut out = ZSeries::zero(zmax);
    // log term: Σ_{k≥1} u² (z²p₂q₂)^k / (2k)
    let mut k = 1usize;
    while 2 * k <= zmax {
        let mono = ZMonomial {
            p2: k as u16,
            q2: k as u16,
            u: 2,
        };
        out.add_term(2 * k, mono, rat(1, 2 * k as i64));
        k += 1;
    }
    for (m, block) in psi_substitute(state, zmax)?.coeffs.into_iter().enumerate() {
        for (mono, c) in block {
            let lifted = ZMonomial {
                u: mono.u + 2,
                ..mono
            };
            out.add_term(m, lifted, c);
        }
    }
    Ok(out)
}

/// `L = 2 (z²q₂ ∂_{p₂} + z ∂_{q₂}) / (1 − z²p₂q₂)`, on the input's window.
pub fn apply_l(a: &ZSeries) -> ZSeries {
    let trunc = a.trunc();
    let mut inner = ZSeries::zero(trunc);
    for (m, block) in a.coeffs.iter().enumerate() {
        for (mono, c) in block {
            if mono.p2 > 0 {
                let shifted = ZMonomial {
                    p2: mono.p2 - 1,
                    q2: mono.q2 + 1,
                    u: mono.u,
                };
                inner.add_term(m + 2, shifted, c * rat_int(mono.p2 as i64));
            }
            if mono.q2 > 0 {
                let shifted = ZMonomial {
                    q2: mono.q2 - 1,
                    ..*mono
                };
                inner.add_term(m + 1, shifted, c * rat_int(mono.q2 as i64));
            }
        }
    }
    ZSeries::geometric(1, trunc).mul(&inner).scaled(&rat_int(2))
}

/// `z ∂_z` — multiplies each grade block by its grade.
fn z_dz(a: &ZSeries) -> ZSeries {
    let mut out = a.clone();
    for (m, block) in out.coeffs.iter_mut().enumerate() {
        let grade = rat_int(m as i64);
        block.retain(|_, c| {
            *c *= &grade;
            !c.is_zero()
        });
    }
    out
}

/// `p₂ ∂_{p₂}` — multiplies each monomial by its `p₂`-exponent.
fn p2_dp2(a: &ZSeries) -> ZSeries {
    let mut out = a.clone();
    for block in &mut out.coeffs {
        block.retain(|mono, c| {
            *c *= rat_int(mono.p2 as i64);
            !c.is_zero()
        });
    }
    out
}

/// `∂²/∂p₂²`.
fn d2_p2(a: &ZSeries) -> ZSeries {
    let mut out = ZSeries::zero(a.trunc());
    for (m, block) in a.coeffs.iter().enumerate() {
        for (mono, c) in block {
            if mono.p2 >= 2 {
                let shifted = ZMonomial {
                    p2: mono.p2 - 2,
                    ..*mono
                };
                let scale = rat_int((mono.p2 as i64) * (mono.p2 as i64 - 1));
                out.add_term(m, shifted, c * scale);
            }
        }
    }
    out
}

/// `u z² q₂ / (1 − z²p₂q₂)` as a truncated series.
fn u_geometric(trunc: usize) -> ZSeries {
    let mut out = ZSeries::zero(trunc);
    let mut k = 0usize;
    while 2 + 2 * k <= trunc {
        let mono = ZMonomial {
            p2: k as u16,
            q2: k as u16 + 1,
            u: 1,
        };
        out.add_term(2 + 2 * k, mono, Rational::from_integer(1.into()));
        k += 1;
    }
    out
}

/// Left minus right of the quadratic equation for `B`.
///
/// The residual of the true series vanishes identically; grades within
/// `trunc − 4` are certainly valid (the window generously covers the
/// operator's grade shifts, which all go upward).
pub fn kp_bip_residual(b: &ZSeries) -> ZSeries {
    let trunc = b.trunc();
    let lb = apply_l(b);
    let l2b = apply_l(&lb);
    let l4b = apply_l(&apply_l(&l2b));

    // (1/3)(z d_z − 2 p₂ d_{p₂} − 1) L B
    let mut lhs = z_dz(&lb);
    lhs.add_scaled(&p2_dp2(&lb), &rat_int(-2));
    lhs.add_scaled(&lb, &-Rational::from_integer(1.into()));
    let lhs = lhs.scaled(&rat(1, 3));

    // (1/2) (L²B + u z² q₂/(1−z²p₂q₂))²
    let mut quad_root = l2b;
    quad_root.add_scaled(&u_geometric(trunc), &Rational::from_integer(1.into()));
    let quadratic = quad_root.mul(&quad_root).scaled(&rat(1, 2));

    // u z⁶ (q₂⁵ z⁴ + 2 q₂² z + p₂) / (1 − z²p₂q₂)⁵
    let mut source_top = ZSeries::zero(trunc);
    source_top.add_term(
        10,
        ZMonomial { p2: 0, q2: 5, u: 1 },
        Rational::from_integer(1.into()),
    );
    source_top.add_term(7, ZMonomial { p2: 0, q2: 2, u: 1 }, rat_int(2));
    source_top.add_term(
        6,
        ZMonomial { p2: 1, q2: 0, u: 1 },
        Rational::from_integer(1.into()),
    );
    let source = source_top.mul(&ZSeries::geometric(5, trunc));

    let mut rhs = d2_p2(b);
    rhs.add_scaled(&l4b, &rat(1, 12));
    rhs.add_scaled(&quadratic, &Rational::from_integer(1.into()));
    rhs.add_scaled(&source, &Rational::from_integer(1.into()));

    let mut residual = lhs;
    residual.add_scaled(&rhs, &-Rational::from_integer(1.into()));
    residual
}

/// Spot-check of the inverse change of variables: undoing `Ψ` on `B` must
/// recover the solved series blocks.
///
/// The inverse sends `z ↦ s^{1/6} t Q`, `p₂ ↦ ν•/(s^{1/6} t Q)`,
/// `q₂ ↦ ν∘/(s^{1/6} t Q)` and `u ↦ s^{−1/2}` with `Q = 1 − ν•ν∘`, so a
/// monomial `z^m p₂^i q₂^j u^r` lands on
/// `t^{m−i−j} ν•^i ν∘^j Q^{m−i−j} s^{(m−i−j)/6 − r/2}`.  Recovering the
/// series further multiplies by `s` and subtracts
/// `(1/2)·log(1/(1−ν•ν∘))`.  Fractional `s`-powers must cancel, the `t⁰`
/// block must vanish (up to the truncation's reach, `a + b ≤ 4` here), and
/// the `t³`/`t⁶` blocks must equal the solved `J₃`/`J₆`.
///
/// Recovering the grade-`e` block restricted to `a + b ≤ e` needs the `z`
/// truncation to reach `2e` (a `z^m p₂^i q₂^j` monomial lands at grade
/// `m − i − j`), so each block is compared only when `b.trunc() ≥ 2e`; a
/// truncation too short for even the grade-3 block is an error.
pub fn check_round_trip(state: &SolveState, b: &ZSeries) -> Result<()> {
    if b.trunc() < 6 {
        return Err(Error::Verification(
            "round trip needs the B series through z^6".into(),
        ));
    }
    // (t-grade, a, b) → coefficient, with the s-exponent stored in sixths
    // alongside: map keyed by (t, a, b, 6·s-exponent).
    let mut recovered: FxHashMap<(usize, u16, u16, i32), Rational> = FxHashMap::default();
    for (m, block) in b.coeffs.iter().enumerate() {
        for (mono, c) in block {
            let te = m - (mono.p2 + mono.q2) as usize; // support invariant: ≥ 0
            let s6 = te as i32 - 3 * mono.u + 6; // the extra s lifts by 6/6
            // expand Q^te = (1 − ν•ν∘)^te
            for k in 0..=te as u64 {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let coeff = c * rat_int(sign) * Rational::from_integer(binomial(te as u64, k));
                let key = (te, mono.p2 + k as u16, mono.q2 + k as u16, s6);
                let entry = recovered.entry(key).or_insert_with(Rational::zero);
                *entry += coeff;
                if entry.is_zero() {
                    recovered.remove(&key);
                }
            }
        }
    }
    // subtract (1/2) log(1/(1−ν•ν∘)) = Σ_k (ν•ν∘)^k/(2k) at t⁰, s⁰
    for k in 1..=(b.trunc() / 2) as i64 {
        let key = (0, k as u16, k as u16, 0);
        let entry = recovered.entry(key).or_insert_with(Rational::zero);
        *entry -= rat(1, 2 * k);
        if entry.is_zero() {
            recovered.remove(&key);
        }
    }

    for (&(te, a, bb, s6), c) in &recovered {
        if te == 0 && a + bb <= 4 && !c.is_zero() {
            return Err(Error::Verification(format!(
                "inverse substitution leaves a t⁰ term at ν•^{a} ν∘^{bb}"
            )));
        }
        if te > 0 && (a + bb) as usize <= te && s6 % 6 != 0 {
            return Err(Error::Verification(format!(
                "fractional s-exponent {s6}/6 survives at t^{te} ν•^{a} ν∘^{bb}"
            )));
        }
    }

    for te in [3usize, 6].into_iter().filter(|te| 2 * te <= b.trunc()) {
        let mut block = Poly::zero();
        for (&(t, a, bb, s6), c) in &recovered {
            if t == te && (a + bb) as usize <= te {
                block.add_term(Monomial::new(a, bb, (s6 / 6) as u16), c.clone());
            }
        }
        let want = state.j_poly(te)?;
        if &block != want {
            return Err(Error::Verification(format!(
                "inverse substitution does not recover the grade-{te} block"
            )));
        }
    }
    Ok(())
}
