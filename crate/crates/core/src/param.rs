//! An independent oracle for the planar rooted series, built from a
//! rational parametrization rather than the defining equation.
//!
//! At fixed rational weights `(ν•, ν∘)` the planar rooted generating
//! function `P(t) = Σ_n vecP_n t^n` (with `vecP_n` the rooted polynomial of
//! size `n` evaluated at the weights) admits a rational parametrization:
//! three auxiliary series `(A•, A∘, G)` satisfy an algebraic system in
//! which `t` appears polynomially, and `P` is a fixed rational expression
//! in them.  Working in blow-up coordinates `(A•, A∘, G) = (t·u, t·v,
//! t·w)` turns the system into three relations `F₁ = F₂ = F₃ = 0` for
//! power series `(u, v, w)` with *nonzero* constant terms:
//!
//! ```text
//! F₁ = ν∘·Δ + v² − 2uw + t(8uw² − 2wv² − u²v)
//! F₂ = ν•·Δ + u² − 2vw + t(8vw² − 2wu² − v²u)
//! F₃ = w·(B₄ + tB₅ + t²B₆) + κ·Δ²,        Δ = 4w² − uv,  κ = (1−ν•ν∘)³
//! ```
//!
//! with
//!
//! ```text
//! B₄ = −16w⁴ + 12uvw² − 2(u³+v³)w
//! B₅ = 32w⁵ − 16uvw³ + 4(u³+v³)w² − 6u²v²w + uv(u³+v³)
//! B₆ = 4u²v²w² − 2uv(u³+v³)w + u³v³
//! ```
//!
//! The admissible constant terms `(u₀, v₀, w₀)` are indexed by the rational
//! roots `σ` of the quartic `16S − 8Q σ − 2S σ³ + Q σ⁴` (`S = ν• + ν∘²`,
//! `Q = 1 − ν•ν∘`) through
//!
//! ```text
//! ρ = (4ν∘ + σ²)/(ν∘σ + 2),   w₀ = κ(4 − ρσ)²/(16 − 12ρσ + 2(ρ³+σ³)),
//! u₀ = ρw₀,   v₀ = σw₀.
//! ```
//!
//! Each admissible direction is lifted to power series by Newton iteration
//! with precision doubling (exact rationals throughout), and
//!
//! ```text
//! P = −t · w·W(u,v,w,t) / (Δ³ · (1−ν•ν∘)⁶)
//! ```
//!
//! for an explicit polynomial `W` of weighted degree 8..11 (see
//! [`wb_series`]).  The combinatorial branch is selected *a posteriori*:
//! `[t⁰]P = 0` and `[t¹]P = 2 + 4ν∘³ + 4ν•³ + 6ν•ν∘`; no formula for the
//! right root is assumed.  On the singular locus `ν•ν∘ = 1` the
//! parametrization degenerates (`κ = 0`), and [`rooted_series_at`] instead
//! interpolates along the scaling line `c ↦ (cν•, cν∘)` — each series
//! coefficient is a polynomial in `c` — and evaluates at `c = 1`.

use num_traits::Zero;

use crate::rational::{rat_int, Int, Rational};
use crate::solver::SolveState;
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Dense truncated univariate series over the rationals
// ---------------------------------------------------------------------------

/// A power series truncated to a fixed number of coefficients
/// (`coeffs[k] = [t^k]`).
#[derive(Debug, Clone, PartialEq, Eq)]
struct Ser(Vec<Rational>);

impl Ser {
    fn zero(m: usize) -> Ser {
        Ser(vec![Rational::zero(); m])
    }

    fn constant(v: Rational, m: usize) -> Ser {
        let mut s = Ser::zero(m);
        s.0[0] = v;
        s
    }

    fn t(m: usize) -> Ser {
        let mut s = Ser::zero(m);
        if m > 1 {
            s.0[1] = Rational::from_integer(1.into());
        }
        s
    }

    fn len(&self) -> usize {
        self.0.len()
    }

    fn truncated(&self, m: usize) -> Ser {
        let mut v = self.0[..m.min(self.len())].to_vec();
        v.resize(m, Rational::zero());
        Ser(v)
    }

    fn mul(&self, other: &Ser) -> Ser {
        let m = self.len().min(other.len());
        let mut out = Ser::zero(m);
        for (i, x) in self.0.iter().enumerate().take(m) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.0.iter().enumerate().take(m - i) {
                if !y.is_zero() {
                    out.0[i + j] += x * y;
                }
            }
        }
        out
    }

    fn add(mut self, other: &Ser) -> Ser {
        for (x, y) in self.0.iter_mut().zip(&other.0) {
            *x += y;
        }
        self
    }

    fn sub(mut self, other: &Ser) -> Ser {
        for (x, y) in self.0.iter_mut().zip(&other.0) {
            *x -= y;
        }
        self
    }

    fn scale(mut self, k: i64) -> Ser {
        let k = rat_int(k);
        for x in &mut self.0 {
            *x *= &k;
        }
        self
    }

    fn scale_r(mut self, k: &Rational) -> Ser {
        for x in &mut self.0 {
            *x *= k;
        }
        self
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    fn inv(&self) -> Ser {
        assert!(!self.0[0].is_zero(), "inverting a series with [t^0] = 0");
        let m = self.len();
        let mut out = Ser::zero(m);
        out.0[0] = self.0[0].recip();
        for k in 1..m {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !self.0[j].is_zero() {
                    acc += &self.0[j] * &out.0[k - j];
                }
            }
            out.0[k] = -(acc / &self.0[0]);
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }
}

// ---------------------------------------------------------------------------
// The blown-up system and its Jacobian
// ---------------------------------------------------------------------------

/// Shared powers of `(u, v, w)`, computed once per evaluation.
struct Powers {
    t: Ser,
    u: Ser,
    v: Ser,
    w: Ser,
    u2: Ser,
    v2: Ser,
    w2: Ser,
    u3: Ser,
    v3: Ser,
    w3: Ser,
    w4: Ser,
    uv: Ser,
    s3: Ser,
    u2v2: Ser,
    delta: Ser,
}

impl Powers {
    fn new(u: &Ser, v: &Ser, w: &Ser, m: usize) -> Powers {
        let (u, v, w) = (u.truncated(m), v.truncated(m), w.truncated(m));
        let u2 = u.mul(&u);
        let v2 = v.mul(&v);
        let w2 = w.mul(&w);
        let u3 = u2.mul(&u);
        let v3 = v2.mul(&v);
        let w3 = w2.mul(&w);
        let w4 = w2.mul(&w2);
        let uv = u.mul(&v);
        let s3 = u3.clone().add(&v3);
        let u2v2 = u2.mul(&v2);
        let delta = w2.clone().scale(4).sub(&uv);
        Powers {
            t: Ser::t(m),
            u,
            v,
            w,
            u2,
            v2,
            w2,
            u3,
            v3,
            w3,
            w4,
            uv,
            s3,
            u2v2,
            delta,
        }
    }

    /// `B₄ + tB₅ + t²B₆`, the cubic part of the third relation; the
    /// `alt_coefficient` flag switches to an alternative printed reading of
    /// one `B₅` coefficient (adding `12v³w²`), kept only to document its
    /// refutation — branch validation then disagrees with the solver.
    fn b_total(&self, alt_coefficient: bool) -> Ser {
        let b4 = self
            .w4
            .clone()
            .scale(-16)
            .add(&self.uv.mul(&self.w2).scale(12))
            .sub(&self.s3.mul(&self.w).scale(2));
        let mut b5 = self
            .w4
            .mul(&self.w)
            .scale(32)
            .sub(&self.uv.mul(&self.w3).scale(16))
            .add(&self.s3.mul(&self.w2).scale(4))
            .sub(&self.u2v2.mul(&self.w).scale(6))
            .add(&self.uv.mul(&self.s3));
        if alt_coefficient {
            b5 = b5.add(&self.v3.mul(&self.w2).scale(12));
        }
        let b6 = self
            .u2v2
            .mul(&self.w2)
            .scale(4)
            .sub(&self.uv.mul(&self.s3).mul(&self.w).scale(2))
            .add(&self.u3.mul(&self.v3));
        b4.add(&self.t.mul(&b5)).add(&self.t.mul(&self.t).mul(&b6))
    }
}

/// The three relations `(F₁, F₂, F₃)` and `Δ` at precision `m`.
fn blowup_system(
    u: &Ser,
    v: &Ser,
    w: &Ser,
    nb: &Rational,
    nw: &Rational,
    m: usize,
    kappa: &Rational,
    alt: bool,
) -> (Ser, Ser, Ser, Ser) {
    let p = Powers::new(u, v, w, m);
    let c1 = p
        .w
        .mul(&p.v2)
        .scale(-2)
        .add(&p.u.mul(&p.w2).scale(8))
        .sub(&p.u2.mul(&p.v));
    let f1 = p
        .delta
        .clone()
        .scale_r(nw)
        .add(&p.v2)
        .sub(&p.u.mul(&p.w).scale(2))
        .add(&p.t.mul(&c1));
    let c2 = p
        .w
        .mul(&p.u2)
        .scale(-2)
        .add(&p.v.mul(&p.w2).scale(8))
        .sub(&p.v2.mul(&p.u));
    let f2 = p
        .delta
        .clone()
        .scale_r(nb)
        .add(&p.u2)
        .sub(&p.v.mul(&p.w).scale(2))
        .add(&p.t.mul(&c2));
    let f3 = p
        .w
        .mul(&p.b_total(alt))
        .add(&p.delta.mul(&p.delta).scale_r(kappa));
    (f1, f2, f3, p.delta)
}

/// The 3×3 Jacobian `∂(F₁,F₂,F₃)/∂(u,v,w)` at precision `m`.
#[allow(clippy::too_many_arguments)]
fn blowup_jacobian(
    u: &Ser,
    v: &Ser,
    w: &Ser,
    nb: &Rational,
    nw: &Rational,
    m: usize,
    kappa: &Rational,
    alt: bool,
) -> [[Ser; 3]; 3] {
    let p = Powers::new(u, v, w, m);
    let neg = |r: &Rational| -r.clone();

    let d1u = p
        .v
        .clone()
        .scale_r(&neg(nw))
        .sub(&p.w.clone().scale(2))
        .add(&p.t.mul(&p.w2.clone().scale(8).sub(&p.uv.clone().scale(2))));
    let d1v = p
        .u
        .clone()
        .scale_r(&neg(nw))
        .add(&p.v.clone().scale(2))
        .add(&p.t.mul(&p.v.mul(&p.w).scale(-4).sub(&p.u2)));
    let d1w = p
        .w
        .clone()
        .scale_r(&(rat_int(8) * nw))
        .sub(&p.u.clone().scale(2))
        .add(&p.t.mul(&p.v2.clone().scale(-2).add(&p.u.mul(&p.w).scale(16))));

    let d2u = p
        .v
        .clone()
        .scale_r(&neg(nb))
        .add(&p.u.clone().scale(2))
        .add(&p.t.mul(&p.u.mul(&p.w).scale(-4).sub(&p.v2)));
    let d2v = p
        .u
        .clone()
        .scale_r(&neg(nb))
        .sub(&p.w.clone().scale(2))
        .add(&p.t.mul(&p.w2.clone().scale(8).sub(&p.uv.clone().scale(2))));
    let d2w = p
        .w
        .clone()
        .scale_r(&(rat_int(8) * nb))
        .sub(&p.v.clone().scale(2))
        .add(&p.t.mul(&p.u2.clone().scale(-2).add(&p.v.mul(&p.w).scale(16))));

    let v4 = p.v2.mul(&p.v2);
    let u4 = p.u2.mul(&p.u2);
    let two_kappa = rat_int(2) * kappa;

    // ∂/∂u of B₄ + tB₅ + t²B₆
    let du_b4 = p.v.mul(&p.w2).scale(12).sub(&p.u2.mul(&p.w).scale(6));
    let du_b5 = p
        .v
        .mul(&p.w3)
        .scale(-16)
        .add(&p.u2.mul(&p.w2).scale(12))
        .sub(&p.u.mul(&p.v2).mul(&p.w).scale(12))
        .add(&p.u3.mul(&p.v).scale(4).add(&v4));
    let du_b6 = p
        .u
        .mul(&p.v2)
        .mul(&p.w2)
        .scale(8)
        .sub(&p.u3.mul(&p.v).scale(4).add(&v4).mul(&p.w).scale(2))
        .add(&p.u2.mul(&p.v3).scale(3));
    let du_bt = du_b4
        .add(&p.t.mul(&du_b5))
        .add(&p.t.mul(&p.t).mul(&du_b6));
    let d3u = p
        .w
        .mul(&du_bt)
        .sub(&p.delta.mul(&p.v).scale_r(&two_kappa));

    // ∂/∂v — the colour mirror, plus the alternative-coefficient extras
    let dv_b4 = p.u.mul(&p.w2).scale(12).sub(&p.v2.mul(&p.w).scale(6));
    let mut dv_b5 = p
        .u
        .mul(&p.w3)
        .scale(-16)
        .add(&p.v2.mul(&p.w2).scale(12))
        .sub(&p.v.mul(&p.u2).mul(&p.w).scale(12))
        .add(&p.v3.mul(&p.u).scale(4).add(&u4));
    if alt {
        dv_b5 = dv_b5.add(&p.v2.mul(&p.w2).scale(36));
    }
    let dv_b6 = p
        .v
        .mul(&p.u2)
        .mul(&p.w2)
        .scale(8)
        .sub(&p.v3.mul(&p.u).scale(4).add(&u4).mul(&p.w).scale(2))
        .add(&p.v2.mul(&p.u3).scale(3));
    let dv_bt = dv_b4
        .add(&p.t.mul(&dv_b5))
        .add(&p.t.mul(&p.t).mul(&dv_b6));
    let d3v = p
        .w
        .mul(&dv_bt)
        .sub(&p.delta.mul(&p.u).scale_r(&two_kappa));

    // ∂/∂w
    let dw_b4 = p
        .w3
        .clone()
        .scale(-64)
        .add(&p.uv.mul(&p.w).scale(24))
        .sub(&p.s3.clone().scale(2));
    let mut dw_b5 = p
        .w4
        .clone()
        .scale(160)
        .sub(&p.uv.mul(&p.w2).scale(48))
        .add(&p.s3.mul(&p.w).scale(8))
        .sub(&p.u2v2.clone().scale(6));
    if alt {
        dw_b5 = dw_b5.add(&p.v3.mul(&p.w).scale(24));
    }
    let dw_b6 = p
        .u2v2
        .mul(&p.w)
        .scale(8)
        .sub(&p.uv.mul(&p.s3).scale(2));
    let dw_bt = dw_b4
        .add(&p.t.mul(&dw_b5))
        .add(&p.t.mul(&p.t).mul(&dw_b6));
    let d3w = p
        .b_total(alt)
        .add(&p.w.mul(&dw_bt))
        .add(&p.delta.mul(&p.w).scale_r(&(rat_int(16) * kappa)));

    [[d1u, d1v, d1w], [d2u, d2v, d2w], [d3u, d3v, d3w]]
}

/// Solves the 3×3 linear system `J·X = R` over truncated series by
/// Cramer's rule; `None` when the constant term of the determinant
/// vanishes (degenerate direction — no power-series branch exists there).
fn solve3(jac: &[[Ser; 3]; 3], rhs: &[Ser; 3], m: usize) -> Option<[Ser; 3]> {
    let [[a, b, c], [d, e, f], [g, h, i]] = jac.each_ref().map(|row| row.each_ref());
    let mm = |x: &Ser, y: &Ser| x.truncated(m).mul(&y.truncated(m));

    let cof_a = mm(e, i).sub(&mm(f, h));
    let cof_b = mm(f, g).sub(&mm(d, i));
    let cof_c = mm(d, h).sub(&mm(e, g));
    let det = mm(a, &cof_a).add(&mm(b, &cof_b)).add(&mm(c, &cof_c));
    if det.0[0].is_zero() {
        return None;
    }
    let det_inv = det.inv();
    let cof_d = mm(c, h).sub(&mm(b, i));
    let cof_e = mm(a, i).sub(&mm(c, g));
    let cof_f = mm(b, g).sub(&mm(a, h));
    let cof_g = mm(b, f).sub(&mm(c, e));
    let cof_h = mm(c, d).sub(&mm(a, f));
    let cof_i = mm(a, e).sub(&mm(b, d));

    let combine = |p: &Ser, q: &Ser, r: &Ser| {
        det_inv.mul(
            &mm(p, &rhs[0].truncated(m))
                .add(&mm(q, &rhs[1].truncated(m)))
                .add(&mm(r, &rhs[2].truncated(m))),
        )
    };
    Some([
        combine(&cof_a, &cof_d, &cof_g),
        combine(&cof_b, &cof_e, &cof_h),
        combine(&cof_c, &cof_f, &cof_i),
    ])
}

/// The numerator polynomial `W(u, v, w, t)` of the rooted series, graded by
/// weighted degree 8 through 11 in `(u, v, w)`.
fn wb_series(u: &Ser, v: &Ser, w: &Ser, m: usize) -> Ser {
    let t = Ser::t(m);
    let (u, v, w) = (u.truncated(m), v.truncated(m), w.truncated(m));
    let pow = |base: &Ser, k: usize| {
        let mut acc = Ser::constant(Rational::from_integer(1.into()), m);
        for _ in 0..k {
            acc = acc.mul(base);
        }
        acc
    };
    // symmetric combinations u^a v^b + u^b v^a (halved when a = b)
    let sym = |a: usize, b: usize| {
        if a == b {
            pow(&u, a).mul(&pow(&v, b))
        } else {
            pow(&u, a).mul(&pow(&v, b)).add(&pow(&u, b).mul(&pow(&v, a)))
        }
    };
    let uv = u.mul(&v);
    let s3 = sym(3, 0);
    let s6 = sym(6, 0);
    let u2v2 = sym(2, 2);

    let wb8 = pow(&w, 8)
        .scale(-128)
        .add(&s3.mul(&pow(&w, 5)).scale(16))
        .add(&u2v2.mul(&pow(&w, 4)).scale(72))
        .sub(&sym(4, 1).mul(&pow(&w, 3)).scale(36))
        .add(&s6.clone().scale(4).add(&sym(3, 3).scale(8)).mul(&pow(&w, 2)));
    let wb9 = pow(&w, 9)
        .scale(384)
        .add(&uv.mul(&pow(&w, 7)).scale(480))
        .sub(&s3.mul(&pow(&w, 6)).scale(160))
        .sub(&u2v2.mul(&pow(&w, 5)).scale(312))
        .add(&sym(4, 1).mul(&pow(&w, 4)).scale(112))
        .add(
            &s6.clone()
                .scale(-8)
                .sub(&sym(3, 3).scale(70))
                .mul(&pow(&w, 3)),
        )
        .add(&sym(5, 2).mul(&pow(&w, 2)).scale(30))
        .add(&sym(7, 1).scale(-4).sub(&sym(4, 4).scale(8)).mul(&w));
    let wb10 = s3
        .mul(&pow(&w, 7))
        .scale(512)
        .sub(&u2v2.mul(&pow(&w, 6)).scale(96))
        .sub(&sym(4, 1).mul(&pow(&w, 5)).scale(240))
        .add(
            &s6.clone()
                .scale(-32)
                .add(&sym(3, 3).scale(32))
                .mul(&pow(&w, 4)),
        )
        .sub(&sym(5, 2).mul(&pow(&w, 3)).scale(20))
        .add(&sym(7, 1).scale(24).add(&sym(4, 4).scale(78)).mul(&pow(&w, 2)))
        .sub(&sym(6, 3).mul(&w).scale(12))
        .sub(&sym(8, 2).add(&sym(5, 5).scale(2)));
    let wb11 = s6
        .mul(&pow(&w, 5))
        .scale(64)
        .sub(&sym(5, 2).mul(&pow(&w, 4)).scale(32))
        .add(
            &sym(7, 1)
                .scale(-32)
                .sub(&sym(4, 4).scale(16))
                .mul(&pow(&w, 3)),
        )
        .add(&sym(6, 3).mul(&pow(&w, 2)).scale(28))
        .add(&sym(8, 2).scale(2).sub(&sym(5, 5).scale(8)).mul(&w))
        .sub(&sym(7, 4));

    wb8.add(&t.mul(&wb9))
        .add(&t.mul(&t).mul(&wb10))
        .add(&t.mul(&t).mul(&t).mul(&wb11))
}

// ---------------------------------------------------------------------------
// Rational roots of the direction quartic
// ---------------------------------------------------------------------------

fn divisors(n: &Int) -> Vec<Int> {
    let n = num_traits::Signed::abs(n);
    let mut out = Vec::new();
    let mut d = Int::from(1);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let q = &n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out
}

/// All rational roots of `Σ coeffs[k]·xᵏ`, by the rational-root theorem.
fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let den = coeffs
        .iter()
        .fold(Int::from(1), |acc, c| num_integer::lcm(acc, c.denom().clone()));
    let mut ints: Vec<Int> = coeffs.iter().map(|c| (c * &den).to_integer()).collect();
    while ints.last().is_some_and(Zero::is_zero) {
        ints.pop();
    }
    let mut roots = Vec::new();
    let mut shift = 0;
    while ints.first().is_some_and(Zero::is_zero) {
        ints.remove(0);
        shift += 1;
    }
    if shift > 0 {
        roots.push(Rational::zero());
    }
    if ints.is_empty() {
        return roots;
    }
    let eval = |x: &Rational| -> Rational {
        ints.iter().rev().fold(Rational::zero(), |acc, c| {
            acc * x + Rational::from_integer(c.clone())
        })
    };
    for p in divisors(&ints[0]) {
        for q in divisors(ints.last().expect("nonempty")) {
            let candidates = [
                Rational::new(p.clone(), q.clone()),
                Rational::new(-p.clone(), q.clone()),
            ];
            for root in candidates {
                if eval(&root).is_zero() && !roots.contains(&root) {
                    roots.push(root);
                }
            }
        }
    }
    roots.sort();
    roots
}

// ---------------------------------------------------------------------------
// Newton lifting and branch selection
// ---------------------------------------------------------------------------

/// Newton iteration with precision doubling from the constant solution
/// `(u₀, v₀, w₀)`; returns the lifted triple, or `None` when the direction
/// is degenerate or fails to satisfy the full system.
#[allow(clippy::too_many_arguments)]
fn lift_direction(
    u0: &Rational,
    v0: &Rational,
    w0: &Rational,
    nb: &Rational,
    nw: &Rational,
    n: usize,
    kappa: &Rational,
    alt: bool,
) -> Option<(Ser, Ser, Ser)> {
    let m = n + 1;
    let mut u = Ser::constant(u0.clone(), m);
    let mut v = Ser::constant(v0.clone(), m);
    let mut w = Ser::constant(w0.clone(), m);
    let mut prec = 1usize;
    while prec < m {
        prec = (2 * prec).min(m);
        let (f1, f2, f3, _) = blowup_system(&u, &v, &w, nb, nw, prec, kappa, alt);
        let jac = blowup_jacobian(&u, &v, &w, nb, nw, prec, kappa, alt);
        let x = solve3(&jac, &[f1, f2, f3], prec)?;
        for (target, delta) in [(&mut u, &x[0]), (&mut v, &x[1]), (&mut w, &x[2])] {
            for k in 0..prec {
                target.0[k] -= &delta.0[k];
            }
        }
    }
    let (f1, f2, f3, _) = blowup_system(&u, &v, &w, nb, nw, m, kappa, alt);
    (f1.is_zero() && f2.is_zero() && f3.is_zero()).then_some((u, v, w))
}

/// One lifted branch of the parametrization.
#[derive(Debug, Clone)]
pub struct Branch {
    /// The direction root `σ` the branch grew from.
    pub sigma: Rational,
    /// `[t⁰..tᴺ]` of the rooted series at the branch.
    pub series: Vec<Rational>,
}

/// `[t¹]` of the rooted series: `2 + 4ν∘³ + 4ν•³ + 6ν•ν∘`.
pub fn first_coefficient(nb: &Rational, nw: &Rational) -> Rational {
    rat_int(2) + (nw * nw * nw + nb * nb * nb) * rat_int(4) + nb * nw * rat_int(6)
}

fn param_oracle_impl(
    nb: &Rational,
    nw: &Rational,
    n: usize,
    alt: bool,
) -> Result<Vec<Branch>> {
    let product = nb * nw;
    let q = Rational::from_integer(1.into()) - &product;
    if q.is_zero() {
        return Err(Error::DegenerateParametrisation(
            nb.to_string(),
            nw.to_string(),
            "on the locus nu_b nu_w = 1 the leading coefficients collapse".into(),
        ));
    }
    let s = nb + nw * nw;
    let kappa = &q * &q * &q;
    let quartic = [
        &s * rat_int(16),
        &q * rat_int(-8),
        Rational::zero(),
        &s * rat_int(-2),
        q.clone(),
    ];
    let target1 = first_coefficient(nb, nw);
    let m = n + 1;
    let mut branches = Vec::new();
    for sigma in rational_roots(&quartic) {
        let den = nw * &sigma + rat_int(2);
        if den.is_zero() {
            continue;
        }
        let rho = (nw * rat_int(4) + &sigma * &sigma) / den;
        let wden = rat_int(16) - &rho * &sigma * rat_int(12)
            + (&rho * &rho * &rho + &sigma * &sigma * &sigma) * rat_int(2);
        if wden.is_zero() {
            continue;
        }
        let base = rat_int(4) - &rho * &sigma;
        let w0 = &kappa * &base * &base / wden;
        if w0.is_zero() {
            continue;
        }
        let u0 = &rho * &w0;
        let v0 = &sigma * &w0;
        // the constant terms must already satisfy the t = 0 system
        let (f1, f2, f3, _) = blowup_system(
            &Ser::constant(u0.clone(), 1),
            &Ser::constant(v0.clone(), 1),
            &Ser::constant(w0.clone(), 1),
            nb,
            nw,
            1,
            &kappa,
            alt,
        );
        if !(f1.is_zero() && f2.is_zero() && f3.is_zero()) {
            continue;
        }
        let Some((u, v, w)) = lift_direction(&u0, &v0, &w0, nb, nw, n, &kappa, alt) else {
            continue;
        };
        let (_, _, _, delta) = blowup_system(&u, &v, &w, nb, nw, m, &kappa, alt);
        if delta.0[0].is_zero() {
            continue;
        }
        let wb = wb_series(&u, &v, &w, m);
        let delta3_inv = delta.mul(&delta).mul(&delta).inv();
        let q6 = &q * &q * &q * &q * &q * &q;
        let core = w
            .mul(&wb)
            .mul(&delta3_inv)
            .scale_r(&(-q6.recip()));
        // the series is t · core
        let mut series = vec![Rational::zero()];
        series.extend_from_slice(&core.0[..m - 1]);
        if n >= 1 && series[1] != target1 {
            continue;
        }
        branches.push(Branch {
            sigma,
            series,
        });
    }
    Ok(branches)
}

/// All branches of the parametrization at `(ν•, ν∘)` passing the selection
/// criterion (`[t⁰] = 0` and the exact `[t¹]` value), with their series
/// through `tᴺ`.
pub fn param_oracle(nb: &Rational, nw: &Rational, n: usize) -> Result<Vec<Branch>> {
    param_oracle_impl(nb, nw, n, false)
}

/// The rooted planar series `[t⁰..tᴺ]` at `(ν•, ν∘)` from the
/// parametrization alone.
///
/// Off the singular locus this demands exactly one surviving branch.  On
/// `ν•ν∘ = 1` the values are recovered by interpolation along the scaling
/// line `c ↦ (cν•, cν∘)`: each coefficient is a polynomial of degree at
/// most `3N` in `c`, so `3N + 1` integer scalings determine it exactly.
pub fn rooted_series_at(nb: &Rational, nw: &Rational, n: usize) -> Result<Vec<Rational>> {
    if !(nb * nw - rat_int(1)).is_zero() {
        let branches = param_oracle(nb, nw, n)?;
        if branches.is_empty() {
            return Err(Error::BranchSelection(nb.to_string(), nw.to_string()));
        }
        let [branch] = branches.as_slice() else {
            return Err(Error::Verification(format!(
                "expected a unique parametrization branch at ({nb}, {nw}); found {}",
                branches.len()
            )));
        };
        return Ok(branch.series.clone());
    }
    let scalings: Vec<Rational> = (2..).map(rat_int).take(3 * n + 1).collect();
    let mut columns = Vec::with_capacity(scalings.len());
    for c in &scalings {
        let branches = param_oracle(&(nb * c), &(nw * c), n)?;
        if branches.is_empty() {
            return Err(Error::BranchSelection(
                (nb * c).to_string(),
                (nw * c).to_string(),
            ));
        }
        let [branch] = branches.as_slice() else {
            return Err(Error::Verification(format!(
                "scaling point {c} does not select a unique branch"
            )));
        };
        columns.push(branch.series.clone());
    }
    // Lagrange evaluation at c = 1
    let mut weights = Vec::with_capacity(scalings.len());
    for (i, xi) in scalings.iter().enumerate() {
        let mut li = Rational::from_integer(1.into());
        for (j, xj) in scalings.iter().enumerate() {
            if i != j {
                li *= (rat_int(1) - xj) / (xi - xj);
            }
        }
        weights.push(li);
    }
    Ok((0..=n)
        .map(|k| {
            columns
                .iter()
                .zip(&weights)
                .fold(Rational::zero(), |acc, (col, w)| acc + &col[k] * w)
        })
        .collect())
}

/// The same series straight from the solver, for comparison: the rooted
/// genus-zero polynomials evaluated at `(ν•, ν∘)`.
pub fn solver_reference(
    state: &SolveState,
    nb: &Rational,
    nw: &Rational,
    n: usize,
) -> Result<Vec<Rational>> {
    let zero = Rational::zero();
    let mut out = vec![Rational::zero()];
    for k in 1..=n {
        out.push(state.rooted_polynomial(k, 0)?.eval(nb, nw, &zero));
    }
    Ok(out)
}
