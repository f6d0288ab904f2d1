//! Dense packed storage for integer polynomials whose monomials satisfy the
//! congruence a − b ≡ r (mod 3).
//!
//! Every polynomial met by the solver's quadratic term lives on such a
//! congruence class (each operator application shifts the class by one), so a
//! packed triangle that skips the two empty classes stores a third of the
//! cells a naive dense layout would.  Cells are GMP integers so the hot
//! accumulation loop compiles down to `mpz_addmul`; the packing is arranged so
//! that the innermost loop walks an input row and the output row with stride
//! one.

use num_bigint::{BigInt, Sign};
use rug::integer::Order;
use rug::Integer;
use std::cmp::Ordering;

use crate::poly::IntPoly;
use crate::{Monomial, Poly, Rational};

/// Smallest non-negative b with a − b ≡ r (mod 3).
fn b_floor(a: usize, r: usize) -> usize {
    (a + 3 - r) % 3
}

/// a − b reduced mod 3.
pub(crate) fn residue_of(a: usize, b: usize) -> usize {
    (a + 3 - b % 3) % 3
}

/// Dense triangle of integer coefficients for monomials ν•ᵃν∘ᵇ·sᵍ with
/// a + b ≤ deg, g ≤ gmax and a − b ≡ r (mod 3).
///
/// Layout: genus planes of size `plane`, each plane a concatenation of rows
/// indexed by a; row a holds b = b₀(a), b₀(a)+3, … packed contiguously.
#[derive(Debug)]
pub(crate) struct Grid {
    deg: usize,
    gmax: usize,
    r: usize,
    row_off: Vec<usize>,
    row_len: Vec<usize>,
    plane: usize,
    cells: Vec<Integer>,
}

impl Grid {
    pub(crate) fn zeros(deg: usize, gmax: usize, r: usize) -> Grid {
        assert!(r < 3);
        let mut row_off = Vec::with_capacity(deg + 1);
        let mut row_len = Vec::with_capacity(deg + 1);
        let mut plane = 0usize;
        for a in 0..=deg {
            let b0 = b_floor(a, r);
            let len = if a + b0 <= deg {
                (deg - a - b0) / 3 + 1
            } else {
                0
            };
            row_off.push(plane);
            row_len.push(len);
            plane += len;
        }
        let cells = std::iter::repeat_with(Integer::new)
            .take(plane * (gmax + 1))
            .collect();
        Grid {
            deg,
            gmax,
            r,
            row_off,
            row_len,
            plane,
            cells,
        }
    }

    pub(crate) fn residue(&self) -> usize {
        self.r
    }

    pub(crate) fn degree(&self) -> usize {
        self.deg
    }

    pub(crate) fn max_genus(&self) -> usize {
        self.gmax
    }

    fn idx(&self, g: usize, a: usize, b: usize) -> usize {
        debug_assert!(a + b <= self.deg && g <= self.gmax);
        debug_assert_eq!(residue_of(a, b), self.r);
        g * self.plane + self.row_off[a] + (b - b_floor(a, self.r)) / 3
    }

    /// Packs a sparse integer polynomial; every monomial must satisfy
    /// a − b ≡ r (mod 3).  Bounds are taken from the actual support.
    pub(crate) fn from_int_poly(p: &IntPoly, r: usize) -> Grid {
        let mut deg = 0usize;
        let mut gmax = 0usize;
        for m in p.terms.keys() {
            assert_eq!(
                residue_of(m.a as usize, m.b as usize),
                r,
                "monomial {m} off the declared congruence class"
            );
            deg = deg.max(m.a as usize + m.b as usize);
            gmax = gmax.max(m.g as usize);
        }
        let mut grid = Grid::zeros(deg, gmax, r);
        for (m, c) in p.terms.iter() {
            let i = grid.idx(m.g as usize, m.a as usize, m.b as usize);
            grid.cells[i] = bigint_to_rug(c);
        }
        grid
    }

    /// Unpacks to a sparse integer polynomial (zero cells skipped).
    pub(crate) fn to_int_poly(&self) -> IntPoly {
        let mut out = IntPoly::zero();
        self.for_each_nonzero(|g, a, b, c| {
            out.add_term(Monomial::new(a as u16, b as u16, g as u16), rug_to_bigint(c));
        });
        out
    }

    /// Unpacks to a rational polynomial, dividing every cell by `den`.
    pub(crate) fn to_poly(&self, den: &BigInt) -> Poly {
        let mut out = Poly::zero();
        self.for_each_nonzero(|g, a, b, c| {
            out.add_term(
                Monomial::new(a as u16, b as u16, g as u16),
                Rational::new(rug_to_bigint(c), den.clone()),
            );
        });
        out
    }

    fn for_each_nonzero(&self, mut f: impl FnMut(usize, usize, usize, &Integer)) {
        for g in 0..=self.gmax {
            for a in 0..=self.deg {
                let b0 = b_floor(a, self.r);
                let base = g * self.plane + self.row_off[a];
                for k in 0..self.row_len[a] {
                    let c = &self.cells[base + k];
                    if c.cmp0() != Ordering::Equal {
                        f(g, a, b0 + 3 * k, c);
                    }
                }
            }
        }
    }

    /// Accumulates the product p · q into self.  Terms whose genus or total
    /// ν-degree exceed this grid's bounds are discarded (callers size the
    /// target so that nothing relevant is clipped).
    pub(crate) fn add_conv(&mut self, p: &Grid, q: &Grid) {
        assert_eq!((p.r + q.r) % 3, self.r, "congruence classes do not add up");
        for gp in 0..=p.gmax.min(self.gmax) {
            for gq in 0..=q.gmax.min(self.gmax - gp) {
                let gc = gp + gq;
                for ap in 0..=p.deg {
                    let lenp = p.row_len[ap];
                    if lenp == 0 {
                        continue;
                    }
                    let b0p = b_floor(ap, p.r);
                    let prow = gp * p.plane + p.row_off[ap];
                    for kp in 0..lenp {
                        let cp = &p.cells[prow + kp];
                        if cp.cmp0() == Ordering::Equal {
                            continue;
                        }
                        let bp = b0p + 3 * kp;
                        if ap + bp > self.deg {
                            break;
                        }
                        let aq_top = q.deg.min(self.deg - ap - bp);
                        for aq in 0..=aq_top {
                            let lenq = q.row_len[aq];
                            if lenq == 0 {
                                continue;
                            }
                            let ac = ap + aq;
                            let bc_first = bp + b_floor(aq, q.r);
                            if ac + bc_first > self.deg {
                                continue;
                            }
                            // Output row ac is packed in steps of 3 starting
                            // at b_floor(ac); bc_first lies on that ladder, so
                            // the two rows advance in lockstep.
                            let j0 = (bc_first - b_floor(ac, self.r)) / 3;
                            let kmax = lenq.min(self.row_len[ac] - j0);
                            let cbase = gc * self.plane + self.row_off[ac] + j0;
                            let qbase = gq * q.plane + q.row_off[aq];
                            for k in 0..kmax {
                                // `c += &a * &b` lowers to mpz_addmul.
                                self.cells[cbase + k] += cp * &q.cells[qbase + k];
                            }
                        }
                    }
                }
            }
        }
    }

    /// Largest genus carrying a nonzero cell, if any.
    #[cfg(test)]
    pub(crate) fn top_genus(&self) -> Option<usize> {
        (0..=self.gmax).rev().find(|&g| {
            self.cells[g * self.plane..(g + 1) * self.plane]
                .iter()
                .any(|c| c.cmp0() != Ordering::Equal)
        })
    }
}

fn bigint_to_rug(x: &BigInt) -> Integer {
    let (sign, bytes) = x.to_bytes_le();
    let mut v = Integer::from_digits(&bytes, Order::Lsf);
    if sign == Sign::Minus {
        v = -v;
    }
    v
}

fn rug_to_bigint(x: &Integer) -> BigInt {
    let sign = match x.cmp0() {
        Ordering::Less => Sign::Minus,
        Ordering::Equal => Sign::NoSign,
        Ordering::Greater => Sign::Plus,
    };
    BigInt::from_bytes_le(sign, &x.to_digits::<u8>(Order::Lsf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::SplitMix64;

    fn random_congruent_int_poly(
        rng: &mut SplitMix64,
        r: usize,
        max_deg: usize,
        max_g: usize,
        terms: usize,
    ) -> IntPoly {
        let mut p = IntPoly::zero();
        let mut placed = 0;
        while placed < terms {
            let a = rng.next_i64_in(0, max_deg as i64) as usize;
            let bmax = max_deg - a;
            let b0 = b_floor(a, r);
            if b0 > bmax {
                continue;
            }
            let b = b0 + 3 * (rng.next_i64_in(0, ((bmax - b0) / 3) as i64) as usize);
            let g = rng.next_i64_in(0, max_g as i64) as u16;
            let c = rng.next_i64_in(-99, 99);
            if c == 0 {
                continue;
            }
            p.add_term(Monomial::new(a as u16, b as u16, g), BigInt::from(c));
            placed += 1;
        }
        p
    }

    #[test]
    fn round_trip_preserves_terms() {
        let mut rng = SplitMix64::new(11);
        for r in 0..3 {
            let p = random_congruent_int_poly(&mut rng, r, 17, 3, 40);
            let grid = Grid::from_int_poly(&p, r);
            assert_eq!(grid.to_int_poly(), p);
        }
    }

    #[test]
    fn convolution_matches_sparse_product() {
        let mut rng = SplitMix64::new(12);
        for (rp, rq) in [(2, 2), (0, 1), (1, 2), (0, 0)] {
            let p = random_congruent_int_poly(&mut rng, rp, 13, 2, 25);
            let q = random_congruent_int_poly(&mut rng, rq, 11, 2, 25);
            let gp = Grid::from_int_poly(&p, rp);
            let gq = Grid::from_int_poly(&q, rq);
            let mut c = Grid::zeros(24, 4, (rp + rq) % 3);
            c.add_conv(&gp, &gq);
            assert_eq!(c.to_int_poly(), p.mul_poly(&q));
        }
    }

    #[test]
    fn convolution_accumulates() {
        let mut rng = SplitMix64::new(13);
        let p = random_congruent_int_poly(&mut rng, 2, 9, 1, 12);
        let q = random_congruent_int_poly(&mut rng, 2, 8, 1, 12);
        let u = random_congruent_int_poly(&mut rng, 1, 7, 1, 12);
        let v = random_congruent_int_poly(&mut rng, 0, 9, 1, 12);
        let mut c = Grid::zeros(17, 2, 1);
        c.add_conv(&Grid::from_int_poly(&p, 2), &Grid::from_int_poly(&q, 2));
        c.add_conv(&Grid::from_int_poly(&u, 1), &Grid::from_int_poly(&v, 0));
        let mut want = p.mul_poly(&q);
        want.add_scaled(&u.mul_poly(&v), &BigInt::from(1));
        assert_eq!(c.to_int_poly(), want);
    }

    #[test]
    fn clipping_discards_out_of_range_terms() {
        let mut p = IntPoly::zero();
        p.add_term(Monomial::new(2, 0, 0), BigInt::from(3));
        p.add_term(Monomial::new(5, 0, 2), BigInt::from(7));
        let g = Grid::from_int_poly(&p, 2);
        let mut c = Grid::zeros(6, 2, 1);
        c.add_conv(&g, &g);
        // Only (2,0)·(2,0) fits: degree 4, genus 0.  The cross terms reach
        // degree 7 or 10 and genus up to 4, all clipped.
        let mut want = IntPoly::zero();
        want.add_term(Monomial::new(4, 0, 0), BigInt::from(9));
        assert_eq!(c.to_int_poly(), want);
    }

    #[test]
    fn to_poly_divides_by_denominator() {
        let mut p = IntPoly::zero();
        p.add_term(Monomial::new(1, 0, 0), BigInt::from(6));
        p.add_term(Monomial::new(0, 2, 1), BigInt::from(-9));
        let grid = Grid::from_int_poly(&p, 1);
        let rat = grid.to_poly(&BigInt::from(12));
        assert_eq!(rat.coeff(Monomial::new(1, 0, 0)), crate::rational::rat(1, 2));
        assert_eq!(rat.coeff(Monomial::new(0, 2, 1)), crate::rational::rat(-3, 4));
        assert_eq!(rat.len(), 2);
    }

    #[test]
    fn top_genus_reports_highest_nonzero_plane() {
        let mut p = IntPoly::zero();
        p.add_term(Monomial::new(0, 0, 0), BigInt::from(1));
        p.add_term(Monomial::new(3, 0, 2), BigInt::from(4));
        let g = Grid::from_int_poly(&p, 0);
        assert_eq!(g.top_genus(), Some(2));
        let z = Grid::zeros(3, 3, 0);
        assert_eq!(z.top_genus(), None);
    }

    #[test]
    fn big_coefficient_round_trip() {
        let big: BigInt = BigInt::from(1_234_567_890_123_456_789i64).pow(7u32);
        let mut p = IntPoly::zero();
        p.add_term(Monomial::new(4, 1, 3), -big.clone());
        p.add_term(Monomial::new(1, 4, 0), big);
        let g = Grid::from_int_poly(&p, 0);
        assert_eq!(g.to_int_poly(), p);
    }
}
