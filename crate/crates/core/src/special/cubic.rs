//! Uncoloured rooted cubic maps, counted by size and genus.
//!
//! The numbers `M[n, g]` of rooted cubic maps with `2n` vertices and genus
//! `g` obey the Goulden–Jackson recurrence
//!
//! ```text
//! (n+1) M[n,g] = 4n(3n−2)(3n−4) M[n−2,g−1]
//!              + 4 Σ_{i+j=n−2} Σ_{h+k=g} (3i+2)(3j+2) M[i,h] M[j,k]
//! ```
//!
//! seeded by `M[0,0] = 1` and `M[−1,0] = −1/2` (all other `n ≤ 0` or `g < 0`
//! vanish).  They tie into the two-colour polynomials in three independent
//! ways, each exposed here:
//!
//! * the monochromatic specialisation: the all-white coefficient of a rooted
//!   two-colour polynomial equals `M[n, g]`;
//! * the planar closed form `M[n,0] = 2·8ⁿ/((n+1)(n+2)) · C(3n/2, n)`;
//! * a quadratic ODE for `R = Σ M[n,g] t^{3n+2} s^g`, checked as a Laurent
//!   truncation by [`ode_residual`].

use num_traits::Zero;
use rustc_hash::FxHashMap;

use crate::rational::{binomial_rat, int, rat, rat_int, Rational};

/// Table of rooted cubic map counts `M[n, g]`, filled by the recurrence up
/// front so that lookups are infallible.
#[derive(Debug, Clone)]
pub struct RootedCubicTable {
    max_n: i64,
    max_g: i64,
    values: FxHashMap<(i64, i64), Rational>,
}

impl RootedCubicTable {
    /// Fills the table for `0 < n ≤ max_n`, `0 ≤ g ≤ max_g`.
    pub fn new(max_n: usize, max_g: usize) -> Self {
        let (max_n, max_g) = (max_n as i64, max_g as i64);
        let mut table = RootedCubicTable {
            max_n,
            max_g,
            values: FxHashMap::default(),
        };
        for n in 1..=max_n {
            for g in 0..=max_g {
                let mut acc = rat_int(4 * n * (3 * n - 2) * (3 * n - 4)) * table.get(n - 2, g - 1);
                for i in -1..n {
                    let j = n - 2 - i;
                    for h in 0..=g {
                        let pair = table.get(i, h) * table.get(j, g - h);
                        if !pair.is_zero() {
                            acc += rat_int(4 * (3 * i + 2) * (3 * j + 2)) * pair;
                        }
                    }
                }
                table.values.insert((n, g), acc / rat_int(n + 1));
            }
        }
        table
    }

    /// `M[n, g]`, including the boundary conventions for `n ≤ 0` and
    /// `g < 0`.
    ///
    /// # Panics
    ///
    /// If `(n, g)` lies beyond the filled range.
    pub fn get(&self, n: i64, g: i64) -> Rational {
        if g < 0 {
            return Rational::zero();
        }
        if n <= 0 {
            return match (n, g) {
                (0, 0) => rat_int(1),
                (-1, 0) => rat(-1, 2),
                _ => Rational::zero(),
            };
        }
        assert!(
            n <= self.max_n && g <= self.max_g,
            "rooted cubic table read out of range: ({n}, {g})"
        );
        self.values[&(n, g)].clone()
    }

    /// The filled size range.
    pub fn max_n(&self) -> usize {
        self.max_n as usize
    }

    /// The filled genus range.
    pub fn max_g(&self) -> usize {
        self.max_g as usize
    }
}

/// Planar rooted cubic maps in closed form:
/// `2·8ⁿ/((n+1)(n+2)) · C(3n/2, n)` with a generalised binomial.
pub fn planar_count(n: u64) -> Rational {
    let eight_pow = Rational::from_integer(num_traits::pow(int(8), n as usize));
    let front = rat_int(2) * eight_pow / rat_int(((n + 1) * (n + 2)) as i64);
    front * binomial_rat(&rat(3 * n as i64, 2), n)
}

/// Residual of the quadratic ODE satisfied by `R = Σ M[n,g] t^{3n+2} s^g`:
///
/// ```text
/// R = 12 t⁶ (R′)² + 4 s t⁹ R‴ + 36 s t⁸ R″ + t (60 s t⁶ − 1) R′
/// ```
///
/// computed as a Laurent truncation (the series starts at `t^{−1}`).  Every
/// residual coefficient with `t`-order at most `3·max_n − 4` and genus at
/// most `max_g` is fully determined by the table, and the returned list
/// keeps only those; an empty list means the identity holds on the window.
pub fn ode_residual(table: &RootedCubicTable) -> Vec<((i64, i64), Rational)> {
    type Laurent = FxHashMap<(i64, i64), Rational>;

    let mut r: Laurent = Laurent::default();
    for n in -1..=table.max_n {
        for g in 0..=table.max_g {
            let c = table.get(n, g);
            if !c.is_zero() {
                r.insert((3 * n + 2, g), c);
            }
        }
    }

    let deriv = |a: &Laurent| -> Laurent {
        a.iter()
            .filter(|&(&(e, _), _)| e != 0)
            .map(|(&(e, g), c)| ((e - 1, g), c * rat_int(e)))
            .collect()
    };
    let shifted = |a: &Laurent, dt: i64, ds: i64| -> Laurent {
        a.iter().map(|(&(e, g), c)| ((e + dt, g + ds), c.clone())).collect()
    };
    let add_scaled = |acc: &mut Laurent, a: &Laurent, scale: Rational| {
        for (k, c) in a {
            let entry = acc.entry(*k).or_insert_with(Rational::zero);
            *entry += c * &scale;
            if entry.is_zero() {
                acc.remove(k);
            }
        }
    };

    let r1 = deriv(&r);
    let r2 = deriv(&r1);
    let r3 = deriv(&r2);

    let mut square: Laurent = Laurent::default();
    for (&(e1, g1), c1) in &r1 {
        for (&(e2, g2), c2) in &r1 {
            let entry = square.entry((e1 + e2, g1 + g2)).or_insert_with(Rational::zero);
            *entry += c1 * c2;
        }
    }

    let mut rhs = shifted(&square, 6, 0);
    rhs.values_mut().for_each(|c| *c *= rat_int(12));
    add_scaled(&mut rhs, &shifted(&r3, 9, 1), rat_int(4));
    add_scaled(&mut rhs, &shifted(&r2, 8, 1), rat_int(36));
    add_scaled(&mut rhs, &shifted(&r1, 7, 1), rat_int(60));
    add_scaled(&mut rhs, &shifted(&r1, 1, 0), rat_int(-1));

    let mut residual = r;
    add_scaled(&mut residual, &rhs, rat_int(-1));

    let mut bad: Vec<_> = residual
        .into_iter()
        .filter(|&((e, g), ref c)| e <= 3 * table.max_n - 4 && g <= table.max_g && !c.is_zero())
        .collect();
    bad.sort_by_key(|&(k, _)| k);
    bad
}

/// All-white coefficient of a rooted polynomial: `[ν∘^{3n}] P`.
pub fn monochromatic_coefficient(rooted: &crate::poly::Poly, n: usize) -> Rational {
    rooted.coeff(crate::poly::Monomial::new(0, 3 * n as u16, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{Mode, SolveState};

    #[test]
    fn small_counts_match_hand_values() {
        let t = RootedCubicTable::new(4, 2);
        assert_eq!(t.get(1, 0), rat_int(4));
        assert_eq!(t.get(1, 1), rat_int(1));
        assert_eq!(t.get(2, 0), rat_int(32));
        assert_eq!(t.get(2, 1), rat_int(28));
        // boundary conventions
        assert_eq!(t.get(0, 0), rat_int(1));
        assert_eq!(t.get(-1, 0), rat(-1, 2));
        assert_eq!(t.get(-2, 0), rat_int(0));
        assert_eq!(t.get(3, -1), rat_int(0));
    }

    #[test]
    fn counts_are_positive_integers() {
        let t = RootedCubicTable::new(8, 4);
        for n in 1..=8 {
            for g in 0..=4 {
                let m = t.get(n, g);
                assert!(m.is_integer(), "M[{n},{g}] = {m} not integral");
                assert!(m >= Rational::zero(), "M[{n},{g}] = {m} negative");
            }
        }
    }

    #[test]
    fn planar_closed_form_matches_recurrence() {
        let t = RootedCubicTable::new(10, 0);
        for n in 1..=10 {
            assert_eq!(planar_count(n as u64), t.get(n, 0), "n = {n}");
        }
        assert_eq!(planar_count(1), rat_int(4));
        assert_eq!(planar_count(2), rat_int(32));
    }

    #[test]
    fn ode_residual_vanishes() {
        let t = RootedCubicTable::new(8, 3);
        let bad = ode_residual(&t);
        assert!(bad.is_empty(), "nonzero residual terms: {bad:?}");
    }

    #[test]
    fn ode_residual_detects_perturbation() {
        let mut t = RootedCubicTable::new(8, 3);
        let key = (5, 1);
        let bumped = t.get(key.0, key.1) + int(1);
        t.values.insert(key, bumped);
        assert!(!ode_residual(&t).is_empty());
    }

    #[test]
    fn monochromatic_specialisation_matches_solver() {
        let mut state = SolveState::new(Mode::Checked);
        state.compute_up_to(12).expect("solve to 12 edges");
        let t = RootedCubicTable::new(4, 3);
        for n in 1..=4usize {
            for g in 0..=((n + 1) / 2) {
                let rooted = state.rooted_polynomial(n, g).expect("rooted polynomial");
                assert_eq!(
                    monochromatic_coefficient(&rooted, n),
                    t.get(n as i64, g as i64),
                    "n = {n}, g = {g}"
                );
            }
        }
    }
}
