#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use rvequiv::equiv::Substitution;
use rvequiv::qpoly::{monomials_of_wdeg, Monomial, Polynomial, Ring, WeightSystem};
use rvequiv::rational::{int, ratio};
use rvequiv::Rational;

pub const NAMES: [&str; 3] = ["x", "y", "z"];

pub fn ring(n: usize) -> Arc<Ring> {
    Ring::new(NAMES[..n].iter().copied())
}

pub fn poly(r: &Arc<Ring>, s: &str) -> Polynomial {
    Polynomial::parse(s, r).unwrap()
}

pub fn nonzero_rational(rng: &mut impl Rng, height: i64) -> Rational {
    loop {
        let n = rng.gen_range(-height..=height);
        if n != 0 {
            return ratio(n, rng.gen_range(1..=height));
        }
    }
}

pub fn random_weights(rng: &mut impl Rng, n: usize, max: u64) -> Vec<u64> {
    (0..n).map(|_| rng.gen_range(1..=max)).collect()
}

/// A random quasihomogeneous polynomial of degree at most `max_degree`,
/// or `None` when the drawn degree has an empty slice.
pub fn random_qh(rng: &mut impl Rng, r: &Arc<Ring>, w: &WeightSystem, max_degree: i64) -> Option<(Polynomial, i64)> {
    let d = rng.gen_range(0..=max_degree);
    let slice = monomials_of_wdeg(w, d);
    if slice.is_empty() {
        return None;
    }
    let mut terms: Vec<(Monomial, Rational)> = Vec::new();
    for m in slice.basis() {
        if rng.gen_bool(0.5) {
            terms.push((m.clone(), nonzero_rational(rng, 9)));
        }
    }
    if terms.is_empty() {
        terms.push((slice.basis()[0].clone(), int(1)));
    }
    Some((Polynomial::from_terms(r, terms), d))
}

/// A random nonzero polynomial with exponents below `max_exp`.
pub fn random_poly(rng: &mut impl Rng, r: &Arc<Ring>, max_exp: u32, max_terms: usize) -> Polynomial {
    loop {
        let k = rng.gen_range(1..=max_terms);
        let terms: Vec<(Monomial, Rational)> = (0..k)
            .map(|_| {
                let e = (0..r.nvars()).map(|_| rng.gen_range(0..max_exp)).collect();
                (Monomial::new(e), nonzero_rational(rng, 7))
            })
            .collect();
        let p = Polynomial::from_terms(r, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

fn scaled(r: &Arc<Ring>, i: usize, c: Rational) -> Polynomial {
    Polynomial::var(r, i).scale(&c)
}

/// A random axis scaling, possibly followed by a swap, preserving `xy = 0`.
pub fn random_axes_map(rng: &mut impl Rng, r: &Arc<Ring>) -> Substitution {
    let (a, b) = (nonzero_rational(rng, 5), nonzero_rational(rng, 5));
    let (i, j) = if rng.gen_bool(0.5) { (0, 1) } else { (1, 0) };
    Substitution::new(vec![scaled(r, i, a), scaled(r, j, b)]).unwrap()
}

/// A scaling `(a x, b y, c z)` with `a^2 b = c^2`, preserving `x^2 y + z^2 = 0`.
pub fn random_cusp_scaling(rng: &mut impl Rng, r: &Arc<Ring>) -> Substitution {
    let a = nonzero_rational(rng, 5);
    let c = nonzero_rational(rng, 5);
    let b = &c * &c / (&a * &a);
    Substitution::new(vec![scaled(r, 0, a), scaled(r, 1, b), scaled(r, 2, c)]).unwrap()
}
