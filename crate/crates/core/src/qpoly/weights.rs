use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::poly::{Monomial, Polynomial, Ring};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Positive weights `w_1, ..., w_n`, always stored normalized to coprime
/// positive integers. `scale` records the factor applied to the weights the
/// caller supplied, so that degrees expressed in the caller's units can be
/// converted with [`WeightSystem::normalize_degree`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightSystem {
    weights: Vec<u64>,
    scale: Rational,
}

impl WeightSystem {
    pub fn new(weights: &[u64]) -> Result<Self> {
        let qs: Vec<Rational> = weights
            .iter()
            .map(|&w| Rational::from_integer(BigInt::from(w)))
            .collect();
        Self::from_rationals(&qs)
    }

    pub fn from_rationals(weights: &[Rational]) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("no weights given".into()));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
            return Err(Error::InvalidWeights(format!("weight {w} is not positive")));
        }
        let lcm_den = weights
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let ints: Vec<BigInt> = weights
            .iter()
            .map(|w| (w * Rational::from_integer(lcm_den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, w| acc.gcd(w));
        let normalized: Option<Vec<u64>> = ints.iter().map(|w| (w / &g).to_u64()).collect();
        let normalized =
            normalized.ok_or_else(|| Error::InvalidWeights("weights too large".into()))?;
        Ok(WeightSystem {
            weights: normalized,
            scale: Rational::new(lcm_den, g),
        })
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.weights[i] as i64
    }

    pub fn max_weight(&self) -> i64 {
        self.weights.iter().copied().max().unwrap_or(0) as i64
    }

    /// Factor mapping the caller's weights onto the normalized ones.
    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    /// Always true: construction normalizes.
    pub fn is_normalized(&self) -> bool {
        true
    }

    /// Converts a degree in the caller's original weight units; `None` when
    /// the result is not an integer (no monomial can have that degree).
    pub fn normalize_degree(&self, d: &Rational) -> Option<i64> {
        let q = d * &self.scale;
        if q.denom().is_one() {
            q.to_integer().to_i64()
        } else {
            None
        }
    }

    pub fn degree_of(&self, m: &Monomial) -> i64 {
        m.exponents()
            .iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as i64 * w as i64)
            .sum()
    }

    pub fn order(&self) -> MonomialOrder {
        MonomialOrder {
            weights: self.weights.clone(),
        }
    }

    pub(crate) fn check(&self, f: &Polynomial) -> Result<()> {
        if f.nvars() == self.len() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: f.nvars(),
                found: self.len(),
            })
        }
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

/// Weighted degree first, ties broken reverse-lexicographically: among
/// monomials of equal weighted degree the one with the smaller exponent in
/// the last differing variable is larger.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    weights: Vec<u64>,
}

impl MonomialOrder {
    /// Standard graded reverse-lexicographic order.
    pub fn unit(nvars: usize) -> Self {
        MonomialOrder {
            weights: vec![1; nvars],
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let deg = |m: &Monomial| -> i64 {
            m.exponents()
                .iter()
                .zip(&self.weights)
                .map(|(&e, &w)| e as i64 * w as i64)
                .sum()
        };
        deg(a).cmp(&deg(b)).then_with(|| {
            for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
                if x != y {
                    return y.cmp(x);
                }
            }
            Ordering::Equal
        })
    }
}

/// Weighted order of a polynomial; the zero polynomial has order
/// [`Order::Infinite`], which compares above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(i64),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<i64> {
        match self {
            Order::Finite(d) => Some(d),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(d) => write!(f, "{d}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Order::Finite(d) => s.serialize_str(&d.to_string()),
            Order::Infinite => s.serialize_str("inf"),
        }
    }
}

pub fn weighted_order(f: &Polynomial, w: &WeightSystem) -> Result<Order> {
    w.check(f)?;
    Ok(f
        .terms()
        .map(|(m, _)| w.degree_of(m))
        .min()
        .map_or(Order::Infinite, Order::Finite))
}

/// Every term has weighted degree `d`; vacuously true for zero.
pub fn is_quasihomogeneous(f: &Polynomial, w: &WeightSystem, d: i64) -> Result<bool> {
    w.check(f)?;
    Ok(f.terms().all(|(m, _)| w.degree_of(m) == d))
}

/// The common weighted degree of a nonzero quasihomogeneous polynomial.
pub fn quasi_degree(f: &Polynomial, w: &WeightSystem) -> Result<Option<i64>> {
    w.check(f)?;
    let mut degs = f.terms().map(|(m, _)| w.degree_of(m));
    let Some(first) = degs.next() else {
        return Ok(None);
    };
    Ok(degs.all(|d| d == first).then_some(first))
}

/// `Σ w_i x_i ∂f/∂x_i`, computed term by term.
pub fn euler_apply(f: &Polynomial, w: &WeightSystem) -> Result<Polynomial> {
    w.check(f)?;
    Ok(Polynomial::from_terms(
        f.ring(),
        f.terms().map(|(m, c)| {
            let factor = Rational::from_integer(BigInt::from(w.degree_of(m)));
            (m.clone(), c * factor)
        }),
    ))
}

/// Every monomial of one weighted degree, sorted from largest to smallest
/// under the weight system's monomial order.
#[derive(Debug, Clone)]
pub struct GradedSlice {
    weights: WeightSystem,
    degree: i64,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl GradedSlice {
    pub fn weight_system(&self) -> &WeightSystem {
        &self.weights
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of `f` in the slice basis, or `None` if `f` has a term of
    /// another degree.
    pub fn coords(&self, f: &Polynomial) -> Option<Vec<Rational>> {
        let mut v = vec![Rational::zero(); self.basis.len()];
        for (m, c) in f.terms() {
            v[self.position(m)?] = c.clone();
        }
        Some(v)
    }

    pub fn polynomial(&self, ring: &Arc<Ring>, coords: &[Rational]) -> Polynomial {
        Polynomial::from_terms(
            ring,
            self.basis.iter().cloned().zip(coords.iter().cloned()),
        )
    }
}

/// Enumerates the monomials of weighted degree `d` as a bounded integer
/// knapsack over exponents. Negative `d` gives an empty slice.
pub fn monomials_of_wdeg(w: &WeightSystem, d: i64) -> GradedSlice {
    let n = w.len();
    let mut basis = Vec::new();
    if d >= 0 {
        let mut current = vec![0u32; n];
        knapsack(w.weights(), 0, d, &mut current, &mut basis);
    }
    let order = w.order();
    basis.sort_by(|a, b| order.cmp(b, a));
    let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    GradedSlice {
        weights: w.clone(),
        degree: d,
        basis,
        index,
    }
}

fn knapsack(weights: &[u64], i: usize, remaining: i64, current: &mut [u32], out: &mut Vec<Monomial>) {
    let w = weights[i] as i64;
    if i + 1 == weights.len() {
        if remaining % w == 0 {
            current[i] = (remaining / w) as u32;
            out.push(Monomial::new(current.to_vec()));
        }
        return;
    }
    for e in 0..=remaining / w {
        current[i] = e as u32;
        knapsack(weights, i + 1, remaining - e * w, current, out);
    }
    current[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::parse_poly;
    use crate::rational::{int, ratio};

    fn ws(w: &[u64]) -> WeightSystem {
        WeightSystem::new(w).unwrap()
    }

    #[test]
    fn normalization_scales_to_coprime_integers() {
        let w = WeightSystem::from_rationals(&[ratio(1, 2), ratio(1, 3)]).unwrap();
        assert_eq!(w.weights(), &[3, 2]);
        assert_eq!(w.scale(), &int(6));
        assert_eq!(w.normalize_degree(&int(1)), Some(6));
        let w = ws(&[4, 6]);
        assert_eq!(w.weights(), &[2, 3]);
        assert_eq!(w.normalize_degree(&int(12)), Some(6));
        assert_eq!(w.normalize_degree(&int(3)), None);
        assert!(WeightSystem::new(&[1, 0]).is_err());
    }

    #[test]
    fn order_of_cusp_example() {
        let f = parse_poly("x^2*y + z^2", &["x", "y", "z"]).unwrap();
        assert_eq!(weighted_order(&f, &ws(&[2, 2, 3])).unwrap(), Order::Finite(6));
        let zero = parse_poly("0", &["x"]).unwrap();
        assert_eq!(weighted_order(&zero, &ws(&[1])).unwrap(), Order::Infinite);
        let g = parse_poly("x + x^3", &["x"]).unwrap();
        assert_eq!(weighted_order(&g, &ws(&[1])).unwrap(), Order::Finite(1));
        assert!(Order::Finite(i64::MAX) < Order::Infinite);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let f = parse_poly("x*y", &["x", "y"]).unwrap();
        assert!(matches!(
            weighted_order(&f, &ws(&[1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn quasihomogeneity() {
        let v = ["x", "y", "z"];
        let f = parse_poly("x^2*y + z^2", &v).unwrap();
        assert!(is_quasihomogeneous(&f, &ws(&[2, 2, 3]), 6).unwrap());
        assert!(!is_quasihomogeneous(&f, &ws(&[2, 2, 3]), 5).unwrap());
        let g = parse_poly("x^2 + y^3", &["x", "y"]).unwrap();
        assert!(is_quasihomogeneous(&g, &ws(&[3, 2]), 6).unwrap());
        let zero = parse_poly("0", &["x", "y"]).unwrap();
        assert!(is_quasihomogeneous(&zero, &ws(&[3, 2]), 17).unwrap());
    }

    #[test]
    fn euler_examples() {
        let f = parse_poly("x^2*y + z^2", &["x", "y", "z"]).unwrap();
        assert_eq!(euler_apply(&f, &ws(&[2, 2, 3])).unwrap(), f.scale(&int(6)));
        let one = parse_poly("1", &["x", "y"]).unwrap();
        assert!(euler_apply(&one, &ws(&[2, 3])).unwrap().is_zero());
        let g = parse_poly("x^3 + y^2", &["x", "y"]).unwrap();
        let expected = parse_poly("6*x^3 + 6*y^2", &["x", "y"]).unwrap();
        assert_eq!(euler_apply(&g, &ws(&[2, 3])).unwrap(), expected);
    }

    #[test]
    fn slices() {
        let s = monomials_of_wdeg(&ws(&[2, 2, 3]), 2);
        let b: Vec<_> = s.basis().iter().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(b, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let s = monomials_of_wdeg(&ws(&[1, 1]), 3);
        let b: Vec<_> = s.basis().iter().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(b, vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]);
        assert!(monomials_of_wdeg(&ws(&[2, 3]), 1).is_empty());
        assert!(monomials_of_wdeg(&ws(&[2, 3]), -4).is_empty());
        assert_eq!(monomials_of_wdeg(&ws(&[2, 3]), 0).len(), 1);
    }

    #[test]
    fn revlex_tie_break() {
        let o = MonomialOrder::unit(3);
        let m = |e: &[u32]| Monomial::new(e.to_vec());
        // x*z < y^2 in grevlex
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[1, 0, 0])), Ordering::Greater);
    }
}
