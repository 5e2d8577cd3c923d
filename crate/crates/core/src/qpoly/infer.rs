//! Weight inference: solve `⟨w, k⟩ = d` over all exponent vectors `k` of a
//! polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Polynomial;
use super::weights::WeightSystem;
use crate::error::{Error, Result};
use crate::linalg::{sparse_from_dense, RowEchelon};
use crate::rational::Rational;

/// Upper bound on the number of weight vectors visited by the lexicographic
/// search for the canonical representative.
const SEARCH_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone)]
pub struct WeightSolution {
    /// Dimension of the solution space in the unknowns `(w_1, ..., w_n, d)`.
    pub dimension: usize,
    /// Rational basis of that space; each vector lists `w_1, ..., w_n, d`.
    pub basis: Vec<Vec<Rational>>,
    /// Lexicographically smallest primitive positive integer solution.
    pub canonical: Option<(WeightSystem, i64)>,
    /// Largest weight visited by the lexicographic search. The canonical
    /// representative is lexicographically minimal among solutions whose
    /// weights do not exceed this bound.
    pub search_bound: u64,
}

pub fn infer_weights(f: &Polynomial) -> Result<WeightSolution> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial { what: "input" });
    }
    let n = f.nvars();
    let exps: Vec<Vec<i64>> = f
        .terms()
        .map(|(m, _)| m.exponents().iter().map(|&e| e as i64).collect())
        .collect();

    let rows = exps.iter().map(|k| {
        let mut r: Vec<Rational> = k.iter().map(|&e| Rational::from_integer(e.into())).collect();
        r.push(-Rational::one());
        sparse_from_dense(&r)
    });
    let full = RowEchelon::from_rows(rows, n + 1);
    let basis = full.nullspace();

    // Weight constraints alone: ⟨w, k_i - k_0⟩ = 0.
    let diffs: Vec<Vec<i64>> = exps[1..]
        .iter()
        .map(|k| k.iter().zip(&exps[0]).map(|(a, b)| a - b).collect())
        .collect();
    let k_space = RowEchelon::from_rows(
        diffs.iter().map(|r| {
            sparse_from_dense(&r.iter().map(|&e| Rational::from_integer(e.into())).collect::<Vec<_>>())
        }),
        n,
    )
    .nullspace();

    let bound = search_bound(n);
    let weights = match k_space.len() {
        0 => None,
        1 => primitive_positive(&k_space[0]),
        _ => {
            if positive_point(&k_space).is_none() {
                None
            } else {
                lex_search(&diffs, n, bound)
                    .or_else(|| positive_point(&k_space).and_then(|v| primitive_positive(&v)))
            }
        }
    };
    let canonical = match weights {
        Some(w) => {
            let d: i64 = w.iter().zip(&exps[0]).map(|(a, b)| *a as i64 * b).sum();
            Some((WeightSystem::new(&w)?, d))
        }
        None => None,
    };
    Ok(WeightSolution {
        dimension: basis.len(),
        basis,
        canonical,
        search_bound: bound,
    })
}

fn search_bound(n: usize) -> u64 {
    let mut b = 1u64;
    while (b + 1).checked_pow(n as u32).is_some_and(|v| v <= SEARCH_BUDGET) {
        b += 1;
    }
    b
}

/// Scales `v` to a primitive integer vector and returns it if all entries
/// share a strict sign (flipping to positive).
fn primitive_positive(v: &[Rational]) -> Option<Vec<u64>> {
    let lcm = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|q| (q * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    let sign = if ints[0].is_negative() { -BigInt::one() } else { BigInt::one() };
    ints.iter()
        .map(|x| {
            let y = x * &sign / &g;
            if y.is_positive() {
                y.to_u64()
            } else {
                None
            }
        })
        .collect()
}

/// Walks `[1, bound]^n` in lexicographic order; the first hit is the
/// lexicographically smallest solution in the box, and it is primitive
/// because its quotient by the gcd would have been visited earlier.
fn lex_search(diffs: &[Vec<i64>], n: usize, bound: u64) -> Option<Vec<u64>> {
    let mut w = vec![1u64; n];
    loop {
        let ok = diffs
            .iter()
            .all(|r| r.iter().zip(&w).map(|(a, b)| a * *b as i64).sum::<i64>() == 0);
        if ok {
            return Some(w);
        }
        let mut i = n;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if w[i] < bound {
                w[i] += 1;
                for x in &mut w[i + 1..] {
                    *x = 1;
                }
                break;
            }
        }
    }
}

/// Fourier–Motzkin: find `λ` with `B λ ≥ 1` componentwise, where the
/// columns of `B` are `space`; returns the point `B λ`.
fn positive_point(space: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let k = space.len();
    let n = space.first()?.len();
    // constraint: coeffs · λ ≥ rhs
    let initial: Vec<(Vec<Rational>, Rational)> = (0..n)
        .map(|j| ((0..k).map(|l| space[l][j].clone()).collect(), Rational::one()))
        .collect();
    let mut levels = vec![initial];
    for var in (0..k).rev() {
        let cur = levels.last().expect("level");
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in cur {
            if c.0[var].is_positive() {
                pos.push(c.clone());
            } else if c.0[var].is_negative() {
                neg.push(c.clone());
            } else {
                rest.push(c.clone());
            }
        }
        for p in &pos {
            for q in &neg {
                let a = p.0[var].clone();
                let b = -q.0[var].clone();
                let coeffs = p.0.iter().zip(&q.0).map(|(x, y)| x * &b + y * &a).collect();
                rest.push((coeffs, &p.1 * &b + &q.1 * &a));
            }
        }
        levels.push(rest);
    }
    if levels[k].iter().any(|c| c.1.is_positive()) {
        return None;
    }
    // Back-substitute λ_0, λ_1, ... choosing a value inside each interval.
    let mut lambda = vec![Rational::zero(); k];
    for var in 0..k {
        let cons = &levels[k - 1 - var];
        let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
        for (coeffs, rhs) in cons {
            let a = &coeffs[var];
            if a.is_zero() {
                continue;
            }
            let partial: Rational = (0..var).map(|l| &coeffs[l] * &lambda[l]).sum();
            let bound = (rhs - partial) / a;
            if a.is_positive() {
                lo = Some(lo.map_or(bound.clone(), |x| x.max(bound)));
            } else {
                hi = Some(hi.map_or(bound.clone(), |x| x.min(bound)));
            }
        }
        lambda[var] = match (lo, hi) {
            (Some(l), Some(h)) => (l + h) / Rational::from_integer(2.into()),
            (Some(l), None) => l + Rational::one(),
            (None, Some(h)) => h - Rational::one(),
            (None, None) => Rational::zero(),
        };
    }
    Some(
        (0..n)
            .map(|j| (0..k).map(|l| &space[l][j] * &lambda[l]).sum())
            .collect(),
    )
}
