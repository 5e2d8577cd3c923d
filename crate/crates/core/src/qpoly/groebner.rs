//! Ideal membership by multivariate division and Buchberger completion.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::Zero;

use super::poly::{Monomial, Polynomial, Ring};
use super::weights::MonomialOrder;
use crate::error::Result;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub remainder: Polynomial,
    pub is_member: bool,
}

/// Terms sorted from the largest monomial down.
#[derive(Debug, Clone)]
struct Sorted {
    terms: Vec<(Monomial, Rational)>,
}

impl Sorted {
    fn new(p: &Polynomial, order: &MonomialOrder) -> Self {
        Sorted {
            terms: p
                .terms_by(order)
                .into_iter()
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &Rational {
        &self.terms[0].1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        if let Some((_, lc)) = self.terms.first() {
            let inv = lc.recip();
            for (_, c) in &mut self.terms {
                *c = &*c * &inv;
            }
        }
    }

    /// `self - c * m * g`.
    fn sub_scaled(&mut self, c: &Rational, m: &Monomial, g: &Sorted, order: &MonomialOrder) {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = std::mem::take(&mut self.terms).into_iter().peekable();
        let mut b = g.terms.iter().map(|(k, d)| (k.mul(m), d * c)).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap()),
                Ordering::Less => {
                    let (k, d) = b.next().unwrap();
                    out.push((k, -d));
                }
                Ordering::Equal => {
                    let (k, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let s = x - y;
                    if !s.is_zero() {
                        out.push((k, s));
                    }
                }
            }
        }
        self.terms = out;
    }

    fn into_poly(self, ring: &Arc<Ring>) -> Polynomial {
        Polynomial::from_terms(ring, self.terms)
    }
}

/// Fully reduces `f` by `basis`; the remainder has no term divisible by a
/// leading monomial of the basis.
fn reduce_sorted(f: &Sorted, basis: &[Sorted], order: &MonomialOrder) -> Sorted {
    let mut p = f.clone();
    let mut rem = Vec::new();
    while !p.is_zero() {
        let divisor = basis.iter().find(|g| g.lm().divides(p.lm()));
        match divisor {
            Some(g) => {
                let m = g.lm().quotient_of(p.lm());
                let c = p.lc() / g.lc();
                p.sub_scaled(&c, &m, g, order);
            }
            None => rem.push(p.terms.remove(0)),
        }
    }
    Sorted { terms: rem }
}

fn s_polynomial(a: &Sorted, b: &Sorted, order: &MonomialOrder) -> Sorted {
    let l = a.lm().lcm(b.lm());
    let ma = a.lm().quotient_of(&l);
    let mb = b.lm().quotient_of(&l);
    let mut s = Sorted { terms: Vec::new() };
    s.sub_scaled(&(-a.lc().recip()), &ma, a, order);
    s.sub_scaled(&b.lc().recip(), &mb, b, order);
    s
}

fn buchberger(gens: &[Polynomial], order: &MonomialOrder) -> Vec<Sorted> {
    let mut basis: Vec<Sorted> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut s = Sorted::new(g, order);
            s.make_monic();
            s
        })
        .collect();
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    let key = |p: &(usize, usize)| (p.0.min(p.1), p.0.max(p.1));
    while !pairs.is_empty() {
        // Normal strategy: the pair with the smallest lcm goes first.
        let &(i, j) = pairs
            .iter()
            .min_by(|p, q| {
                let lp = basis[p.0].lm().lcm(basis[p.1].lm());
                let lq = basis[q.0].lm().lcm(basis[q.1].lm());
                order.cmp(&lp, &lq).then(p.cmp(q))
            })
            .expect("nonempty");
        pairs.remove(&(i, j));
        let (a, b) = (&basis[i], &basis[j]);
        if a.lm().is_coprime(b.lm()) {
            continue;
        }
        let l = a.lm().lcm(b.lm());
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&l)
                && !pairs.contains(&key(&(i, k)))
                && !pairs.contains(&key(&(j, k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(a, b, order);
        let mut h = reduce_sorted(&s, &basis, order);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        let t = basis.len();
        basis.push(h);
        for i in 0..t {
            pairs.insert((i, t));
        }
    }
    interreduce(basis, order)
}

fn interreduce(mut basis: Vec<Sorted>, order: &MonomialOrder) -> Vec<Sorted> {
    // Minimal basis: drop elements whose leading monomial is a multiple of
    // another's (keeping the first of equal ones).
    let mut keep = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            k != i && h.lm().divides(g.lm()) && (h.lm() != g.lm() || k < i)
        });
        if !redundant {
            keep.push(i);
        }
    }
    let mut minimal: Vec<Sorted> = keep.into_iter().map(|i| std::mem::replace(&mut basis[i], Sorted { terms: vec![] })).collect();
    for i in 0..minimal.len() {
        let others: Vec<Sorted> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, g)| g.clone())
            .collect();
        let head = minimal[i].terms[0].clone();
        let tail = Sorted {
            terms: minimal[i].terms[1..].to_vec(),
        };
        let mut r = reduce_sorted(&tail, &others, order);
        r.terms.insert(0, head);
        r.make_monic();
        minimal[i] = r;
    }
    minimal.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    minimal
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `order`.
pub fn groebner_basis(gens: &[Polynomial], order: &MonomialOrder) -> Result<Vec<Polynomial>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    for g in gens {
        first.check_ring(g)?;
    }
    Ok(buchberger(gens, order)
        .into_iter()
        .map(|s| s.into_poly(first.ring()))
        .collect())
}

/// Multivariate division of `f` by `divisors` (not necessarily a Gröbner
/// basis); returns the remainder.
pub fn reduce(f: &Polynomial, divisors: &[Polynomial], order: &MonomialOrder) -> Result<Polynomial> {
    for g in divisors {
        f.check_ring(g)?;
    }
    let ds: Vec<Sorted> = divisors
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| Sorted::new(g, order))
        .collect();
    Ok(reduce_sorted(&Sorted::new(f, order), &ds, order).into_poly(f.ring()))
}

/// Membership of `f` in the ideal generated by `generators`, under the
/// unit-weight graded reverse-lexicographic order.
pub fn reduce_mod_ideal(f: &Polynomial, generators: &[Polynomial]) -> Result<Reduction> {
    reduce_mod_ideal_with(f, generators, &MonomialOrder::unit(f.nvars()))
}

pub fn reduce_mod_ideal_with(
    f: &Polynomial,
    generators: &[Polynomial],
    order: &MonomialOrder,
) -> Result<Reduction> {
    for g in generators {
        f.check_ring(g)?;
    }
    let nonzero: Vec<&Polynomial> = generators.iter().filter(|g| !g.is_zero()).collect();
    let basis = match nonzero.len() {
        0 => Vec::new(),
        1 => {
            let mut s = Sorted::new(nonzero[0], order);
            s.make_monic();
            vec![s]
        }
        _ => buchberger(generators, order),
    };
    let remainder = reduce_sorted(&Sorted::new(f, order), &basis, order).into_poly(f.ring());
    Ok(Reduction {
        is_member: remainder.is_zero(),
        remainder,
    })
}
