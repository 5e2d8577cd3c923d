//! Brute-force dense recomputation of the graded quantities, used only to
//! cross-check the main path. Enumeration, division, tangency and
//! elimination are written from scratch here; the only shared piece is the
//! rational number type. Main-path values are read as plain data.

use std::collections::{HashMap, HashSet};

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::pencil::PencilMatrix;
use crate::qpoly::{Monomial, Polynomial, Ring, WeightSystem};
use crate::rational::Rational;

type Exps = Vec<u32>;
type Dense = HashMap<Exps, Rational>;

fn import(p: &Polynomial) -> Dense {
    p.terms()
        .map(|(m, c)| (m.exponents().to_vec(), c.clone()))
        .collect()
}

fn wdeg(w: &[u64], k: &[u32]) -> i64 {
    w.iter().zip(k).map(|(&a, &b)| a as i64 * b as i64).sum()
}

fn add_into(p: &mut Dense, k: Exps, c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = p.entry(k.clone()).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        p.remove(&k);
    }
}

fn mul(a: &Dense, b: &Dense) -> Dense {
    let mut out = Dense::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let k = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
            add_into(&mut out, k, ca * cb);
        }
    }
    out
}

fn partial(p: &Dense, i: usize) -> Dense {
    let mut out = Dense::new();
    for (k, c) in p {
        if k[i] > 0 {
            let mut k2 = k.clone();
            k2[i] -= 1;
            add_into(&mut out, k2, c * Rational::from_integer(k[i].into()));
        }
    }
    out
}

fn lex_max(p: &Dense) -> Option<&Exps> {
    p.keys().max()
}

/// Remainder on division by a single polynomial, pure lex order.
fn remainder(p: &Dense, divisor: &Dense) -> Dense {
    let lead = lex_max(divisor).expect("nonzero divisor").clone();
    let lc = divisor[&lead].clone();
    let mut work = p.clone();
    let mut rem = Dense::new();
    while let Some(top) = lex_max(&work).cloned() {
        let c = work.remove(&top).expect("present");
        if top.iter().zip(&lead).all(|(a, b)| a >= b) {
            let shift: Exps = top.iter().zip(&lead).map(|(a, b)| a - b).collect();
            let q = &c / &lc;
            for (k, d) in divisor {
                if *k == lead {
                    continue;
                }
                let k2 = k.iter().zip(&shift).map(|(x, y)| x + y).collect();
                add_into(&mut work, k2, -(&q * d));
            }
        } else {
            add_into(&mut rem, top, c);
        }
    }
    rem
}

/// All exponent vectors of weighted degree `e`, by scanning the box
/// `0 <= k_i <= e / w_i` exhaustively.
pub fn oracle_slice(weights: &[u64], e: i64) -> Vec<Exps> {
    if e < 0 {
        return Vec::new();
    }
    let bounds: Vec<u32> = weights.iter().map(|&w| (e as u64 / w) as u32).collect();
    let mut out = Vec::new();
    let mut k = vec![0u32; weights.len()];
    loop {
        if wdeg(weights, &k) == e {
            out.push(k.clone());
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == k.len() {
                out.sort();
                return out;
            }
            if k[i] < bounds[i] {
                k[i] += 1;
                break;
            }
            k[i] = 0;
            i += 1;
        }
    }
}

/// Gauss-Jordan on a dense matrix; returns the nonzero rows of the reduced
/// row-echelon form and their pivot columns.
pub fn oracle_rref(mut m: Vec<Vec<Rational>>, ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let v = &f * &m[r][j];
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

fn dense_rank(m: Vec<Vec<Rational>>, ncols: usize) -> usize {
    oracle_rref(m, ncols).1.len()
}

fn kernel(m: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (rows, pivots) = oracle_rref(m.to_vec(), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// A candidate monomial field `x^k ∂_i`.
type Candidate = (usize, Exps);

fn candidates(weights: &[u64], e: i64, vanish: bool) -> Vec<Candidate> {
    let mut out = Vec::new();
    for (i, &wi) in weights.iter().enumerate() {
        for k in oracle_slice(weights, e + wi as i64) {
            if vanish && k.iter().all(|&x| x == 0) {
                continue;
            }
            out.push((i, k));
        }
    }
    out
}

fn apply_candidate(cand: &Candidate, h: &Dense) -> Dense {
    let mono: Dense = [(cand.1.clone(), Rational::one())].into_iter().collect();
    mul(&mono, &partial(h, cand.0))
}

/// Tangent fields of degree `e` as coefficient vectors over `candidates`:
/// the kernel of `ξ ↦ (ξ(Φ) mod Φ)`.
fn tangent_space(phi: &Dense, weights: &[u64], e: i64, vanish: bool) -> (Vec<Candidate>, Vec<Vec<Rational>>) {
    let cands = candidates(weights, e, vanish);
    let rems: Vec<Dense> = cands
        .iter()
        .map(|c| remainder(&apply_candidate(c, phi), phi))
        .collect();
    let mut keys: Vec<Exps> = rems
        .iter()
        .flat_map(|r| r.keys().cloned())
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    keys.sort();
    let matrix: Vec<Vec<Rational>> = keys
        .iter()
        .map(|k| rems.iter().map(|r| r.get(k).cloned().unwrap_or_default()).collect())
        .collect();
    let ker = kernel(&matrix, cands.len());
    (cands, ker)
}

pub fn oracle_tangent_dim(phi: &Polynomial, w: &WeightSystem, e: i64, vanish: bool) -> usize {
    tangent_space(&import(phi), w.weights(), e, vanish).1.len()
}

fn homogeneous_degree(h: &Dense, weights: &[u64]) -> Option<i64> {
    let mut degs = h.keys().map(|k| wdeg(weights, k));
    let d = degs.next()?;
    degs.all(|x| x == d).then_some(d)
}

/// Spanning vectors of the degree-`e` piece of `{ξ(h) : ξ ∈ Θ_V⁰}` over the
/// given column order.
fn ideal_vectors(h: &Dense, phi: &Dense, weights: &[u64], e: i64, columns: &[Exps]) -> Vec<Vec<Rational>> {
    let Some(d) = homogeneous_degree(h, weights) else {
        return Vec::new();
    };
    let (cands, ker) = tangent_space(phi, weights, e - d, true);
    let images: Vec<Dense> = cands.iter().map(|c| apply_candidate(c, h)).collect();
    let index: HashMap<&Exps, usize> = columns.iter().enumerate().map(|(i, k)| (k, i)).collect();
    ker.iter()
        .map(|v| {
            let mut row = vec![Rational::zero(); columns.len()];
            for (c, img) in v.iter().zip(&images) {
                if c.is_zero() {
                    continue;
                }
                for (k, a) in img {
                    row[index[k]] += c * a;
                }
            }
            row
        })
        .collect()
}

pub fn oracle_ideal_dim(h: &Polynomial, phi: &Polynomial, w: &WeightSystem, e: i64) -> usize {
    let cols = oracle_slice(w.weights(), e);
    let rows = ideal_vectors(&import(h), &import(phi), w.weights(), e, &cols);
    dense_rank(rows, cols.len())
}

/// Reduced row-echelon form of the ideal piece over the caller's column
/// order, for comparison against another implementation.
pub fn oracle_ideal_rref(h: &Polynomial, phi: &Polynomial, w: &WeightSystem, e: i64, columns: &[Exps]) -> Vec<Vec<Rational>> {
    let rows = ideal_vectors(&import(h), &import(phi), w.weights(), e, columns);
    oracle_rref(rows, columns.len()).0
}

/// `(degree, dim M_V(h)_degree)` for every degree in `[0, D]` with a
/// nonempty slice.
pub fn oracle_fingerprint(h: &Polynomial, phi: &Polynomial, w: &WeightSystem, truncation: i64) -> Vec<(i64, usize)> {
    (0..=truncation)
        .filter_map(|e| {
            let n = oracle_slice(w.weights(), e).len();
            (n > 0).then(|| (e, n - oracle_ideal_dim(h, phi, w, e)))
        })
        .collect()
}

/// Graded membership of a quasihomogeneous `f` in the ideal of
/// quasihomogeneous generators: compare ranks inside the degree slice.
pub fn oracle_member(f: &Polynomial, generators: &[Polynomial], w: &WeightSystem) -> bool {
    let weights = w.weights();
    let fd = import(f);
    let Some(d) = homogeneous_degree(&fd, weights) else {
        return fd.is_empty();
    };
    let cols = oracle_slice(weights, d);
    let index: HashMap<&Exps, usize> = cols.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let to_row = |p: &Dense| {
        let mut row = vec![Rational::zero(); cols.len()];
        for (k, c) in p {
            row[index[k]] = c.clone();
        }
        row
    };
    let mut rows = Vec::new();
    for g in generators {
        let gd = import(g);
        let Some(dg) = homogeneous_degree(&gd, weights) else {
            continue;
        };
        for k in oracle_slice(weights, d - dg) {
            let mono: Dense = [(k, Rational::one())].into_iter().collect();
            rows.push(to_row(&mul(&mono, &gd)));
        }
    }
    let before = dense_rank(rows.clone(), cols.len());
    rows.push(to_row(&fd));
    dense_rank(rows, cols.len()) == before
}

/// Rank of the pencil matrix at `t`, evaluating every entry by Horner.
pub fn oracle_rank_at(m: &PencilMatrix, t: &Rational) -> usize {
    let evaluated: Vec<Vec<Rational>> = m
        .rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|entry| {
                    entry
                        .coeffs()
                        .iter()
                        .rev()
                        .fold(Rational::zero(), |acc, c| acc * t + c)
                })
                .collect()
        })
        .collect();
    dense_rank(evaluated, m.ncols())
}

/// Hypersurfaces used by the random cross-checks.
pub fn catalog() -> Vec<(Vec<&'static str>, Vec<u64>, &'static str)> {
    vec![
        (vec!["x", "y"], vec![1, 1], "x*y"),
        (vec!["x", "y"], vec![1, 1], "x^2*y - x*y^2"),
        (vec!["x", "y"], vec![1, 1], "y"),
        (vec!["x", "y"], vec![1, 2], "y^2 - x^4"),
        (vec!["x", "y"], vec![2, 3], "x^3 - y^2"),
        (vec!["x", "y", "z"], vec![2, 2, 3], "x^2*y + z^2"),
        (vec!["x", "y", "z"], vec![1, 1, 1], "x*y*z"),
    ]
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub phi: Polynomial,
    pub weights: WeightSystem,
    pub f: Polynomial,
}

/// A random quasihomogeneous `f` of degree in `[2, 12]` against a random
/// catalog hypersurface.
pub fn random_instance(rng: &mut impl Rng) -> Instance {
    let cat = catalog();
    let (names, weights, phi) = cat.choose(rng).expect("nonempty catalog");
    let ring = Ring::new(names.iter().copied());
    let w = WeightSystem::new(weights).expect("valid catalog weights");
    let phi = Polynomial::parse(phi, &ring).expect("valid catalog polynomial");
    loop {
        let d = rng.gen_range(2..=12);
        let slice = oracle_slice(weights, d);
        if slice.is_empty() {
            continue;
        }
        let mut terms = Vec::new();
        for k in slice {
            if rng.gen_bool(0.6) {
                let mut c = 0;
                while c == 0 {
                    c = rng.gen_range(-5..=5);
                }
                terms.push((Monomial::new(k), Rational::from_integer(c.into())));
            }
        }
        if terms.is_empty() {
            continue;
        }
        return Instance {
            phi: phi.clone(),
            weights: w,
            f: Polynomial::from_terms(&ring, terms),
        };
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub kind: &'static str,
    pub degree: String,
    pub main: String,
    pub oracle: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceCheck {
    pub variables: Vec<String>,
    pub weights: Vec<u64>,
    pub phi: String,
    pub f: String,
    pub comparisons: usize,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrosscheckReport {
    pub seed: u64,
    pub truncation: String,
    pub instances: Vec<InstanceCheck>,
    pub comparisons: usize,
    pub all_agree: bool,
}

/// Compares slices, tangent pieces, ideal pieces (rank and reduced
/// echelon form) and fingerprints of one instance for every degree up to
/// `truncation`.
pub fn check_instance(inst: &Instance, truncation: i64) -> crate::Result<InstanceCheck> {
    use crate::logder::theta_piece;
    use crate::qpoly::monomials_of_wdeg;
    use crate::relmilnor::JacobianContext;

    let (phi, w, f) = (&inst.phi, &inst.weights, &inst.f);
    let mut mismatches = Vec::new();
    let mut comparisons = 0;
    let mut check = |kind: &'static str, degree: i64, main: String, oracle: String| {
        comparisons += 1;
        if main != oracle {
            mismatches.push(Mismatch {
                kind,
                degree: degree.to_string(),
                main,
                oracle,
            });
        }
    };

    let ctx = JacobianContext::new(phi, w)?;
    for e in -w.max_weight()..=truncation {
        let mut main_slice: Vec<Exps> = monomials_of_wdeg(w, e)
            .basis()
            .iter()
            .map(|m| m.exponents().to_vec())
            .collect();
        main_slice.sort();
        check("slice", e, format!("{main_slice:?}"), format!("{:?}", oracle_slice(w.weights(), e)));
        for vanish in [false, true] {
            check(
                if vanish { "tangent_vanishing" } else { "tangent" },
                e,
                theta_piece(phi, w, e, vanish)?.dim().to_string(),
                oracle_tangent_dim(phi, w, e, vanish).to_string(),
            );
        }
        if e < 0 {
            continue;
        }
        let piece = ctx.piece(f, e)?;
        let columns: Vec<Exps> = piece.slice.basis().iter().map(|m| m.exponents().to_vec()).collect();
        check(
            "ideal_rank",
            e,
            piece.rank().to_string(),
            oracle_ideal_dim(f, phi, w, e).to_string(),
        );
        check(
            "ideal_rref",
            e,
            format!("{:?}", piece.row_echelon()),
            format!("{:?}", oracle_ideal_rref(f, phi, w, e, &columns)),
        );
    }
    let fp = ctx.fingerprint(f, truncation)?;
    let main_fp: Vec<(i64, usize)> = fp.degrees.iter().copied().zip(fp.dims.iter().copied()).collect();
    check(
        "fingerprint",
        truncation,
        format!("{main_fp:?}"),
        format!("{:?}", oracle_fingerprint(f, phi, w, truncation)),
    );

    Ok(InstanceCheck {
        variables: f.ring().names().to_vec(),
        weights: w.weights().to_vec(),
        phi: phi.to_string(),
        f: f.to_string(),
        comparisons,
        mismatches,
    })
}

pub fn crosscheck(instances: usize, seed: u64, truncation: i64) -> crate::Result<CrosscheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::with_capacity(instances);
    for _ in 0..instances {
        let inst = random_instance(&mut rng);
        checks.push(check_instance(&inst, truncation)?);
    }
    let comparisons = checks.iter().map(|c| c.comparisons).sum();
    let all_agree = checks.iter().all(|c| c.mismatches.is_empty());
    Ok(CrosscheckReport {
        seed,
        truncation: truncation.to_string(),
        instances: checks,
        comparisons,
        all_agree,
    })
}
