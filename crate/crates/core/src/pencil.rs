//! The pencil `f_t = (1 - t) f + t g` inside `H^d`, its orbit tangent
//! matrix, the exceptional locus where that matrix loses rank, and the two
//! orbit conditions (tangent inclusion, constant rank).

use std::fmt;

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::logder::VectorField;
use crate::qpoly::{monomials_of_wdeg, GradedSlice, Polynomial, WeightSystem};
use crate::rational::{self, Rational};
use crate::relmilnor::{qh_degree, JacobianContext};
use crate::univariate::UniPoly;

/// Rows `ξ_i(f_t)` for the degree-0 tangent fields, expanded over the
/// degree-`d` slice. Every entry is `c0 + c1 t`.
#[derive(Debug, Clone)]
pub struct PencilMatrix {
    pub slice: GradedSlice,
    pub fields: Vec<VectorField>,
    pub rows: Vec<Vec<UniPoly>>,
}

impl PencilMatrix {
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.slice.len()
    }

    pub fn at(&self, t: &Rational) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|e| e.eval(t)).collect())
            .collect()
    }

    /// Rank of the matrix evaluated at `t`.
    pub fn rank_at(&self, t: &Rational) -> usize {
        linalg::rank(&self.at(t), self.ncols())
    }
}

pub fn assemble_pencil(
    f: &Polynomial,
    g: &Polynomial,
    phi: &Polynomial,
    w: &WeightSystem,
) -> Result<PencilMatrix> {
    assemble_pencil_with(&JacobianContext::new(phi, w)?, f, g)
}

pub fn assemble_pencil_with(ctx: &JacobianContext, f: &Polynomial, g: &Polynomial) -> Result<PencilMatrix> {
    let w = ctx.weights();
    f.check_ring(g)?;
    f.check_ring(ctx.hypersurface())?;
    let d = qh_degree(f, w, "f")?;
    let dg = qh_degree(g, w, "g")?;
    if d != dg {
        return Err(Error::DegreeMismatch { left: d, right: dg });
    }
    let slice = monomials_of_wdeg(w, d);
    if slice.is_empty() {
        return Err(Error::EmptySlice { degree: d });
    }
    // Fields of nonzero degree leave H^d, so the degree-0 piece suffices.
    let basis = ctx.theta(0)?;
    let mut rows = Vec::with_capacity(basis.fields.len());
    for xi in &basis.fields {
        let a = slice.coords(&xi.apply(f)?).expect("graded image");
        let b = slice.coords(&xi.apply(g)?).expect("graded image");
        rows.push(
            a.into_iter()
                .zip(b)
                .map(|(a, b)| {
                    let slope = &b - &a;
                    UniPoly::linear(a, slope)
                })
                .collect(),
        );
    }
    Ok(PencilMatrix {
        slice,
        fields: basis.fields.clone(),
        rows,
    })
}

/// Fraction-free elimination over `Q[t]`: returns the rank over `Q(t)` and
/// the pivots met along the way.
fn bareiss(mut a: Vec<Vec<UniPoly>>) -> (usize, Vec<UniPoly>) {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut prev = UniPoly::one();
    let mut pivots = Vec::new();
    let mut k = 0;
    for c in 0..n {
        if k == m {
            break;
        }
        let Some(p) = (k..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, k);
        let pivot = a[k][c].clone();
        for i in k + 1..m {
            let lead = a[i][c].clone();
            for j in c + 1..n {
                let num = &(&pivot * &a[i][j]) - &(&lead * &a[k][j]);
                a[i][j] = num.exact_div(&prev);
            }
            a[i][c] = UniPoly::zero();
        }
        pivots.push(pivot.clone());
        prev = pivot;
        k += 1;
    }
    (k, pivots)
}

fn inverse_mod(a: &UniPoly, r: &UniPoly) -> Option<UniPoly> {
    // Extended Euclid on (a, r): track s with s*a ≡ remainder (mod r).
    let (mut r0, mut r1) = (r.clone(), a.div_rem(r).1);
    let (mut s0, mut s1) = (UniPoly::zero(), UniPoly::one());
    while !r1.is_zero() {
        let (q, rem) = r0.div_rem(&r1);
        let s2 = &s0 - &(&q * &s1);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    if r0.degree() != Some(0) {
        return None;
    }
    let inv = r0.leading().expect("nonzero").recip();
    Some(s0.scale(&inv).div_rem(r).1)
}

/// Gaussian elimination over `Q[t]/(r)` for squarefree `r`, splitting `r`
/// whenever a candidate pivot is a zero divisor. Returns pieces of `r`
/// (coprime, multiplying to `r`) with the rank of the matrix at every root
/// of that piece.
fn split_rank(
    mut a: Vec<Vec<UniPoly>>,
    r: UniPoly,
    mut k: usize,
    start_col: usize,
    out: &mut Vec<(UniPoly, usize)>,
) {
    if r.degree().unwrap_or(0) == 0 {
        return;
    }
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    for row in a.iter_mut().skip(k) {
        for e in row.iter_mut() {
            *e = e.div_rem(&r).1;
        }
    }
    for c in start_col..n {
        if k == m {
            break;
        }
        let Some(p) = (k..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        let g = a[p][c].gcd(&r);
        if g.degree() != Some(0) {
            // At roots of g this entry vanishes; elsewhere it is invertible.
            let rest = r.exact_div(&g);
            split_rank(a.clone(), g, k, c, out);
            split_rank(a, rest, k, c, out);
            return;
        }
        a.swap(p, k);
        let inv = inverse_mod(&a[k][c], &r).expect("coprime to modulus");
        let pivot_row: Vec<UniPoly> = a[k].iter().map(|e| (&inv * e).div_rem(&r).1).collect();
        for i in k + 1..m {
            let lead = a[i][c].clone();
            if lead.is_zero() {
                continue;
            }
            for j in c..n {
                a[i][j] = (&a[i][j] - &(&lead * &pivot_row[j])).div_rem(&r).1;
            }
        }
        a[k] = pivot_row;
        k += 1;
    }
    out.push((r, k));
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalLocus {
    /// Generic rank over `Q(t)`.
    pub s: usize,
    /// Monic squarefree; its complex roots are exactly the `t` where the rank
    /// drops below `s`.
    pub q: UniPoly,
    pub rational_roots: Vec<Rational>,
}

pub fn exceptional_locus(m: &PencilMatrix) -> ExceptionalLocus {
    let (s, pivots) = bareiss(m.rows.clone());
    let product = pivots.iter().fold(UniPoly::one(), |acc, p| &acc * p);
    let candidate = product.squarefree_part();

    // Pivot products overcount: keep only the part where the rank drops.
    let mut pieces = Vec::new();
    split_rank(m.rows.clone(), candidate, 0, 0, &mut pieces);
    let mut q = pieces
        .iter()
        .filter(|(_, rank)| *rank < s)
        .fold(UniPoly::one(), |acc, (p, _)| &acc * p)
        .monic();

    let mut rational_roots = Vec::new();
    for root in q.rational_roots() {
        if m.rank_at(&root) < s {
            rational_roots.push(root);
        } else {
            q = q.exact_div(&UniPoly::root_factor(&root));
        }
    }
    ExceptionalLocus {
        s,
        q,
        rational_roots,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TangentInclusion {
    /// `g - f` lies in the generic row space.
    pub velocity: bool,
    pub f_in_row_space: bool,
    pub g_in_row_space: bool,
}

pub fn tangent_inclusion(m: &PencilMatrix, f: &Polynomial, g: &Polynomial) -> Result<TangentInclusion> {
    f.check_ring(g)?;
    let (s, _) = bareiss(m.rows.clone());
    let inside = |p: &Polynomial| -> Result<bool> {
        let Some(v) = m.slice.coords(p) else {
            return Ok(false);
        };
        let mut rows = m.rows.clone();
        rows.push(v.into_iter().map(UniPoly::constant).collect());
        Ok(bareiss(rows).0 == s)
    };
    Ok(TangentInclusion {
        velocity: inside(&(g - f))?,
        f_in_row_space: inside(f)?,
        g_in_row_space: inside(g)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PencilVerdict {
    Equivalent,
    HypothesisFailed,
    EndpointExceptional,
    InclusionFailed,
}

impl fmt::Display for PencilVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PencilVerdict::Equivalent => "EQUIVALENT",
            PencilVerdict::HypothesisFailed => "HYPOTHESIS_FAILED",
            PencilVerdict::EndpointExceptional => "ENDPOINT_EXCEPTIONAL",
            PencilVerdict::InclusionFailed => "INCLUSION_FAILED",
        })
    }
}

/// Certificate of the pencil argument, valid up to the truncation degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilReport {
    pub s: usize,
    pub rows: usize,
    pub columns: usize,
    pub exceptional_poly: UniPoly,
    pub rational_roots: Vec<Rational>,
    pub endpoints_ok: bool,
    pub tangent_inclusion: bool,
    pub f_in_row_space: bool,
    pub g_in_row_space: bool,
    pub hypothesis_ok: bool,
    pub hypothesis_witness: Option<i64>,
    pub verdict: PencilVerdict,
    pub truncation: i64,
}

impl Serialize for PencilReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PencilReport", 13)?;
        st.serialize_field("s", &self.s)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("columns", &self.columns)?;
        let coeffs: Vec<String> = self.exceptional_poly.coeffs().iter().map(rational::to_text).collect();
        st.serialize_field("exceptional_poly", &coeffs)?;
        let roots: Vec<String> = self.rational_roots.iter().map(rational::to_text).collect();
        st.serialize_field("rational_roots", &roots)?;
        st.serialize_field("endpoints_ok", &self.endpoints_ok)?;
        st.serialize_field("tangent_inclusion", &self.tangent_inclusion)?;
        st.serialize_field("f_in_row_space", &self.f_in_row_space)?;
        st.serialize_field("g_in_row_space", &self.g_in_row_space)?;
        st.serialize_field("hypothesis_ok", &self.hypothesis_ok)?;
        st.serialize_field("hypothesis_witness", &self.hypothesis_witness.map(|d| d.to_string()))?;
        st.serialize_field("verdict", &self.verdict)?;
        st.serialize_field("truncation", &self.truncation.to_string())?;
        st.end()
    }
}

pub fn mather_verdict(
    f: &Polynomial,
    g: &Polynomial,
    phi: &Polynomial,
    w: &WeightSystem,
    truncation: i64,
) -> Result<PencilReport> {
    mather_verdict_with(&JacobianContext::new(phi, w)?, f, g, truncation)
}

/// Runs, in order: the ideal-equality hypothesis up to `truncation`, the
/// pencil assembly and exceptional locus, the endpoint test and the tangent
/// inclusion. The verdict names the first failing step.
pub fn mather_verdict_with(
    ctx: &JacobianContext,
    f: &Polynomial,
    g: &Polynomial,
    truncation: i64,
) -> Result<PencilReport> {
    let hypothesis = ctx.compare(f, g, truncation)?;
    let matrix = assemble_pencil_with(ctx, f, g)?;
    let locus = exceptional_locus(&matrix);
    let endpoints_ok = !locus.q.eval(&Rational::zero()).is_zero()
        && !locus.q.eval(&Rational::one()).is_zero();
    let inclusion = tangent_inclusion(&matrix, f, g)?;
    let verdict = if !hypothesis.equal {
        PencilVerdict::HypothesisFailed
    } else if !endpoints_ok {
        PencilVerdict::EndpointExceptional
    } else if !inclusion.velocity {
        PencilVerdict::InclusionFailed
    } else {
        PencilVerdict::Equivalent
    };
    Ok(PencilReport {
        s: locus.s,
        rows: matrix.nrows(),
        columns: matrix.ncols(),
        exceptional_poly: locus.q,
        rational_roots: locus.rational_roots,
        endpoints_ok,
        tangent_inclusion: inclusion.velocity,
        f_in_row_space: inclusion.f_in_row_space,
        g_in_row_space: inclusion.g_in_row_space,
        hypothesis_ok: hypothesis.equal,
        hypothesis_witness: hypothesis.witness,
        verdict,
        truncation,
    })
}
