//! Vector fields and the graded pieces of `Θ_V`, the module of vector fields
//! tangent to the hypersurface `V = {Φ = 0}`.
//!
//! A field `ξ = Σ a_i ∂_i` is tangent to `V` when `ξ(Φ) = λ Φ` for some
//! polynomial `λ`. For quasihomogeneous `Φ` this space is graded, and each
//! graded piece is the kernel of one exact linear system in the unknown
//! coefficients of `(a_1, ..., a_n, λ)`.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{sparse_from_dense, RowEchelon, SparseRow};
use crate::qpoly::{
    monomials_of_wdeg, quasi_degree, weighted_order, GradedSlice, Monomial, Order, Polynomial,
    Ring, WeightSystem,
};
use crate::rational::Rational;

/// `Σ a_i ∂/∂x_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    components: Vec<Polynomial>,
    quasi_degree: Option<i64>,
}

impl VectorField {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        };
        if components.len() != first.nvars() {
            return Err(Error::DimensionMismatch {
                expected: first.nvars(),
                found: components.len(),
            });
        }
        for c in &components {
            first.check_ring(c)?;
        }
        Ok(VectorField {
            components,
            quasi_degree: None,
        })
    }

    /// Like [`VectorField::new`], additionally recording the graded degree
    /// when every nonzero component `a_i` is quasihomogeneous of degree
    /// `e + w_i` for one `e`.
    pub fn graded(components: Vec<Polynomial>, w: &WeightSystem) -> Result<Self> {
        let mut field = Self::new(components)?;
        field.quasi_degree = field.detect_degree(w)?;
        Ok(field)
    }

    fn detect_degree(&self, w: &WeightSystem) -> Result<Option<i64>> {
        let mut degree = None;
        for (i, a) in self.components.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let Some(d) = quasi_degree(a, w)? else {
                return Ok(None);
            };
            let e = d - w.weight(i);
            match degree {
                None => degree = Some(e),
                Some(prev) if prev != e => return Ok(None),
                Some(_) => {}
            }
        }
        Ok(degree)
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        VectorField {
            components: (0..ring.nvars()).map(|_| Polynomial::zero(ring)).collect(),
            quasi_degree: None,
        }
    }

    /// `x^m ∂_i`.
    pub fn monomial(ring: &Arc<Ring>, m: Monomial, i: usize) -> Self {
        let mut f = Self::zero(ring);
        f.components[i] = Polynomial::term(ring, m, Rational::from_integer(1.into()));
        f
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn quasi_degree(&self) -> Option<i64> {
        self.quasi_degree
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.components[0].ring()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.components.iter().all(|a| a.constant_term().is_zero())
    }

    /// Derivative of `f` along the field: `Σ a_i ∂f/∂x_i`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        f.check_ring(&self.components[0])?;
        let mut out = Polynomial::zero(f.ring());
        for (i, a) in self.components.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            out = &out + &(a * &f.derivative(i));
        }
        Ok(out)
    }

    /// Lie bracket `[self, other]_i = self(other_i) - other(self_i)`.
    pub fn bracket(&self, other: &VectorField) -> Result<VectorField> {
        let comps = (0..self.components.len())
            .map(|i| Ok(&self.apply(&other.components[i])? - &other.apply(&self.components[i])?))
            .collect::<Result<Vec<_>>>()?;
        VectorField::new(comps)
    }

    pub fn scale(&self, c: &Rational) -> VectorField {
        VectorField {
            components: self.components.iter().map(|a| a.scale(c)).collect(),
            quasi_degree: self.quasi_degree,
        }
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.ring().names();
        let mut first = true;
        for (a, name) in self.components.iter().zip(names) {
            if a.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let single_positive = a.len() == 1 && a.terms().all(|(_, c)| c > &Rational::zero());
            if single_positive && a.constant_term() == Rational::from_integer(1.into()) {
                write!(f, "d{name}")?;
            } else if single_positive {
                write!(f, "{a}*d{name}")?;
            } else {
                write!(f, "({a})*d{name}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

pub fn apply_field(xi: &VectorField, f: &Polynomial) -> Result<Polynomial> {
    xi.apply(f)
}

/// `E = Σ w_i x_i ∂_i`, of graded degree zero.
pub fn euler_field(ring: &Arc<Ring>, w: &WeightSystem) -> Result<VectorField> {
    if ring.nvars() != w.len() {
        return Err(Error::DimensionMismatch {
            expected: ring.nvars(),
            found: w.len(),
        });
    }
    let comps = (0..w.len())
        .map(|i| Polynomial::var(ring, i).scale(&Rational::from_integer(w.weight(i).into())))
        .collect();
    Ok(VectorField {
        components: comps,
        quasi_degree: Some(0),
    })
}

/// All monomial fields `x^P ∂_i` with `⟨P, w⟩ = w_i`, ordered by `i` and
/// then by the monomial order.
pub fn lie0_ambient(ring: &Arc<Ring>, w: &WeightSystem) -> Result<Vec<VectorField>> {
    if ring.nvars() != w.len() {
        return Err(Error::DimensionMismatch {
            expected: ring.nvars(),
            found: w.len(),
        });
    }
    let mut out = Vec::new();
    for i in 0..w.len() {
        for m in monomials_of_wdeg(w, w.weight(i)).basis() {
            let mut f = VectorField::monomial(ring, m.clone(), i);
            f.quasi_degree = Some(0);
            out.push(f);
        }
    }
    Ok(out)
}

/// `min_i (ord(a_i) - w_i)` over nonzero components.
pub fn vf_order(xi: &VectorField, w: &WeightSystem) -> Result<Order> {
    let mut best = Order::Infinite;
    for (i, a) in xi.components.iter().enumerate() {
        if let Order::Finite(d) = weighted_order(a, w)? {
            best = best.min(Order::Finite(d - w.weight(i)));
        }
    }
    Ok(best)
}

/// A basis of one graded piece of `Θ_V` (or `Θ_V⁰`).
#[derive(Debug, Clone)]
pub struct TangentBasis {
    pub hypersurface: Polynomial,
    pub weight_system: WeightSystem,
    pub degree: i64,
    pub fields: Vec<VectorField>,
    /// `λ` with `ξ(Φ) = λ Φ`, one per field.
    pub cofactors: Vec<Polynomial>,
    pub vanish_at_origin: bool,
}

impl TangentBasis {
    pub fn dim(&self) -> usize {
        self.fields.len()
    }
}

/// Column layout of the unknown coefficients of `(a_1, ..., a_n)`.
pub(crate) struct FieldSlices {
    pub slices: Vec<GradedSlice>,
    pub offsets: Vec<usize>,
    pub total: usize,
}

impl FieldSlices {
    pub fn new(w: &WeightSystem, e: i64, require_vanish: bool) -> Self {
        let mut slices = Vec::new();
        let mut offsets = Vec::new();
        let mut total = 0;
        for i in 0..w.len() {
            let d = e + w.weight(i);
            // A component of degree 0 is a constant; Θ_V⁰ forbids it.
            let s = if require_vanish && d == 0 {
                monomials_of_wdeg(w, -1)
            } else {
                monomials_of_wdeg(w, d)
            };
            offsets.push(total);
            total += s.len();
            slices.push(s);
        }
        FieldSlices {
            slices,
            offsets,
            total,
        }
    }

    pub fn field(&self, ring: &Arc<Ring>, w: &WeightSystem, coords: &[Rational]) -> VectorField {
        let comps = self
            .slices
            .iter()
            .zip(&self.offsets)
            .map(|(s, &o)| s.polynomial(ring, &coords[o..o + s.len()]))
            .collect();
        let mut f = VectorField {
            components: comps,
            quasi_degree: None,
        };
        f.quasi_degree = f.detect_degree(w).ok().flatten();
        f
    }
}

pub(crate) fn hypersurface_degree(phi: &Polynomial, w: &WeightSystem) -> Result<i64> {
    if phi.is_zero() {
        return Err(Error::ZeroPolynomial { what: "hypersurface" });
    }
    quasi_degree(phi, w)?.ok_or(Error::NotQuasihomogeneous { what: "hypersurface" })
}

/// Basis of the quasihomogeneous fields `ξ` of degree `e` with
/// `ξ(Φ) = λ Φ`. With `require_vanish`, fields with a constant component
/// are excluded. Bases are canonical: the coefficient vectors are in reduced
/// row-echelon form with columns ordered by component, then monomial.
pub fn theta_piece(
    phi: &Polynomial,
    w: &WeightSystem,
    e: i64,
    require_vanish: bool,
) -> Result<TangentBasis> {
    let r = hypersurface_degree(phi, w)?;
    let ring = phi.ring().clone();
    let empty = |fields: Vec<VectorField>, cofactors| TangentBasis {
        hypersurface: phi.clone(),
        weight_system: w.clone(),
        degree: e,
        fields,
        cofactors,
        vanish_at_origin: require_vanish,
    };
    if e < -w.max_weight() {
        return Ok(empty(Vec::new(), Vec::new()));
    }

    let layout = FieldSlices::new(w, e, require_vanish);
    let lambda = monomials_of_wdeg(w, e);
    let target = monomials_of_wdeg(w, e + r);
    let ncols = layout.total + lambda.len();
    let grad = phi.gradient();

    // Column j is the image of the j-th unknown in the target slice.
    let mut columns: Vec<Polynomial> = Vec::with_capacity(ncols);
    for (i, s) in layout.slices.iter().enumerate() {
        for m in s.basis() {
            columns.push(grad[i].mul_monomial(m, &Rational::from_integer(1.into())));
        }
    }
    for m in lambda.basis() {
        columns.push(phi.mul_monomial(m, &Rational::from_integer((-1).into())));
    }
    let mut rows: Vec<SparseRow> = vec![Vec::new(); target.len()];
    for (j, col) in columns.iter().enumerate() {
        for (m, c) in col.terms() {
            let t = target.position(m).expect("degree bookkeeping");
            rows[t].push((j, c.clone()));
        }
    }
    let system = RowEchelon::from_rows(rows, ncols);
    let kernel = system.nullspace();

    let projected = RowEchelon::from_rows(
        kernel
            .iter()
            .map(|v| sparse_from_dense(&v[..layout.total])),
        layout.total,
    );
    let mut fields = Vec::with_capacity(projected.rank());
    let mut cofactors = Vec::with_capacity(projected.rank());
    for row in projected.dense_rows() {
        let field = layout.field(&ring, w, &row);
        let image = field.apply(phi)?;
        // λ is the exact quotient image / Φ; recover it in the λ slice.
        let cof = quotient_in_slice(&image, phi, &lambda, &target);
        fields.push(field);
        cofactors.push(cof);
    }
    Ok(empty(fields, cofactors))
}

/// Solves `λ Φ = image` for `λ` in the given slice.
fn quotient_in_slice(
    image: &Polynomial,
    phi: &Polynomial,
    lambda: &GradedSlice,
    target: &GradedSlice,
) -> Polynomial {
    let ring = phi.ring();
    if image.is_zero() || lambda.is_empty() {
        return Polynomial::zero(ring);
    }
    let n = lambda.len();
    let mut rows: Vec<SparseRow> = vec![Vec::new(); target.len()];
    for (j, m) in lambda.basis().iter().enumerate() {
        for (k, c) in phi.mul_monomial(m, &Rational::from_integer(1.into())).terms() {
            rows[target.position(k).expect("degree")].push((j, c.clone()));
        }
    }
    let rhs = target.coords(image).expect("degree");
    for (row, b) in rows.iter_mut().zip(rhs) {
        if !b.is_zero() {
            row.push((n, b));
        }
    }
    let aug = RowEchelon::from_rows(rows, n + 1);
    let mut sol = vec![Rational::zero(); n];
    for (row, &p) in aug.rows().iter().zip(aug.pivots()) {
        if p < n {
            if let Some((_, c)) = row.iter().find(|(col, _)| *col == n) {
                sol[p] = c.clone();
            }
        }
    }
    lambda.polynomial(ring, &sol)
}
