//! Graded pieces of the relative Jacobian ideal `J_h(Θ_V⁰) = {ξ(h) : ξ ∈ Θ_V⁰}`
//! and the Hilbert fingerprint of `M_V(h) = Q[x] / J_h(Θ_V⁰)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{sparse_from_dense, RowEchelon};
use crate::logder::{hypersurface_degree, theta_piece, TangentBasis};
use crate::qpoly::{monomials_of_wdeg, quasi_degree, GradedSlice, Monomial, Polynomial, WeightSystem};
use crate::rational::Rational;

/// `(J_h(Θ_V⁰))_e` as a reduced row-echelon matrix over the slice basis.
#[derive(Debug, Clone)]
pub struct IdealPiece {
    pub degree: i64,
    pub slice: GradedSlice,
    pub echelon: RowEchelon,
}

impl IdealPiece {
    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn row_echelon(&self) -> Vec<Vec<Rational>> {
        self.echelon.dense_rows()
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        match self.slice.coords(p) {
            Some(v) => self.echelon.contains(&sparse_from_dense(&v)),
            None => false,
        }
    }

    /// Slice monomials that are not pivots: a basis of the quotient.
    pub fn standard_monomials(&self) -> Vec<Monomial> {
        let pivots = self.echelon.pivots();
        self.slice
            .basis()
            .iter()
            .enumerate()
            .filter(|(i, _)| pivots.binary_search(i).is_err())
            .map(|(_, m)| m.clone())
            .collect()
    }
}

pub(crate) fn qh_degree(h: &Polynomial, w: &WeightSystem, what: &'static str) -> Result<i64> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial { what });
    }
    quasi_degree(h, w)?.ok_or(Error::NotQuasihomogeneous { what })
}

/// Caches the graded pieces of `Θ_V⁰` for one hypersurface so that several
/// functions (or many degrees) can share them.
#[derive(Debug)]
pub struct JacobianContext {
    phi: Polynomial,
    weights: WeightSystem,
    theta: Mutex<HashMap<i64, Arc<TangentBasis>>>,
}

impl JacobianContext {
    pub fn new(phi: &Polynomial, w: &WeightSystem) -> Result<Self> {
        hypersurface_degree(phi, w)?;
        Ok(JacobianContext {
            phi: phi.clone(),
            weights: w.clone(),
            theta: Mutex::new(HashMap::new()),
        })
    }

    pub fn hypersurface(&self) -> &Polynomial {
        &self.phi
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.weights
    }

    pub fn theta(&self, e: i64) -> Result<Arc<TangentBasis>> {
        if let Some(b) = self.theta.lock().expect("poisoned").get(&e) {
            return Ok(b.clone());
        }
        let b = Arc::new(theta_piece(&self.phi, &self.weights, e, true)?);
        self.theta.lock().expect("poisoned").insert(e, b.clone());
        Ok(b)
    }

    pub fn piece(&self, h: &Polynomial, e: i64) -> Result<IdealPiece> {
        h.check_ring(&self.phi)?;
        let w = &self.weights;
        let d = qh_degree(h, w, "function")?;
        let slice = monomials_of_wdeg(w, e);
        // Fields of degree e' send H^d to H^{d+e'}; only e' = e - d contributes.
        let basis = self.theta(e - d)?;
        let mut echelon = RowEchelon::empty(slice.len());
        for xi in &basis.fields {
            let image = xi.apply(h)?;
            let coords = slice.coords(&image).expect("graded image");
            echelon.insert(sparse_from_dense(&coords));
        }
        Ok(IdealPiece {
            degree: e,
            slice,
            echelon,
        })
    }

    pub fn fingerprint(&self, h: &Polynomial, truncation: i64) -> Result<HilbertFingerprint> {
        qh_degree(h, &self.weights, "function")?;
        let mut fp = HilbertFingerprint {
            degrees: Vec::new(),
            dims: Vec::new(),
            truncation,
        };
        for e in 0..=truncation {
            let piece = self.piece(h, e)?;
            if piece.slice.is_empty() {
                continue;
            }
            fp.degrees.push(e);
            fp.dims.push(piece.slice.len() - piece.rank());
        }
        Ok(fp)
    }

    pub fn compare(&self, f: &Polynomial, g: &Polynomial, truncation: i64) -> Result<IdealComparison> {
        same_degree(f, g, &self.weights)?;
        for e in 0..=truncation {
            if self.piece(f, e)?.echelon != self.piece(g, e)?.echelon {
                return Ok(IdealComparison {
                    equal: false,
                    witness: Some(e),
                    truncation,
                });
            }
        }
        Ok(IdealComparison {
            equal: true,
            witness: None,
            truncation,
        })
    }
}

pub fn jacobian_piece(h: &Polynomial, phi: &Polynomial, w: &WeightSystem, e: i64) -> Result<IdealPiece> {
    JacobianContext::new(phi, w)?.piece(h, e)
}

/// Graded dimensions of `M_V(h)` for every attainable degree in `[0, D]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertFingerprint {
    pub degrees: Vec<i64>,
    pub dims: Vec<usize>,
    pub truncation: i64,
}

impl HilbertFingerprint {
    pub fn dim_at(&self, degree: i64) -> Option<usize> {
        self.degrees
            .iter()
            .position(|&d| d == degree)
            .map(|i| self.dims[i])
    }

    /// Smallest degree where the two fingerprints disagree.
    pub fn first_mismatch(&self, other: &HilbertFingerprint) -> Option<i64> {
        let upto = self.truncation.min(other.truncation);
        (0..=upto).find(|&e| self.dim_at(e) != other.dim_at(e))
    }
}

impl Serialize for HilbertFingerprint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("HilbertFingerprint", 3)?;
        let degrees: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        st.serialize_field("degrees", &degrees)?;
        st.serialize_field("dims", &self.dims)?;
        st.serialize_field("truncation", &self.truncation.to_string())?;
        st.end()
    }
}

pub fn hilbert_fingerprint(
    h: &Polynomial,
    phi: &Polynomial,
    w: &WeightSystem,
    truncation: i64,
) -> Result<HilbertFingerprint> {
    JacobianContext::new(phi, w)?.fingerprint(h, truncation)
}

fn same_degree(f: &Polynomial, g: &Polynomial, w: &WeightSystem) -> Result<i64> {
    let df = qh_degree(f, w, "f")?;
    let dg = qh_degree(g, w, "g")?;
    if df != dg {
        return Err(Error::DegreeMismatch { left: df, right: dg });
    }
    Ok(df)
}

/// Canonical forms make span equality plain matrix equality.
pub fn pieces_equal(
    f: &Polynomial,
    g: &Polynomial,
    phi: &Polynomial,
    w: &WeightSystem,
    e: i64,
) -> Result<bool> {
    same_degree(f, g, w)?;
    let ctx = JacobianContext::new(phi, w)?;
    Ok(ctx.piece(f, e)?.echelon == ctx.piece(g, e)?.echelon)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealComparison {
    pub equal: bool,
    /// Smallest degree where the pieces differ.
    #[serde(serialize_with = "opt_degree_text")]
    pub witness: Option<i64>,
    #[serde(serialize_with = "degree_text")]
    pub truncation: i64,
}

/// Degrees are written as strings in reports, like rationals.
pub(crate) fn degree_text<S: serde::Serializer>(d: &i64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&d.to_string())
}

pub(crate) fn opt_degree_text<S: serde::Serializer>(d: &Option<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match d {
        Some(d) => s.serialize_str(&d.to_string()),
        None => s.serialize_none(),
    }
}

pub fn ideal_equal_up_to(
    f: &Polynomial,
    g: &Polynomial,
    phi: &Polynomial,
    w: &WeightSystem,
    truncation: i64,
) -> Result<IdealComparison> {
    JacobianContext::new(phi, w)?.compare(f, g, truncation)
}

pub fn quotient_basis(h: &Polynomial, phi: &Polynomial, w: &WeightSystem, e: i64) -> Result<Vec<Monomial>> {
    Ok(jacobian_piece(h, phi, w, e)?.standard_monomials())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::Ring;

    struct Fx {
        ring: Arc<Ring>,
        w: WeightSystem,
        phi: Polynomial,
    }

    fn fx() -> Fx {
        let ring = Ring::new(["x", "y"]);
        let phi = Polynomial::parse("x*y", &ring).unwrap();
        Fx {
            ring,
            w: WeightSystem::new(&[1, 1]).unwrap(),
            phi,
        }
    }

    impl Fx {
        fn p(&self, s: &str) -> Polynomial {
            Polynomial::parse(s, &self.ring).unwrap()
        }
    }

    #[test]
    fn jacobian_pieces_of_cubic() {
        let fx = fx();
        let h = fx.p("x^3 + y^3");
        let p3 = jacobian_piece(&h, &fx.phi, &fx.w, 3).unwrap();
        assert_eq!(p3.rank(), 2);
        assert!(p3.contains(&fx.p("x^3")) && p3.contains(&fx.p("y^3")));
        let p4 = jacobian_piece(&h, &fx.phi, &fx.w, 4).unwrap();
        assert_eq!(p4.rank(), 4);
        for m in ["x^4", "x^3*y", "x*y^3", "y^4"] {
            assert!(p4.contains(&fx.p(m)));
        }
        assert!(!p4.contains(&fx.p("x^2*y^2")));
        assert_eq!(jacobian_piece(&h, &fx.phi, &fx.w, 0).unwrap().rank(), 0);
    }

    #[test]
    fn fingerprint_of_cubic() {
        let fx = fx();
        let fp = hilbert_fingerprint(&fx.p("x^3 + y^3"), &fx.phi, &fx.w, 5).unwrap();
        assert_eq!(fp.degrees, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(fp.dims, vec![1, 2, 3, 2, 1, 0]);
        let fg = hilbert_fingerprint(&fx.p("2*x^3 + 5*y^3"), &fx.phi, &fx.w, 5).unwrap();
        assert_eq!(fp, fg);
        let json = serde_json::to_value(&fp).unwrap();
        assert_eq!(json["truncation"], "5");
        assert_eq!(json["degrees"][2], "2");
    }

    #[test]
    fn piece_equality() {
        let fx = fx();
        let f = fx.p("x^3 + y^3");
        assert!(pieces_equal(&f, &fx.p("2*x^3 + 5*y^3"), &fx.phi, &fx.w, 3).unwrap());
        assert!(!pieces_equal(&f, &fx.p("x^3 + y^3 + x^2*y"), &fx.phi, &fx.w, 3).unwrap());
        for e in 0..6 {
            assert!(pieces_equal(&f, &f, &fx.phi, &fx.w, e).unwrap());
        }
        let cmp = ideal_equal_up_to(&f, &fx.p("2*x^3 + 5*y^3"), &fx.phi, &fx.w, 8).unwrap();
        assert!(cmp.equal);
        let cmp = ideal_equal_up_to(&f, &fx.p("x^3 + y^3 + x^2*y"), &fx.phi, &fx.w, 8).unwrap();
        assert_eq!((cmp.equal, cmp.witness), (false, Some(3)));
        assert!(matches!(
            pieces_equal(&f, &fx.p("x^2"), &fx.phi, &fx.w, 3),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn quotient_bases() {
        let fx = fx();
        let h = fx.p("x^3 + y^3");
        let q3 = quotient_basis(&h, &fx.phi, &fx.w, 3).unwrap();
        let e: Vec<_> = q3.iter().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(e, vec![vec![2, 1], vec![1, 2]]);
        let q0 = quotient_basis(&h, &fx.phi, &fx.w, 0).unwrap();
        assert!(q0[0].is_one() && q0.len() == 1);
        assert!(quotient_basis(&h, &fx.phi, &fx.w, 5).unwrap().is_empty());
    }

    #[test]
    fn euler_containment() {
        let fx = fx();
        for s in ["x^3 + y^3", "x^3 + y^3 + x^2*y", "x^2*y^2 + 3*x^4", "x^2 - y^2"] {
            let h = fx.p(s);
            let d = quasi_degree(&h, &fx.w).unwrap().unwrap();
            let piece = jacobian_piece(&h, &fx.phi, &fx.w, d).unwrap();
            assert!(piece.contains(&h), "{s}");
        }
    }

    #[test]
    fn non_quasihomogeneous_input_is_rejected() {
        let fx = fx();
        assert!(matches!(
            jacobian_piece(&fx.p("x + y^2"), &fx.phi, &fx.w, 2),
            Err(Error::NotQuasihomogeneous { .. })
        ));
    }
}
