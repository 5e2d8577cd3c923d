//! Coordinate changes, transport of relative Jacobian ideals and the
//! equivalence decision pipeline.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::determinant;
use crate::pencil::{mather_verdict_with, PencilReport, PencilVerdict};
use crate::qpoly::{
    is_quasihomogeneous, monomials_of_wdeg, quasi_degree, reduce_mod_ideal, weighted_order,
    Monomial, Order, Polynomial, Reduction, Ring, WeightSystem,
};
use crate::rational::{ratio, Rational};
use crate::relmilnor::{qh_degree, IdealComparison, JacobianContext};

/// A polynomial map germ `x_i ↦ u_i(x)` fixing the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    images: Vec<Polynomial>,
}

impl Substitution {
    pub fn new(images: Vec<Polynomial>) -> Result<Self> {
        let Some(first) = images.first() else {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        };
        if images.len() != first.nvars() {
            return Err(Error::DimensionMismatch {
                expected: first.nvars(),
                found: images.len(),
            });
        }
        for (i, u) in images.iter().enumerate() {
            first.check_ring(u)?;
            if !u.constant_term().is_zero() {
                return Err(Error::ConstantTerm { index: i });
            }
        }
        Ok(Substitution { images })
    }

    pub fn parse<S: AsRef<str>>(texts: &[S], ring: &Arc<Ring>) -> Result<Self> {
        let images = texts
            .iter()
            .map(|t| Polynomial::parse(t.as_ref(), ring))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if images.len() != ring.nvars() {
            return Err(Error::DimensionMismatch {
                expected: ring.nvars(),
                found: images.len(),
            });
        }
        Self::new(images)
    }

    pub fn identity(ring: &Arc<Ring>) -> Self {
        Substitution {
            images: (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect(),
        }
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn nvars(&self) -> usize {
        self.images.len()
    }

    /// `(self ∘ other)_i = self_i(other)`, so that
    /// `f ∘ (self ∘ other) = (f ∘ self) ∘ other`.
    pub fn compose(&self, other: &Substitution) -> Result<Substitution> {
        let images = self
            .images
            .iter()
            .map(|u| apply_subst(u, other))
            .collect::<Result<Vec<_>>>()?;
        Ok(Substitution { images })
    }

    /// `∂u_i/∂x_j` at the origin.
    pub fn linear_part(&self) -> Vec<Vec<Rational>> {
        let n = self.nvars();
        self.images
            .iter()
            .map(|u| (0..n).map(|j| u.coeff(&Monomial::var(n, j))).collect())
            .collect()
    }

    /// The germ is invertible iff its Jacobian at the origin is.
    pub fn is_invertible(&self) -> bool {
        !determinant(&self.linear_part()).is_zero()
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, u) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for Substitution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.images.iter().map(|u| u.to_string()))
    }
}

/// `f ∘ u` by term expansion.
pub fn apply_subst(f: &Polynomial, u: &Substitution) -> Result<Polynomial> {
    if f.nvars() != u.nvars() {
        return Err(Error::DimensionMismatch {
            expected: f.nvars(),
            found: u.nvars(),
        });
    }
    f.check_ring(&u.images[0])?;
    let ring = f.ring();
    // powers[i][k] = u_i^k, grown on demand
    let mut powers: Vec<Vec<Polynomial>> = (0..u.nvars()).map(|_| vec![Polynomial::one(ring)]).collect();
    let mut out = Polynomial::zero(ring);
    for (m, c) in f.terms() {
        let mut term = Polynomial::constant(ring, c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            let e = e as usize;
            while powers[i].len() <= e {
                let next = powers[i].last().expect("nonempty") * &u.images[i];
                powers[i].push(next);
            }
            if e > 0 {
                term = &term * &powers[i][e];
            }
        }
        out = &out + &term;
    }
    Ok(out)
}

/// `Φ ∘ u ∈ (Φ)` for invertible `u`.
pub fn preserves_v(u: &Substitution, phi: &Polynomial) -> Result<bool> {
    if phi.is_zero() {
        return Err(Error::ZeroPolynomial { what: "hypersurface" });
    }
    if !u.is_invertible() {
        return Err(Error::NotInvertible);
    }
    let image = apply_subst(phi, u)?;
    Ok(reduce_mod_ideal(&image, std::slice::from_ref(phi))?.is_member)
}

/// Each image `u_i` is quasihomogeneous of degree `w_i`.
pub fn is_degree_preserving(u: &Substitution, w: &WeightSystem) -> Result<bool> {
    for (i, ui) in u.images.iter().enumerate() {
        if !is_quasihomogeneous(ui, w, w.weight(i))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `min_i (ord(u_i - x_i) - w_i)` over the images that differ from `x_i`.
pub fn subst_order(u: &Substitution, w: &WeightSystem) -> Result<Order> {
    let ring = u.images[0].ring();
    let mut best = Order::Infinite;
    for (i, ui) in u.images.iter().enumerate() {
        let delta = ui - &Polynomial::var(ring, i);
        if let Order::Finite(d) = weighted_order(&delta, w)? {
            best = best.min(Order::Finite(d - w.weight(i)));
        }
    }
    Ok(best)
}

fn check_transport_map(u: &Substitution, w: &WeightSystem) -> Result<()> {
    if !u.is_invertible() {
        return Err(Error::NotInvertible);
    }
    if !is_degree_preserving(u, w)? {
        return Err(Error::NotDegreePreserving);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transport {
    /// `g ∘ u`.
    pub image: Polynomial,
    pub comparison: IdealComparison,
}

impl Transport {
    pub fn holds(&self) -> bool {
        self.comparison.equal
    }
}

/// Checks `J_{g∘u}(Θ_V⁰) = J_f(Θ_V⁰)` up to the truncation degree.
pub fn verify_transport(
    u: &Substitution,
    f: &Polynomial,
    g: &Polynomial,
    phi: &Polynomial,
    w: &WeightSystem,
    truncation: i64,
) -> Result<Transport> {
    verify_transport_with(&JacobianContext::new(phi, w)?, u, f, g, truncation)
}

fn verify_transport_with(
    ctx: &JacobianContext,
    u: &Substitution,
    f: &Polynomial,
    g: &Polynomial,
    truncation: i64,
) -> Result<Transport> {
    let w = ctx.weights();
    check_transport_map(u, w)?;
    let d = qh_degree(f, w, "f")?;
    let image = apply_subst(g, u)?;
    let comparison = match quasi_degree(&image, w)? {
        Some(dg) if dg == d => ctx.compare(f, &image, truncation)?,
        _ => IdealComparison {
            equal: false,
            witness: None,
            truncation,
        },
    };
    Ok(Transport { image, comparison })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EquivStatus {
    Equivalent,
    NotEquivalent,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EquivReason {
    /// Hilbert fingerprints differ at some degree.
    FingerprintMismatch,
    /// `J_f = J_g` directly and the pencil certifies the orbit.
    DirectPencil,
    /// A supplied substitution transports the ideal; pencil on `f, g∘u`.
    TransportPencil,
    /// As above with a substitution found by the random search.
    SearchedTransportPencil,
    NoCertificate,
}

#[derive(Debug, Clone)]
pub struct EquivVerdict {
    pub status: EquivStatus,
    pub reason: EquivReason,
    pub pencil: Option<PencilReport>,
    pub substitution: Option<Substitution>,
    pub transported: Option<Polynomial>,
    pub mismatch_degree: Option<i64>,
    pub draws_tried: usize,
    pub truncation: i64,
}

impl Serialize for EquivVerdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("EquivVerdict", 8)?;
        st.serialize_field("status", &self.status)?;
        st.serialize_field("reason", &self.reason)?;
        st.serialize_field("truncation", &self.truncation.to_string())?;
        st.serialize_field("mismatch_degree", &self.mismatch_degree.map(|d| d.to_string()))?;
        st.serialize_field("pencil", &self.pencil)?;
        st.serialize_field("substitution", &self.substitution)?;
        st.serialize_field("transported", &self.transported.as_ref().map(|p| p.to_string()))?;
        st.serialize_field("draws_tried", &self.draws_tried)?;
        st.end()
    }
}

#[derive(Debug, Clone)]
pub struct DecideOptions {
    pub substitution: Option<Substitution>,
    pub search: bool,
    pub draws: usize,
    /// Numerators are drawn from `[-height, height]`, denominators from
    /// `[1, height]`.
    pub height: i64,
    pub seed: u64,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            substitution: None,
            search: false,
            draws: 200,
            height: 3,
            seed: 0,
        }
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A degree-preserving substitution with random small rational coefficients
/// on every monomial of degree `w_i` in image `i`.
pub fn random_degree_preserving(ring: &Arc<Ring>, w: &WeightSystem, height: i64, rng: &mut impl Rng) -> Substitution {
    let images = (0..w.len())
        .map(|i| {
            let slice = monomials_of_wdeg(w, w.weight(i));
            Polynomial::from_terms(
                ring,
                slice.basis().iter().map(|m| {
                    let num = rng.gen_range(-height..=height);
                    let den = rng.gen_range(1..=height);
                    (m.clone(), ratio(num, den))
                }),
            )
        })
        .collect();
    Substitution { images }
}

pub fn decide_rv_equiv(
    f: &Polynomial,
    g: &Polynomial,
    phi: &Polynomial,
    w: &WeightSystem,
    truncation: i64,
    options: &DecideOptions,
) -> Result<EquivVerdict> {
    if options.search && (options.draws == 0 || options.height < 1) {
        return Err(Error::ContradictoryOptions(
            "search enabled with no draws or an empty coefficient range".into(),
        ));
    }
    f.check_ring(g)?;
    let ctx = JacobianContext::new(phi, w)?;
    let d = qh_degree(f, w, "f")?;
    let g_degree = if g.is_zero() { None } else { quasi_degree(g, w)? };
    let mut verdict = EquivVerdict {
        status: EquivStatus::Unknown,
        reason: EquivReason::NoCertificate,
        pencil: None,
        substitution: None,
        transported: None,
        mismatch_degree: None,
        draws_tried: 0,
        truncation,
    };

    if g_degree.is_some() {
        let ff = ctx.fingerprint(f, truncation)?;
        let fg = ctx.fingerprint(g, truncation)?;
        if let Some(e) = ff.first_mismatch(&fg) {
            verdict.status = EquivStatus::NotEquivalent;
            verdict.reason = EquivReason::FingerprintMismatch;
            verdict.mismatch_degree = Some(e);
            return Ok(verdict);
        }
    }

    let try_transport = |u: &Substitution| -> Result<Option<(Transport, PencilReport)>> {
        let t = verify_transport_with(&ctx, u, f, g, truncation)?;
        if !t.holds() {
            return Ok(None);
        }
        let report = mather_verdict_with(&ctx, f, &t.image, truncation)?;
        Ok((report.verdict == PencilVerdict::Equivalent).then_some((t, report)))
    };

    if let Some(u) = &options.substitution {
        if let Some((t, report)) = try_transport(u)? {
            verdict.status = EquivStatus::Equivalent;
            verdict.reason = EquivReason::TransportPencil;
            verdict.pencil = Some(report);
            verdict.substitution = Some(u.clone());
            verdict.transported = Some(t.image);
            return Ok(verdict);
        }
    }

    if g_degree == Some(d) {
        let report = mather_verdict_with(&ctx, f, g, truncation)?;
        let ok = report.verdict == PencilVerdict::Equivalent;
        verdict.pencil = Some(report);
        if ok {
            verdict.status = EquivStatus::Equivalent;
            verdict.reason = EquivReason::DirectPencil;
            return Ok(verdict);
        }
    }

    if options.search {
        let ring = f.ring();
        for k in 0..options.draws {
            let mut rng = ChaCha8Rng::seed_from_u64(splitmix(options.seed ^ splitmix(k as u64)));
            let u = random_degree_preserving(ring, w, options.height, &mut rng);
            verdict.draws_tried = k + 1;
            if !u.is_invertible() {
                continue;
            }
            if let Some((t, report)) = try_transport(&u)? {
                verdict.status = EquivStatus::Equivalent;
                verdict.reason = EquivReason::SearchedTransportPencil;
                verdict.pencil = Some(report);
                verdict.substitution = Some(u);
                verdict.transported = Some(t.image);
                return Ok(verdict);
            }
        }
    }
    Ok(verdict)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForwardCheck {
    pub image: Polynomial,
    pub agree: bool,
    pub mismatch_degree: Option<i64>,
}

/// For `ψ` preserving `V`, the fingerprints of `f` and `f ∘ ψ` must agree.
pub fn forward_invariance_check(
    psi: &Substitution,
    f: &Polynomial,
    phi: &Polynomial,
    w: &WeightSystem,
    truncation: i64,
) -> Result<ForwardCheck> {
    if !preserves_v(psi, phi)? {
        return Err(Error::DoesNotPreserveV);
    }
    let ctx = JacobianContext::new(phi, w)?;
    let image = apply_subst(f, psi)?;
    let a = ctx.fingerprint(f, truncation)?;
    let b = ctx.fingerprint(&image, truncation)?;
    let mismatch_degree = a.first_mismatch(&b);
    Ok(ForwardCheck {
        image,
        agree: mismatch_degree.is_none(),
        mismatch_degree,
    })
}

/// `h ∈ J_h`, the ordinary Jacobian ideal.
pub fn saito_membership(h: &Polynomial) -> Result<Reduction> {
    reduce_mod_ideal(h, &h.gradient())
}
