//! Semi-biproducts of monoids.
//!
//! A semi-biproduct is a diagram `X --k--> A --p--> B` of homomorphisms
//! together with zero-preserving maps `q: A → X` and `s: B → A` satisfying
//!
//! ```text
//! ps = 1_B    qk = 1_X    kq + sp = 1_A    pk = 0    qs = 0
//! ```
//!
//! Every such diagram embeds `A` into `X × B` via `a ↦ (q(a), p(a))` and
//! determines a pseudo-action of `B` on `X`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::action::{ActionError, PseudoAction};
use crate::maps::{same_monoid, Homomorphism, PointedMap};
use crate::monoid::FiniteMonoid;

/// The four maps of a semi-biproduct.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MapRole {
    P,
    K,
    Q,
    S,
}

impl fmt::Display for MapRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapRole::P => "p",
            MapRole::K => "k",
            MapRole::Q => "q",
            MapRole::S => "s",
        })
    }
}

/// The five defining equations, in the order they are checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Condition {
    #[serde(rename = "ps=1")]
    PsIdentity,
    #[serde(rename = "qk=1")]
    QkIdentity,
    #[serde(rename = "kq+sp=1")]
    KqSpIdentity,
    #[serde(rename = "pk=0")]
    PkZero,
    #[serde(rename = "qs=0")]
    QsZero,
}

impl Condition {
    pub const ALL: [Condition; 5] =
        [Condition::PsIdentity, Condition::QkIdentity, Condition::KqSpIdentity, Condition::PkZero, Condition::QsZero];
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::PsIdentity => "ps = 1_B",
            Condition::QkIdentity => "qk = 1_X",
            Condition::KqSpIdentity => "kq + sp = 1_A",
            Condition::PkZero => "pk = 0",
            Condition::QsZero => "qs = 0",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SemiBiproductError {
    #[error("{role} has type {found}, expected {expected}")]
    Typing { role: MapRole, expected: String, found: String },
    #[error("{role} not homomorphism at ({},{})", labels.0, labels.1)]
    NotHomomorphism { role: MapRole, witness: (usize, usize), labels: (String, String) },
    #[error("condition {condition} fails at {label}")]
    ConditionFails { condition: Condition, witness: usize, label: String },
}

/// A verified semi-biproduct `(X, A, B, p, k, q, s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiBiproduct {
    x: Arc<FiniteMonoid>,
    a: Arc<FiniteMonoid>,
    b: Arc<FiniteMonoid>,
    p: Homomorphism,
    k: Homomorphism,
    q: PointedMap,
    s: PointedMap,
}

fn arrow(d: &FiniteMonoid, c: &FiniteMonoid) -> String {
    format!("{} -> {}", d.name(), c.name())
}

fn check_type(
    role: MapRole,
    map: &PointedMap,
    domain: &Arc<FiniteMonoid>,
    codomain: &Arc<FiniteMonoid>,
) -> Result<(), SemiBiproductError> {
    if same_monoid(map.domain(), domain) && same_monoid(map.codomain(), codomain) {
        Ok(())
    } else {
        Err(SemiBiproductError::Typing {
            role,
            expected: arrow(domain, codomain),
            found: arrow(map.domain(), map.codomain()),
        })
    }
}

impl SemiBiproduct {
    /// Checks typing, that `p` and `k` are homomorphisms, then the five
    /// equations in the fixed order `ps, qk, kq+sp, pk, qs`, stopping at the
    /// first failure.
    pub fn verify(
        x: Arc<FiniteMonoid>,
        a: Arc<FiniteMonoid>,
        b: Arc<FiniteMonoid>,
        p: PointedMap,
        k: PointedMap,
        q: PointedMap,
        s: PointedMap,
    ) -> Result<Self, SemiBiproductError> {
        check_type(MapRole::P, &p, &a, &b)?;
        check_type(MapRole::K, &k, &x, &a)?;
        check_type(MapRole::Q, &q, &a, &x)?;
        check_type(MapRole::S, &s, &b, &a)?;
        let p = as_homomorphism(MapRole::P, p)?;
        let k = as_homomorphism(MapRole::K, k)?;
        let sb = SemiBiproduct { x, a, b, p, k, q, s };
        if let Some((condition, witness)) = sb.first_failing_condition() {
            let domain = match condition {
                Condition::PsIdentity | Condition::QsZero => &sb.b,
                Condition::QkIdentity | Condition::PkZero => &sb.x,
                Condition::KqSpIdentity => &sb.a,
            };
            let label = domain.label(witness).to_owned();
            return Err(SemiBiproductError::ConditionFails { condition, witness, label });
        }
        Ok(sb)
    }

    fn first_failing_condition(&self) -> Option<(Condition, usize)> {
        let (x, a, b) = (&*self.x, &*self.a, &*self.b);
        let (p, k, q, s) = (&self.p, &self.k, &self.q, &self.s);
        let ps = (0..b.order()).find(|&i| p.apply(s.apply(i)) != i);
        if let Some(w) = ps {
            return Some((Condition::PsIdentity, w));
        }
        let qk = (0..x.order()).find(|&i| q.apply(k.apply(i)) != i);
        if let Some(w) = qk {
            return Some((Condition::QkIdentity, w));
        }
        let kqsp = (0..a.order()).find(|&i| a.op(k.apply(q.apply(i)), s.apply(p.apply(i))) != i);
        if let Some(w) = kqsp {
            return Some((Condition::KqSpIdentity, w));
        }
        let pk = (0..x.order()).find(|&i| p.apply(k.apply(i)) != b.identity());
        if let Some(w) = pk {
            return Some((Condition::PkZero, w));
        }
        let qs = (0..b.order()).find(|&i| q.apply(s.apply(i)) != x.identity());
        qs.map(|w| (Condition::QsZero, w))
    }

    /// `X × B` with projections and injections.
    pub fn direct_product(x: Arc<FiniteMonoid>, b: Arc<FiniteMonoid>) -> Self {
        let a = Arc::new(FiniteMonoid::product(&x, &b));
        let nx = x.order();
        let p = (0..a.order()).map(|i| i / nx).collect();
        let q = (0..a.order()).map(|i| i % nx).collect();
        let k = (0..nx).map(|i| b.identity() * nx + i).collect();
        let s = (0..b.order()).map(|j| j * nx + x.identity()).collect();
        let p = PointedMap::from_parts(a.clone(), b.clone(), p);
        let k = PointedMap::from_parts(x.clone(), a.clone(), k);
        let q = PointedMap::from_parts(a.clone(), x.clone(), q);
        let s = PointedMap::from_parts(b.clone(), a.clone(), s);
        SemiBiproduct::verify(x, a, b, p, k, q, s).expect("a direct product is a semi-biproduct")
    }

    pub fn x(&self) -> &Arc<FiniteMonoid> {
        &self.x
    }

    pub fn a(&self) -> &Arc<FiniteMonoid> {
        &self.a
    }

    pub fn b(&self) -> &Arc<FiniteMonoid> {
        &self.b
    }

    pub fn p(&self) -> &Homomorphism {
        &self.p
    }

    pub fn k(&self) -> &Homomorphism {
        &self.k
    }

    pub fn q(&self) -> &PointedMap {
        &self.q
    }

    pub fn s(&self) -> &PointedMap {
        &self.s
    }

    /// `b·x = q(s(b) + k(x))`
    #[inline]
    pub fn act(&self, b: usize, x: usize) -> usize {
        self.q.apply(self.a.op(self.s.apply(b), self.k.apply(x)))
    }

    /// `x^b = q(k(x) + s(b))`
    #[inline]
    pub fn correct(&self, x: usize, b: usize) -> usize {
        self.q.apply(self.a.op(self.k.apply(x), self.s.apply(b)))
    }

    /// `b×b' = q(s(b) + s(b'))`
    #[inline]
    pub fn factor(&self, b: usize, b2: usize) -> usize {
        self.q.apply(self.a.op(self.s.apply(b), self.s.apply(b2)))
    }

    /// `α(x, b) = k(x) + s(b)`
    #[inline]
    pub fn alpha(&self, x: usize, b: usize) -> usize {
        self.a.op(self.k.apply(x), self.s.apply(b))
    }

    /// True when both `q` and `s` are homomorphisms, i.e. the diagram is a
    /// biproduct.
    pub fn is_biproduct(&self) -> bool {
        self.q.is_homomorphism() && self.s.is_homomorphism()
    }

    /// Compact identity of the diagram: `A`'s table followed by the four
    /// value arrays. Used for deterministic ordering.
    pub fn table_key(&self) -> Vec<usize> {
        let mut key = Vec::with_capacity(self.a.table().len() + 3 * self.a.order() + self.x.order() + 2);
        key.push(self.a.order());
        key.extend_from_slice(self.a.table());
        key.extend_from_slice(self.p.values());
        key.extend_from_slice(self.k.values());
        key.extend_from_slice(self.q.values());
        key.extend_from_slice(self.s.values());
        key
    }
}

fn as_homomorphism(role: MapRole, map: PointedMap) -> Result<Homomorphism, SemiBiproductError> {
    match map.homomorphism_violation() {
        None => Ok(Homomorphism::from_map_unchecked(map)),
        Some((i, j)) => {
            let d = map.domain();
            Err(SemiBiproductError::NotHomomorphism {
                role,
                witness: (i, j),
                labels: (d.label(i).to_owned(), d.label(j).to_owned()),
            })
        }
    }
}

/// `verify_semibiproduct` as a free function.
pub fn verify_semibiproduct(
    x: Arc<FiniteMonoid>,
    a: Arc<FiniteMonoid>,
    b: Arc<FiniteMonoid>,
    p: PointedMap,
    k: PointedMap,
    q: PointedMap,
    s: PointedMap,
) -> Result<SemiBiproduct, SemiBiproductError> {
    SemiBiproduct::verify(x, a, b, p, k, q, s)
}

/// A failed consequence of the semi-biproduct equations. These are theorems,
/// so any instance indicates a defect in the computation.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TheoremViolation {
    #[error("decomposition fails for ({0}, {1})")]
    Decomposition(usize, usize),
    #[error("corrected decomposition fails for ({0}, {1})")]
    CorrectedDecomposition(usize, usize),
    #[error("beta is not injective: {0} and {1} collide")]
    BetaNotInjective(usize, usize),
    #[error("beta image differs from the corrected pairs")]
    BetaImage,
    #[error("alpha does not invert beta at element {0}")]
    AlphaBeta(usize),
    #[error("q(a) differs from q(a)^p(a) at element {0}")]
    CorrectionFixpoint(usize),
    #[error("extracted pseudo-action is invalid: {0}")]
    Extraction(#[from] ActionError),
    #[error("round trip mismatch: {0}")]
    RoundTrip(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub pairs_checked: usize,
}

/// Checks, for every pair `a, a'`,
/// `a + a' = k(u) + s(v)` and `a + a' = k(u^v) + s(v)` where
/// `u = q(a) + p(a)·q(a') + p(a)×p(a')` and `v = p(a + a')`.
pub fn decomposition_check(sb: &SemiBiproduct) -> Result<DecompositionReport, TheoremViolation> {
    let (a, x) = (&*sb.a, &*sb.x);
    let n = a.order();
    let failure = (0..n).into_par_iter().find_map_first(|i| {
        for j in 0..n {
            let sum = a.op(i, j);
            let (pi, pj) = (sb.p.apply(i), sb.p.apply(j));
            let u = x.op(x.op(sb.q.apply(i), sb.act(pi, sb.q.apply(j))), sb.factor(pi, pj));
            let v = sb.p.apply(sum);
            if a.op(sb.k.apply(u), sb.s.apply(v)) != sum {
                return Some(TheoremViolation::Decomposition(i, j));
            }
            if sb.alpha(sb.correct(u, v), v) != sum {
                return Some(TheoremViolation::CorrectedDecomposition(i, j));
            }
        }
        None
    });
    match failure {
        Some(v) => Err(v),
        None => Ok(DecompositionReport { pairs_checked: n * n }),
    }
}

/// The injection `β: A → X × B`, `a ↦ (q(a), p(a))`, with its inverse on
/// the image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaEmbedding {
    /// `values[a] = (q(a), p(a))`
    pub values: Vec<(usize, usize)>,
    /// `{(x^b, b)}` sorted by `(b, x)`.
    pub image: Vec<(usize, usize)>,
    /// `α` on the image: pair ↦ element of `A`.
    pub inverse: BTreeMap<(usize, usize), usize>,
}

impl BetaEmbedding {
    pub fn is_bijective_onto_product(&self, x_order: usize, b_order: usize) -> bool {
        self.image.len() == x_order * b_order
    }
}

/// Computes `β`, confirms it is injective with image `{(x^b, b)}`, that
/// `α(x, b) = k(x) + s(b)` inverts it on both sides, and that
/// `q(a) = q(a)^{p(a)}` for every `a`.
pub fn beta_embedding(sb: &SemiBiproduct) -> Result<BetaEmbedding, TheoremViolation> {
    let (x, a, b) = (&*sb.x, &*sb.a, &*sb.b);
    let values: Vec<(usize, usize)> = (0..a.order()).map(|i| (sb.q.apply(i), sb.p.apply(i))).collect();
    let mut inverse = BTreeMap::new();
    for (i, &pair) in values.iter().enumerate() {
        if let Some(&j) = inverse.get(&pair) {
            return Err(TheoremViolation::BetaNotInjective(j, i));
        }
        inverse.insert(pair, i);
    }
    let mut corrected: Vec<(usize, usize)> = Vec::new();
    for bi in 0..b.order() {
        for xi in 0..x.order() {
            corrected.push((sb.correct(xi, bi), bi));
        }
    }
    corrected.sort_by_key(|&(xi, bi)| (bi, xi));
    corrected.dedup();
    let mut image: Vec<(usize, usize)> = values.clone();
    image.sort_by_key(|&(xi, bi)| (bi, xi));
    if image != corrected {
        return Err(TheoremViolation::BetaImage);
    }
    for (i, &(qi, pi)) in values.iter().enumerate() {
        if sb.alpha(qi, pi) != i {
            return Err(TheoremViolation::AlphaBeta(i));
        }
        if sb.correct(qi, pi) != qi {
            return Err(TheoremViolation::CorrectionFixpoint(i));
        }
    }
    for (&(xi, bi), &i) in &inverse {
        if values[sb.alpha(xi, bi)] != (xi, bi) || sb.alpha(xi, bi) != i {
            return Err(TheoremViolation::AlphaBeta(i));
        }
    }
    Ok(BetaEmbedding { values, image, inverse })
}

/// Reads off `(φ, ρ, γ)` and validates it as a pseudo-action.
pub fn extract_pseudo_action(sb: &SemiBiproduct) -> Result<PseudoAction, TheoremViolation> {
    let (nx, nb) = (sb.x.order(), sb.b.order());
    let mut phi = vec![0; nb * nx];
    let mut rho = vec![0; nx * nb];
    let mut gamma = vec![0; nb * nb];
    for b in 0..nb {
        for x in 0..nx {
            phi[b * nx + x] = sb.act(b, x);
            rho[x * nb + b] = sb.correct(x, b);
        }
        for b2 in 0..nb {
            gamma[b * nb + b2] = sb.factor(b, b2);
        }
    }
    Ok(PseudoAction::validate_flat(sb.x.clone(), sb.b.clone(), phi, rho, gamma)?)
}

/// The first `(x, b)` with `x^b != x`, if any.
pub fn schreier_witness(sb: &SemiBiproduct) -> Option<(usize, usize)> {
    (0..sb.b.order()).find_map(|b| (0..sb.x.order()).find(|&x| sb.correct(x, b) != x).map(|x| (x, b)))
}

/// True iff the correction system is trivial.
pub fn is_schreier(sb: &SemiBiproduct) -> bool {
    schreier_witness(sb).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::gallery;

    #[test]
    fn direct_product_is_schreier_biproduct() {
        let sb = SemiBiproduct::direct_product(Arc::new(catalog::cyclic(2)), Arc::new(catalog::cyclic(3)));
        assert!(is_schreier(&sb));
        assert!(sb.is_biproduct());
        let beta = beta_embedding(&sb).unwrap();
        assert!(beta.is_bijective_onto_product(2, 3));
        assert_eq!(decomposition_check(&sb).unwrap().pairs_checked, 36);
        let pa = extract_pseudo_action(&sb).unwrap();
        assert!(pa.is_trivial());
    }

    #[test]
    fn e1_verifies_and_is_not_schreier() {
        let sb = gallery::paper_e1().unwrap();
        assert!(!is_schreier(&sb));
        assert_eq!(schreier_witness(&sb), Some((1, 1)));
        assert_eq!(decomposition_check(&sb).unwrap().pairs_checked, 9);
        let beta = beta_embedding(&sb).unwrap();
        // (0,1), (s,1), (0,t)
        assert_eq!(beta.values, vec![(0, 0), (1, 0), (0, 1)]);
    }

    #[test]
    fn sign_structure_fails_at_k() {
        let err = gallery::paper_e1_sign().unwrap_err();
        assert_eq!(err.to_string(), "k not homomorphism at (s,s)");
        assert!(matches!(err, SemiBiproductError::NotHomomorphism { role: MapRole::K, witness: (1, 1), .. }));
    }

    #[test]
    fn conditions_are_checked_in_order() {
        let x = Arc::new(catalog::cyclic(2));
        let b = Arc::new(catalog::cyclic(2));
        let sb = SemiBiproduct::direct_product(x.clone(), b.clone());
        // q = 0 breaks qk = 1_X before anything later
        let q = PointedMap::zero(sb.a().clone(), x.clone());
        let err = SemiBiproduct::verify(
            x.clone(),
            sb.a().clone(),
            b.clone(),
            sb.p().as_map().clone(),
            sb.k().as_map().clone(),
            q,
            sb.s().clone(),
        )
        .unwrap_err();
        assert!(matches!(err, SemiBiproductError::ConditionFails { condition: Condition::QkIdentity, witness: 1, .. }));
    }

    #[test]
    fn typing_errors_name_the_map() {
        let x = Arc::new(catalog::cyclic(2));
        let b = Arc::new(catalog::cyclic(3));
        let sb = SemiBiproduct::direct_product(x.clone(), b.clone());
        let err = SemiBiproduct::verify(
            x.clone(),
            sb.a().clone(),
            b.clone(),
            sb.p().as_map().clone(),
            sb.k().as_map().clone(),
            sb.q().clone(),
            PointedMap::zero(x.clone(), sb.a().clone()),
        )
        .unwrap_err();
        assert!(matches!(err, SemiBiproductError::Typing { role: MapRole::S, .. }));
    }
}
