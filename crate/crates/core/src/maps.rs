//! Zero-preserving maps between finite monoids, homomorphisms and kernels.
//!
//! The set of pointed maps `Map(A, B)` is itself a monoid under pointwise
//! addition with the zero map as neutral element.

use std::ops::Deref;
use std::sync::Arc;

use thiserror::Error;

use crate::monoid::FiniteMonoid;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("map has {found} values, domain {domain} has {expected} elements")]
    LengthMismatch { domain: String, expected: usize, found: usize },
    #[error("value {value} at element {element} is out of range for codomain {codomain}")]
    ValueOutOfRange { codomain: String, element: usize, value: usize },
    #[error("map sends the neutral element to {value}, expected {expected}")]
    NotZeroPreserving { value: usize, expected: usize },
    #[error("monoid mismatch: expected {expected}, found {found}")]
    DomainMismatch { expected: String, found: String },
    #[error("not a homomorphism at ({0}, {1})")]
    NotHomomorphism(usize, usize),
}

/// Returns true when both handles denote the same monoid.
#[inline]
pub(crate) fn same_monoid(a: &Arc<FiniteMonoid>, b: &Arc<FiniteMonoid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn expect_same(expected: &Arc<FiniteMonoid>, found: &Arc<FiniteMonoid>) -> Result<(), MapError> {
    if same_monoid(expected, found) {
        Ok(())
    } else {
        Err(MapError::DomainMismatch { expected: expected.name().to_owned(), found: found.name().to_owned() })
    }
}

/// A function between monoids that preserves the neutral element.
#[derive(Clone, Debug)]
pub struct PointedMap {
    domain: Arc<FiniteMonoid>,
    codomain: Arc<FiniteMonoid>,
    values: Vec<usize>,
}

impl PartialEq for PointedMap {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
            && same_monoid(&self.domain, &other.domain)
            && same_monoid(&self.codomain, &other.codomain)
    }
}

impl Eq for PointedMap {}

impl PointedMap {
    pub fn new(
        domain: Arc<FiniteMonoid>,
        codomain: Arc<FiniteMonoid>,
        values: Vec<usize>,
    ) -> Result<Self, MapError> {
        if values.len() != domain.order() {
            return Err(MapError::LengthMismatch {
                domain: domain.name().to_owned(),
                expected: domain.order(),
                found: values.len(),
            });
        }
        if let Some(element) = values.iter().position(|&v| v >= codomain.order()) {
            return Err(MapError::ValueOutOfRange {
                codomain: codomain.name().to_owned(),
                element,
                value: values[element],
            });
        }
        let at_zero = values[domain.identity()];
        if at_zero != codomain.identity() {
            return Err(MapError::NotZeroPreserving { value: at_zero, expected: codomain.identity() });
        }
        Ok(PointedMap { domain, codomain, values })
    }

    /// Caller guarantees the invariants.
    pub(crate) fn from_parts(domain: Arc<FiniteMonoid>, codomain: Arc<FiniteMonoid>, values: Vec<usize>) -> Self {
        debug_assert_eq!(values.len(), domain.order());
        debug_assert_eq!(values[domain.identity()], codomain.identity());
        PointedMap { domain, codomain, values }
    }

    pub fn zero(domain: Arc<FiniteMonoid>, codomain: Arc<FiniteMonoid>) -> Self {
        let values = vec![codomain.identity(); domain.order()];
        PointedMap { domain, codomain, values }
    }

    pub fn identity(monoid: Arc<FiniteMonoid>) -> Self {
        let values = (0..monoid.order()).collect();
        PointedMap { domain: monoid.clone(), codomain: monoid, values }
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.values[a]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn domain(&self) -> &Arc<FiniteMonoid> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteMonoid> {
        &self.codomain
    }

    pub fn is_zero(&self) -> bool {
        let z = self.codomain.identity();
        self.values.iter().all(|&v| v == z)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.codomain.order()];
        self.values.iter().all(|&v| !std::mem::replace(&mut hit[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain.order()];
        for &v in &self.values {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.order() == self.codomain.order() && self.is_injective()
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> Option<PointedMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.values.len()];
        for (a, &v) in self.values.iter().enumerate() {
            inv[v] = a;
        }
        Some(PointedMap::from_parts(self.codomain.clone(), self.domain.clone(), inv))
    }

    /// The first pair `(a, a')` in lexicographic order with
    /// `f(a + a') != f(a) + f(a')`.
    pub fn homomorphism_violation(&self) -> Option<(usize, usize)> {
        let (d, c) = (&*self.domain, &*self.codomain);
        let n = d.order();
        for a in 0..n {
            for b in 0..n {
                if self.values[d.op(a, b)] != c.op(self.values[a], self.values[b]) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_homomorphism(&self) -> bool {
        self.homomorphism_violation().is_none()
    }

    /// `self + other`, evaluated pointwise in the codomain.
    pub fn pointwise_add(&self, other: &PointedMap) -> Result<PointedMap, MapError> {
        expect_same(&self.domain, &other.domain)?;
        expect_same(&self.codomain, &other.codomain)?;
        let c = &*self.codomain;
        let values = self.values.iter().zip(&other.values).map(|(&x, &y)| c.op(x, y)).collect();
        Ok(PointedMap::from_parts(self.domain.clone(), self.codomain.clone(), values))
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &PointedMap) -> Result<PointedMap, MapError> {
        expect_same(&self.domain, &inner.codomain)?;
        let values = inner.values.iter().map(|&v| self.values[v]).collect();
        Ok(PointedMap::from_parts(inner.domain.clone(), self.codomain.clone(), values))
    }
}

/// `f + g` in `Map(A, B)`.
pub fn pointwise_add(f: &PointedMap, g: &PointedMap) -> Result<PointedMap, MapError> {
    f.pointwise_add(g)
}

/// `g ∘ f`.
pub fn compose(g: &PointedMap, f: &PointedMap) -> Result<PointedMap, MapError> {
    g.after(f)
}

/// A pointed map known to preserve the operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism(PointedMap);

impl Homomorphism {
    pub fn new(map: PointedMap) -> Result<Self, MapError> {
        match map.homomorphism_violation() {
            Some((a, b)) => Err(MapError::NotHomomorphism(a, b)),
            None => Ok(Homomorphism(map)),
        }
    }

    pub fn from_values(
        domain: Arc<FiniteMonoid>,
        codomain: Arc<FiniteMonoid>,
        values: Vec<usize>,
    ) -> Result<Self, MapError> {
        Self::new(PointedMap::new(domain, codomain, values)?)
    }

    pub(crate) fn from_map_unchecked(map: PointedMap) -> Self {
        debug_assert!(map.is_homomorphism());
        Homomorphism(map)
    }

    pub fn identity(monoid: Arc<FiniteMonoid>) -> Self {
        Homomorphism(PointedMap::identity(monoid))
    }

    pub fn zero(domain: Arc<FiniteMonoid>, codomain: Arc<FiniteMonoid>) -> Self {
        Homomorphism(PointedMap::zero(domain, codomain))
    }

    pub fn as_map(&self) -> &PointedMap {
        &self.0
    }

    pub fn into_map(self) -> PointedMap {
        self.0
    }

    pub fn then(&self, outer: &Homomorphism) -> Result<Homomorphism, MapError> {
        outer.0.after(&self.0).map(Homomorphism)
    }

    pub fn inverse(&self) -> Option<Homomorphism> {
        self.0.inverse().map(Homomorphism)
    }
}

impl Deref for Homomorphism {
    type Target = PointedMap;

    fn deref(&self) -> &PointedMap {
        &self.0
    }
}

/// The submonoid `{a : p(a) = 1}` together with its inclusion. Elements keep
/// the ambient order and labels.
pub fn kernel(p: &Homomorphism) -> (Arc<FiniteMonoid>, Homomorphism) {
    let a = p.domain();
    let one = p.codomain().identity();
    let members: Vec<usize> = (0..a.order()).filter(|&i| p.apply(i) == one).collect();
    let mut position = vec![usize::MAX; a.order()];
    for (pos, &m) in members.iter().enumerate() {
        position[m] = pos;
    }
    let n = members.len();
    let mut table = Vec::with_capacity(n * n);
    for &i in &members {
        for &j in &members {
            table.push(position[a.op(i, j)]);
        }
    }
    let labels = members.iter().map(|&i| a.label(i).to_owned()).collect();
    let ker = FiniteMonoid::from_flat(format!("ker({})", a.name()), labels, position[a.identity()], table)
        .expect("a kernel is a submonoid")
        .with_notation(a.notation());
    let ker = Arc::new(ker);
    let inclusion = PointedMap::from_parts(ker.clone(), a.clone(), members);
    (ker, Homomorphism(inclusion))
}

/// Every pointed map `domain → codomain`, in lexicographic order of values.
pub fn all_pointed_maps(domain: &Arc<FiniteMonoid>, codomain: &Arc<FiniteMonoid>) -> Vec<PointedMap> {
    let (n, m) = (domain.order(), codomain.order());
    let free: Vec<usize> = (0..n).filter(|&i| i != domain.identity()).collect();
    let mut out = Vec::new();
    let mut values = vec![codomain.identity(); n];
    let mut counter = vec![0usize; free.len()];
    loop {
        for (slot, &i) in free.iter().enumerate() {
            values[i] = counter[slot];
        }
        out.push(PointedMap::from_parts(domain.clone(), codomain.clone(), values.clone()));
        // odometer with the last free element varying fastest
        let mut pos = free.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            counter[pos] += 1;
            if counter[pos] < m {
                break;
            }
            counter[pos] = 0;
        }
    }
}

/// Every homomorphism `domain → codomain`, in lexicographic order of values.
pub fn all_homomorphisms(domain: &Arc<FiniteMonoid>, codomain: &Arc<FiniteMonoid>) -> Vec<Homomorphism> {
    let n = domain.order();
    let mut values = vec![usize::MAX; n];
    values[domain.identity()] = codomain.identity();
    let mut out = Vec::new();
    extend_homomorphism(domain, codomain, &mut values, 0, &mut out);
    out
}

fn extend_homomorphism(
    d: &Arc<FiniteMonoid>,
    c: &Arc<FiniteMonoid>,
    values: &mut Vec<usize>,
    next: usize,
    out: &mut Vec<Homomorphism>,
) {
    let n = d.order();
    if next == n {
        out.push(Homomorphism(PointedMap::from_parts(d.clone(), c.clone(), values.clone())));
        return;
    }
    if next == d.identity() {
        extend_homomorphism(d, c, values, next + 1, out);
        return;
    }
    for v in 0..c.order() {
        values[next] = v;
        if partial_hom_consistent(d, c, values, next) {
            extend_homomorphism(d, c, values, next + 1, out);
        }
    }
    values[next] = usize::MAX;
}

/// Checks every pair involving `last` whose operands and product are assigned.
fn partial_hom_consistent(d: &FiniteMonoid, c: &FiniteMonoid, values: &[usize], last: usize) -> bool {
    let n = d.order();
    for other in 0..n {
        if values[other] == usize::MAX {
            continue;
        }
        for (x, y) in [(last, other), (other, last)] {
            let xy = values[d.op(x, y)];
            if xy != usize::MAX && xy != c.op(values[x], values[y]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn zero_is_neutral_for_pointwise_addition() {
        let x = Arc::new(catalog::cyclic(3));
        let f = PointedMap::new(x.clone(), x.clone(), vec![0, 2, 2]).unwrap();
        let z = PointedMap::zero(x.clone(), x.clone());
        assert_eq!(pointwise_add(&z, &f).unwrap(), f);
        assert_eq!(pointwise_add(&z, &z).unwrap(), z);
    }

    #[test]
    fn identity_and_zero_under_composition() {
        let x = Arc::new(catalog::cyclic(3));
        let f = PointedMap::new(x.clone(), x.clone(), vec![0, 2, 1]).unwrap();
        let id = PointedMap::identity(x.clone());
        let z = PointedMap::zero(x.clone(), x.clone());
        assert_eq!(compose(&id, &f).unwrap(), f);
        assert_eq!(compose(&z, &f).unwrap(), z);
    }

    #[test]
    fn zero_map_is_a_homomorphism() {
        let a = Arc::new(catalog::cyclic(3));
        let b = Arc::new(catalog::semilattice2());
        assert!(PointedMap::zero(a, b).is_homomorphism());
    }

    #[test]
    fn map_must_preserve_zero() {
        let x = Arc::new(catalog::cyclic(2));
        assert_eq!(
            PointedMap::new(x.clone(), x, vec![1, 0]).unwrap_err(),
            MapError::NotZeroPreserving { value: 1, expected: 0 }
        );
    }

    #[test]
    fn mismatched_domains_are_rejected() {
        let a = Arc::new(catalog::cyclic(2));
        let b = Arc::new(catalog::cyclic(3));
        let f = PointedMap::zero(a.clone(), b.clone());
        let g = PointedMap::zero(b.clone(), b.clone());
        assert!(matches!(pointwise_add(&f, &g), Err(MapError::DomainMismatch { .. })));
        assert!(matches!(compose(&f, &g), Err(MapError::DomainMismatch { .. })));
    }

    #[test]
    fn kernel_of_identity_is_trivial_and_of_zero_is_everything() {
        let z3 = Arc::new(catalog::cyclic(3));
        let (k, inc) = kernel(&Homomorphism::identity(z3.clone()));
        assert_eq!(k.order(), 1);
        assert!(inc.is_injective());
        let (k, inc) = kernel(&Homomorphism::zero(z3.clone(), Arc::new(catalog::cyclic(2))));
        assert_eq!(k.order(), 3);
        assert_eq!(inc.values(), &[0, 1, 2]);
    }

    #[test]
    fn enumerations_have_expected_sizes() {
        let z3 = Arc::new(catalog::cyclic(3));
        let maps = all_pointed_maps(&z3, &z3);
        assert_eq!(maps.len(), 9);
        assert_eq!(maps[1].values(), &[0, 0, 1]);
        let homs = all_homomorphisms(&z3, &z3);
        // x ↦ 0, x ↦ x, x ↦ 2x
        assert_eq!(homs.len(), 3);
        assert!(homs.iter().all(|h| h.is_homomorphism()));
        let brute: Vec<_> = maps.into_iter().filter(PointedMap::is_homomorphism).collect();
        assert_eq!(brute.len(), homs.len());
    }
}
