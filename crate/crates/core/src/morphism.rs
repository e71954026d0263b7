//! Morphisms of semi-biproducts, the split short five check, and
//! classification up to isomorphisms fixing `X` and `B`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::action::synthesize;
use crate::iso;
use crate::maps::{same_monoid, Homomorphism, MapError, PointedMap};
use crate::monoid::FiniteMonoid;
use crate::semibiproduct::{beta_embedding, extract_pseudo_action, SemiBiproduct, TheoremViolation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Square {
    #[serde(rename = "q'f1=f0q")]
    Q,
    #[serde(rename = "p'f1=f2p")]
    P,
    #[serde(rename = "k'f0=f1k")]
    K,
    #[serde(rename = "f1s=s'f2")]
    S,
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Square::Q => "q'f1 = f0q",
            Square::P => "p'f1 = f2p",
            Square::K => "k'f0 = f1k",
            Square::S => "f1s = s'f2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("component {component} has the wrong domain or codomain")]
    Typing { component: &'static str },
    #[error("square {0} fails at element {1}")]
    MorphismSquaresFail(Square, usize),
    #[error("precondition fails: {0}")]
    PreconditionFail(&'static str),
    #[error("f1 is not bijective")]
    NotIsomorphism,
    #[error("k f0^-1 q' + s f2^-1 p' differs from the inverse of f1")]
    InverseMismatch,
    #[error("k f0^-1 q' + s f2^-1 p' is not a homomorphism")]
    InverseNotHomomorphism,
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Theorem(#[from] TheoremViolation),
}

/// `(f0, f1, f2)` from `source` to `target` commuting with all four maps.
#[derive(Clone, Debug)]
pub struct SemiBiproductMorphism {
    source: SemiBiproduct,
    target: SemiBiproduct,
    f0: Homomorphism,
    f1: Homomorphism,
    f2: Homomorphism,
}

impl SemiBiproductMorphism {
    pub fn new(
        source: SemiBiproduct,
        target: SemiBiproduct,
        f0: Homomorphism,
        f1: Homomorphism,
        f2: Homomorphism,
    ) -> Result<Self, MorphismError> {
        let typed = |f: &Homomorphism, d: &Arc<FiniteMonoid>, c: &Arc<FiniteMonoid>| {
            same_monoid(f.domain(), d) && same_monoid(f.codomain(), c)
        };
        if !typed(&f0, source.x(), target.x()) {
            return Err(MorphismError::Typing { component: "f0" });
        }
        if !typed(&f1, source.a(), target.a()) {
            return Err(MorphismError::Typing { component: "f1" });
        }
        if !typed(&f2, source.b(), target.b()) {
            return Err(MorphismError::Typing { component: "f2" });
        }
        let (s, t) = (&source, &target);
        if let Some(a) = (0..s.a().order()).find(|&a| t.q().apply(f1.apply(a)) != f0.apply(s.q().apply(a))) {
            return Err(MorphismError::MorphismSquaresFail(Square::Q, a));
        }
        if let Some(a) = (0..s.a().order()).find(|&a| t.p().apply(f1.apply(a)) != f2.apply(s.p().apply(a))) {
            return Err(MorphismError::MorphismSquaresFail(Square::P, a));
        }
        if let Some(x) = (0..s.x().order()).find(|&x| t.k().apply(f0.apply(x)) != f1.apply(s.k().apply(x))) {
            return Err(MorphismError::MorphismSquaresFail(Square::K, x));
        }
        if let Some(b) = (0..s.b().order()).find(|&b| f1.apply(s.s().apply(b)) != t.s().apply(f2.apply(b))) {
            return Err(MorphismError::MorphismSquaresFail(Square::S, b));
        }
        Ok(SemiBiproductMorphism { source, target, f0, f1, f2 })
    }

    pub fn identity(sb: &SemiBiproduct) -> Self {
        SemiBiproductMorphism::new(
            sb.clone(),
            sb.clone(),
            Homomorphism::identity(sb.x().clone()),
            Homomorphism::identity(sb.a().clone()),
            Homomorphism::identity(sb.b().clone()),
        )
        .expect("identity squares commute")
    }

    pub fn source(&self) -> &SemiBiproduct {
        &self.source
    }

    pub fn target(&self) -> &SemiBiproduct {
        &self.target
    }

    pub fn f0(&self) -> &Homomorphism {
        &self.f0
    }

    pub fn f1(&self) -> &Homomorphism {
        &self.f1
    }

    pub fn f2(&self) -> &Homomorphism {
        &self.f2
    }
}

/// Outcome of a successful split short five check.
#[derive(Clone, Debug)]
pub struct SplitFive {
    /// `k f0⁻¹ q' + s f2⁻¹ p'`, equal to `f1⁻¹`.
    pub inverse: Homomorphism,
}

/// With `f0`, `f2` bijective, confirms that `f1` is bijective and that
/// `k f0⁻¹ q' + s f2⁻¹ p'` is a homomorphism inverse to it.
pub fn split_five_check(m: &SemiBiproductMorphism) -> Result<SplitFive, MorphismError> {
    let f0_inv = m.f0.inverse().ok_or(MorphismError::PreconditionFail("f0 is not bijective"))?;
    let f2_inv = m.f2.inverse().ok_or(MorphismError::PreconditionFail("f2 is not bijective"))?;
    let (s, t) = (&m.source, &m.target);
    let left = s.k().as_map().after(&f0_inv.as_map().after(t.q())?)?;
    let right = s.s().after(&f2_inv.as_map().after(t.p().as_map())?)?;
    let g = left.pointwise_add(&right)?;
    let f1_inv = m.f1.inverse().ok_or(MorphismError::NotIsomorphism)?;
    if g != *f1_inv.as_map() {
        return Err(MorphismError::InverseMismatch);
    }
    let inverse = Homomorphism::new(g).map_err(|_| MorphismError::InverseNotHomomorphism)?;
    Ok(SplitFive { inverse })
}

/// `(id_X, β, id_B)` from `sb` to the synthetic semi-biproduct of its
/// pseudo-action, together with `α` as a pointed map.
pub fn comparison_morphism(sb: &SemiBiproduct) -> Result<(SemiBiproductMorphism, PointedMap), MorphismError> {
    let pa = extract_pseudo_action(sb)?;
    let (synth, target) = synthesize(&pa).map_err(TheoremViolation::from)?;
    let beta = beta_embedding(sb)?;
    let index: BTreeMap<(usize, usize), usize> = synth.carrier.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let values: Vec<usize> = beta.values.iter().map(|pair| index[pair]).collect();
    let f1 = Homomorphism::from_values(sb.a().clone(), target.a().clone(), values)?;
    let alpha_values: Vec<usize> = synth.carrier.iter().map(|&(x, b)| sb.alpha(x, b)).collect();
    let alpha = PointedMap::new(target.a().clone(), sb.a().clone(), alpha_values)?;
    let m = SemiBiproductMorphism::new(
        sb.clone(),
        target.clone(),
        Homomorphism::identity(sb.x().clone()),
        f1,
        Homomorphism::identity(sb.b().clone()),
    )?;
    Ok((m, alpha))
}

/// An isomorphism `(id_X, f1, id_B)` from `from` to `to`, if one exists.
pub fn fixed_endpoint_isomorphism(from: &SemiBiproduct, to: &SemiBiproduct) -> Option<SemiBiproductMorphism> {
    if !same_monoid(from.x(), to.x()) || !same_monoid(from.b(), to.b()) {
        return None;
    }
    let f1 = iso::find_isomorphism(from.a(), to.a(), |a| {
        let target = (from.q().apply(a), from.p().apply(a));
        (0..to.a().order()).filter(|&c| (to.q().apply(c), to.p().apply(c)) == target).collect()
    })?;
    let f1 = Homomorphism::from_values(from.a().clone(), to.a().clone(), f1).ok()?;
    SemiBiproductMorphism::new(
        from.clone(),
        to.clone(),
        Homomorphism::identity(from.x().clone()),
        f1,
        Homomorphism::identity(from.b().clone()),
    )
    .ok()
}

#[derive(Clone, Debug)]
pub struct IsoClass {
    /// The member with the least [`SemiBiproduct::table_key`].
    pub representative: SemiBiproduct,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("items do not share X and B")]
    MixedEndpoints,
    #[error(transparent)]
    Theorem(#[from] TheoremViolation),
    #[error("items {0} and {1} share a pseudo-action but no isomorphism was found")]
    Inconsistent(usize, usize),
}

/// Partitions semi-biproducts over a common `X`, `B` into classes under
/// isomorphisms `(id_X, f1, id_B)`. Items are bucketed by their extracted
/// pseudo-action, which such isomorphisms preserve, and membership of each
/// bucket is confirmed by an explicit isomorphism. Classes are sorted by
/// representative.
pub fn classify_up_to_iso(items: &[SemiBiproduct]) -> Result<Vec<IsoClass>, ClassifyError> {
    let Some(first) = items.first() else {
        return Ok(Vec::new());
    };
    if items.iter().any(|sb| !same_monoid(sb.x(), first.x()) || !same_monoid(sb.b(), first.b())) {
        return Err(ClassifyError::MixedEndpoints);
    }
    let keys: Vec<(Vec<usize>, Vec<usize>, Vec<usize>)> = items
        .par_iter()
        .map(|sb| {
            extract_pseudo_action(sb).map(|pa| {
                let (phi, rho, gamma) = pa.table_key();
                (phi.to_vec(), rho.to_vec(), gamma.to_vec())
            })
        })
        .collect::<Result<_, _>>()?;
    let mut buckets: BTreeMap<&(Vec<usize>, Vec<usize>, Vec<usize>), Vec<usize>> = BTreeMap::new();
    for (i, key) in keys.iter().enumerate() {
        buckets.entry(key).or_default().push(i);
    }
    let buckets: Vec<Vec<usize>> = buckets.into_values().collect();
    let mut classes: Vec<IsoClass> = buckets
        .par_iter()
        .map(|members| {
            let rep = *members.iter().min_by_key(|&&i| (items[i].table_key(), i)).expect("nonempty bucket");
            for &i in members {
                if i != rep && fixed_endpoint_isomorphism(&items[rep], &items[i]).is_none() {
                    return Err(ClassifyError::Inconsistent(rep, i));
                }
            }
            Ok(IsoClass { representative: items[rep].clone(), size: members.len() })
        })
        .collect::<Result<_, _>>()?;
    classes.sort_by_key(|c| c.representative.table_key());
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::synthesize;
    use crate::catalog;
    use crate::enumerate::{enumerate_pseudo_actions, SearchConfig};
    use crate::gallery;

    #[test]
    fn identity_on_e1_passes() {
        let sb = gallery::paper_e1().unwrap();
        let verdict = split_five_check(&SemiBiproductMorphism::identity(&sb)).unwrap();
        assert_eq!(verdict.inverse.values(), &[0, 1, 2]);
    }

    #[test]
    fn comparison_inverse_is_alpha() {
        for sb in [gallery::paper_e1().unwrap(), gallery::z3_semidirect_z2()] {
            let (m, alpha) = comparison_morphism(&sb).unwrap();
            let verdict = split_five_check(&m).unwrap();
            assert_eq!(verdict.inverse.as_map(), &alpha);
        }
    }

    #[test]
    fn twisted_s3_is_isomorphic() {
        let sb = gallery::z3_semidirect_z2();
        let twisted = gallery::twisted_copy(&sb, &[0, 4, 2, 5, 1, 3]).unwrap();
        let m = fixed_endpoint_isomorphism(&sb, &twisted).unwrap();
        assert_eq!(m.f1().values(), &[0, 4, 2, 5, 1, 3]);
        split_five_check(&m).unwrap();
    }

    #[test]
    fn broken_square_is_named() {
        let sb = gallery::z3_semidirect_z2();
        let twisted = gallery::twisted_copy(&sb, &[0, 4, 2, 5, 1, 3]).unwrap();
        let err = SemiBiproductMorphism::new(
            sb.clone(),
            twisted,
            Homomorphism::identity(sb.x().clone()),
            Homomorphism::from_values(sb.a().clone(), sb.a().clone(), (0..6).collect()).unwrap(),
            Homomorphism::identity(sb.b().clone()),
        )
        .unwrap_err();
        assert!(matches!(err, MorphismError::Typing { component: "f1" }));
    }

    #[test]
    fn z2_by_z2_has_two_classes() {
        let z2 = catalog::cyclic(2);
        let actions = enumerate_pseudo_actions(&z2, &z2, &SearchConfig::default()).unwrap();
        assert_eq!(actions.len(), 2);
        let sbs: Vec<_> = actions.iter().map(|pa| synthesize(pa).unwrap().1).collect();
        let classes = classify_up_to_iso(&sbs).unwrap();
        assert_eq!(classes.len(), 2);
        let groups: Vec<bool> = classes.iter().map(|c| iso::are_isomorphic(c.representative.a(), &catalog::cyclic(4))).collect();
        assert_eq!(groups, vec![false, true]);
    }

    #[test]
    fn empty_and_singleton() {
        assert!(classify_up_to_iso(&[]).unwrap().is_empty());
        assert_eq!(classify_up_to_iso(&[gallery::paper_e1().unwrap()]).unwrap().len(), 1);
    }
}
