//! Map-transformation structures: for each pair of objects a monoid
//! `map(A, B)`, an inclusion `ε` of morphisms, whiskering `g x f` and an
//! associative composition `μ`.
//!
//! Universal statements are certified relative to an explicit finite
//! universe of objects.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::maps::{all_homomorphisms, all_pointed_maps, same_monoid, Homomorphism, PointedMap};
use crate::monoid::FiniteMonoid;
use crate::semibiproduct::{Condition, MapRole};

/// A map-transformation structure over finite monoids.
///
/// The provided methods realize the concrete pointed-map operations;
/// instances override what they change.
pub trait MapTransformStructure: Sync {
    fn name(&self) -> &str;

    /// Whether the monoid is an object of the structure.
    fn admits(&self, _object: &FiniteMonoid) -> bool {
        true
    }

    /// The carrier of `map(A, B)`.
    fn maps(&self, a: &Arc<FiniteMonoid>, b: &Arc<FiniteMonoid>) -> Vec<PointedMap>;

    fn contains(&self, x: &PointedMap) -> bool;

    fn epsilon(&self, f: &Homomorphism) -> PointedMap {
        f.as_map().clone()
    }

    fn add(&self, x: &PointedMap, y: &PointedMap) -> PointedMap {
        x.pointwise_add(y).expect("maps share domain and codomain")
    }

    fn zero(&self, a: &Arc<FiniteMonoid>, b: &Arc<FiniteMonoid>) -> PointedMap {
        PointedMap::zero(a.clone(), b.clone())
    }

    /// `μ(x, y)` for `y ∈ map(A, B)`, `x ∈ map(B, C)`.
    fn mu(&self, x: &PointedMap, y: &PointedMap) -> PointedMap {
        x.after(y).expect("composable maps")
    }

    /// Values of `g x f = map(f, g)(x)`, written into `out`.
    fn whisker_into(&self, g: &Homomorphism, x: &PointedMap, f: &Homomorphism, out: &mut Vec<usize>) {
        debug_assert!(same_monoid(f.codomain(), x.domain()) && same_monoid(x.codomain(), g.domain()));
        out.clear();
        out.extend(f.values().iter().map(|&a| g.apply(x.apply(a))));
    }

    /// `g x f`; built on [`whisker_into`](Self::whisker_into).
    fn whisker(&self, g: &Homomorphism, x: &PointedMap, f: &Homomorphism) -> PointedMap {
        let mut values = Vec::with_capacity(f.domain().order());
        self.whisker_into(g, x, f, &mut values);
        PointedMap::from_parts(f.domain().clone(), g.codomain().clone(), values)
    }
}

/// Monoids with `map(A, B)` all zero-preserving maps.
#[derive(Clone, Copy, Debug, Default)]
pub struct MonoidInstance;

impl MapTransformStructure for MonoidInstance {
    fn name(&self) -> &str {
        "monoid"
    }

    fn maps(&self, a: &Arc<FiniteMonoid>, b: &Arc<FiniteMonoid>) -> Vec<PointedMap> {
        all_pointed_maps(a, b)
    }

    fn contains(&self, _x: &PointedMap) -> bool {
        true
    }
}

/// Commutative monoids with `map(A, B) = hom(A, B)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct CommutativeInstance;

impl MapTransformStructure for CommutativeInstance {
    fn name(&self) -> &str {
        "commutative-monoid"
    }

    fn admits(&self, object: &FiniteMonoid) -> bool {
        object.is_commutative()
    }

    fn maps(&self, a: &Arc<FiniteMonoid>, b: &Arc<FiniteMonoid>) -> Vec<PointedMap> {
        all_homomorphisms(a, b).into_iter().map(Homomorphism::into_map).collect()
    }

    fn contains(&self, x: &PointedMap) -> bool {
        x.is_homomorphism()
    }
}

/// Looks up a built-in instance by name.
pub fn instance(name: &str) -> Option<&'static dyn MapTransformStructure> {
    match name {
        "monoid" => Some(&MonoidInstance),
        "commutative-monoid" => Some(&CommutativeInstance),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Axiom {
    #[serde(rename = "g0f=0")]
    ZeroWhisker,
    #[serde(rename = "g(x+y)f=gxf+gyf")]
    WhiskerAdditive,
    #[serde(rename = "1x1=x")]
    UnitWhisker,
    #[serde(rename = "g'(gxf)f'=(g'g)x(ff')")]
    WhiskerComposition,
    #[serde(rename = "ε(0)=0")]
    EpsilonZero,
    #[serde(rename = "gε(u)f=ε(guf)")]
    EpsilonNatural,
    #[serde(rename = "μ(x,ε(f))=xf")]
    MuRightUnit,
    #[serde(rename = "μ(ε(g),x)=gx")]
    MuLeftUnit,
    #[serde(rename = "μ associative")]
    MuAssociative,
}

impl Axiom {
    pub const ALL: [Axiom; 9] = [
        Axiom::ZeroWhisker,
        Axiom::WhiskerAdditive,
        Axiom::UnitWhisker,
        Axiom::WhiskerComposition,
        Axiom::EpsilonZero,
        Axiom::EpsilonNatural,
        Axiom::MuRightUnit,
        Axiom::MuLeftUnit,
        Axiom::MuAssociative,
    ];
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::ZeroWhisker => "g0f = 0",
            Axiom::WhiskerAdditive => "g(x+y)f = gxf + gyf",
            Axiom::UnitWhisker => "1x1 = x",
            Axiom::WhiskerComposition => "g'(gxf)f' = (g'g)x(ff')",
            Axiom::EpsilonZero => "ε(0) = 0",
            Axiom::EpsilonNatural => "gε(u)f = ε(guf)",
            Axiom::MuRightUnit => "μ(x, ε(f)) = xf",
            Axiom::MuLeftUnit => "μ(ε(g), x) = gx",
            Axiom::MuAssociative => "μ(μ(x, y), z) = μ(x, μ(y, z))",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomOutcome {
    pub axiom: Axiom,
    pub checked: u64,
    pub failures: u64,
    pub first_witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub instance: String,
    pub objects: usize,
    pub outcomes: Vec<AxiomOutcome>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("axiom {axiom} fails: {witness}")]
pub struct AxiomFails {
    pub axiom: Axiom,
    pub witness: String,
}

impl AxiomReport {
    pub fn first_failure(&self) -> Option<AxiomFails> {
        self.outcomes.iter().find(|o| o.failures > 0).map(|o| AxiomFails {
            axiom: o.axiom,
            witness: o.first_witness.clone().unwrap_or_default(),
        })
    }

    pub fn all_pass(&self) -> bool {
        self.outcomes.iter().all(|o| o.failures == 0)
    }
}

#[derive(Default)]
struct Tally {
    checked: [u64; 9],
    failures: [u64; 9],
    witness: [Option<String>; 9],
}

impl Tally {
    fn record(&mut self, axiom: Axiom, ok: bool, witness: impl FnOnce() -> String) {
        let i = axiom as usize;
        self.checked[i] += 1;
        if !ok {
            self.failures[i] += 1;
            if self.witness[i].is_none() {
                self.witness[i] = Some(witness());
            }
        }
    }

    fn merge(mut self, mut other: Tally) -> Tally {
        for i in 0..9 {
            self.checked[i] += other.checked[i];
            self.failures[i] += other.failures[i];
            if self.witness[i].is_none() {
                self.witness[i] = other.witness[i].take();
            }
        }
        self
    }
}

fn describe(x: &PointedMap) -> String {
    format!("{}→{} {:?}", x.domain().name(), x.codomain().name(), x.values())
}

/// Precomputed hom and map sets over the sample.
struct Sample<'a, I: MapTransformStructure + ?Sized> {
    inst: &'a I,
    objects: Vec<Arc<FiniteMonoid>>,
    homs: Vec<Vec<Vec<Homomorphism>>>,
    maps: Vec<Vec<Vec<PointedMap>>>,
}

impl<'a, I: MapTransformStructure + ?Sized> Sample<'a, I> {
    fn new(inst: &'a I, objects: &[Arc<FiniteMonoid>]) -> Self {
        let objects: Vec<Arc<FiniteMonoid>> = objects.iter().filter(|o| inst.admits(o)).cloned().collect();
        let homs = objects.iter().map(|a| objects.iter().map(|b| all_homomorphisms(a, b)).collect()).collect();
        let maps = objects.iter().map(|a| objects.iter().map(|b| inst.maps(a, b)).collect()).collect();
        Sample { inst, objects, homs, maps }
    }
}

/// Checks the nine equations over all applicable tuples drawn from
/// `objects` (restricted to those the instance admits).
pub fn verify_structure_axioms<I: MapTransformStructure + ?Sized>(inst: &I, objects: &[Arc<FiniteMonoid>]) -> AxiomReport {
    let sample = Sample::new(inst, objects);
    let n = sample.objects.len();
    let tally = (0..n)
        .into_par_iter()
        .map(|a| axioms_from(&sample, a))
        .reduce(Tally::default, Tally::merge);
    AxiomReport {
        instance: inst.name().to_owned(),
        objects: n,
        outcomes: Axiom::ALL
            .iter()
            .map(|&axiom| {
                let i = axiom as usize;
                AxiomOutcome {
                    axiom,
                    checked: tally.checked[i],
                    failures: tally.failures[i],
                    first_witness: tally.witness[i].clone(),
                }
            })
            .collect(),
    }
}

/// All instances whose source object `A` of `map(A, B)` is object `a`.
fn axioms_from<I: MapTransformStructure + ?Sized>(s: &Sample<'_, I>, a: usize) -> Tally {
    let inst = s.inst;
    let n = s.objects.len();
    let mut t = Tally::default();
    let obj = &s.objects;
    for b in 0..n {
        let zero_ab = inst.zero(&obj[a], &obj[b]);
        let eps_zero = inst.epsilon(&Homomorphism::zero(obj[a].clone(), obj[b].clone()));
        t.record(Axiom::EpsilonZero, eps_zero == zero_ab, || describe(&eps_zero));
        let id_a = Homomorphism::identity(obj[a].clone());
        let id_b = Homomorphism::identity(obj[b].clone());
        for x in &s.maps[a][b] {
            let w = inst.whisker(&id_b, x, &id_a);
            t.record(Axiom::UnitWhisker, w == *x, || describe(x));
        }
        for a2 in 0..n {
            for b2 in 0..n {
                for f in &s.homs[a2][a] {
                    for g in &s.homs[b][b2] {
                        let w0 = inst.whisker(g, &zero_ab, f);
                        t.record(Axiom::ZeroWhisker, w0 == inst.zero(&obj[a2], &obj[b2]), || {
                            format!("f={} g={}", describe(f), describe(g))
                        });
                        for u in &s.homs[a][b] {
                            let lhs = inst.whisker(g, &inst.epsilon(u), f);
                            let guf = f.then(u).and_then(|uf| uf.then(g)).expect("composable");
                            t.record(Axiom::EpsilonNatural, lhs == inst.epsilon(&guf), || {
                                format!("u={} f={} g={}", describe(u), describe(f), describe(g))
                            });
                        }
                        let maps = &s.maps[a][b];
                        let whiskered: Vec<PointedMap> = maps.iter().map(|x| inst.whisker(g, x, f)).collect();
                        for (i, x) in maps.iter().enumerate() {
                            for (j, y) in maps.iter().enumerate() {
                                let lhs = inst.whisker(g, &inst.add(x, y), f);
                                let rhs = inst.add(&whiskered[i], &whiskered[j]);
                                t.record(Axiom::WhiskerAdditive, lhs == rhs, || {
                                    format!("x={} y={} f={} g={}", describe(x), describe(y), describe(f), describe(g))
                                });
                            }
                        }
                        let outer_f: Vec<(&Homomorphism, Homomorphism)> = (0..n)
                            .flat_map(|a3| s.homs[a3][a2].iter())
                            .map(|f2| (f2, f2.then(f).expect("composable")))
                            .collect();
                        let outer_g: Vec<(&Homomorphism, Homomorphism)> = (0..n)
                            .flat_map(|b3| s.homs[b2][b3].iter())
                            .map(|g2| (g2, g.then(g2).expect("composable")))
                            .collect();
                        let (mut lhs, mut rhs) = (Vec::new(), Vec::new());
                        for (i, x) in maps.iter().enumerate() {
                            let inner = &whiskered[i];
                            for (f2, ff2) in &outer_f {
                                for (g2, g2g) in &outer_g {
                                    inst.whisker_into(g2, inner, f2, &mut lhs);
                                    inst.whisker_into(g2g, x, ff2, &mut rhs);
                                    t.record(Axiom::WhiskerComposition, lhs == rhs, || {
                                        format!("x={} f={} g={}", describe(x), describe(f), describe(g))
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        for a2 in 0..n {
            for f in &s.homs[a2][a] {
                let ef = inst.epsilon(f);
                for x in &s.maps[a][b] {
                    let rhs = inst.whisker(&id_b, x, f);
                    t.record(Axiom::MuRightUnit, inst.mu(x, &ef) == rhs, || format!("x={} f={}", describe(x), describe(f)));
                }
            }
        }
        for b2 in 0..n {
            for g in &s.homs[b][b2] {
                let eg = inst.epsilon(g);
                for x in &s.maps[a][b] {
                    let rhs = inst.whisker(g, x, &id_a);
                    t.record(Axiom::MuLeftUnit, inst.mu(&eg, x) == rhs, || format!("x={} g={}", describe(x), describe(g)));
                }
            }
        }
        for c in 0..n {
            for d in 0..n {
                for z in &s.maps[a][b] {
                    for y in &s.maps[b][c] {
                        let yz = inst.mu(y, z);
                        for x in &s.maps[c][d] {
                            let lhs = inst.mu(&inst.mu(x, y), z);
                            t.record(Axiom::MuAssociative, lhs == inst.mu(x, &yz), || {
                                format!("x={} y={} z={}", describe(x), describe(y), describe(z))
                            });
                        }
                    }
                }
            }
        }
    }
    t
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("object {0} is not admitted by the instance")]
    ObjectNotAdmitted(String),
    #[error("{0} is not a morphism")]
    NotMorphism(MapRole),
    #[error("{0} is not in map(-, -) of the instance")]
    NotInMap(MapRole),
    #[error("{role} has the wrong domain or codomain")]
    Typing { role: MapRole },
    #[error("condition {0} fails")]
    ConditionFails(Condition),
    #[error("morphism is not a monomorphism")]
    NotMono,
}

/// A semi-biproduct inside a map-transformation structure.
#[derive(Clone, Debug)]
pub struct AbstractSemiBiproduct {
    pub x: Arc<FiniteMonoid>,
    pub a: Arc<FiniteMonoid>,
    pub b: Arc<FiniteMonoid>,
    pub p: Homomorphism,
    pub k: Homomorphism,
    pub q: PointedMap,
    pub s: PointedMap,
}

/// Checks `ps = ε(1)`, `qk = ε(1)`, `kq + sp = ε(1)`, `pk = 0` and
/// `μ(q, s) = ε(0)` in that order.
#[allow(clippy::too_many_arguments)]
pub fn verify_abstract_semibiproduct<I: MapTransformStructure + ?Sized>(
    inst: &I,
    x: Arc<FiniteMonoid>,
    a: Arc<FiniteMonoid>,
    b: Arc<FiniteMonoid>,
    p: PointedMap,
    k: PointedMap,
    q: PointedMap,
    s: PointedMap,
) -> Result<AbstractSemiBiproduct, TransformError> {
    for o in [&x, &a, &b] {
        if !inst.admits(o) {
            return Err(TransformError::ObjectNotAdmitted(o.name().to_owned()));
        }
    }
    let typed = |m: &PointedMap, d: &Arc<FiniteMonoid>, c: &Arc<FiniteMonoid>| **m.domain() == **d && **m.codomain() == **c;
    for (role, m, d, c) in [
        (MapRole::P, &p, &a, &b),
        (MapRole::K, &k, &x, &a),
        (MapRole::Q, &q, &a, &x),
        (MapRole::S, &s, &b, &a),
    ] {
        if !typed(m, d, c) {
            return Err(TransformError::Typing { role });
        }
    }
    let p = Homomorphism::new(p).map_err(|_| TransformError::NotMorphism(MapRole::P))?;
    let k = Homomorphism::new(k).map_err(|_| TransformError::NotMorphism(MapRole::K))?;
    if !inst.contains(&q) {
        return Err(TransformError::NotInMap(MapRole::Q));
    }
    if !inst.contains(&s) {
        return Err(TransformError::NotInMap(MapRole::S));
    }
    let (ep, ek) = (inst.epsilon(&p), inst.epsilon(&k));
    if inst.mu(&ep, &s) != inst.epsilon(&Homomorphism::identity(b.clone())) {
        return Err(TransformError::ConditionFails(Condition::PsIdentity));
    }
    if inst.mu(&q, &ek) != inst.epsilon(&Homomorphism::identity(x.clone())) {
        return Err(TransformError::ConditionFails(Condition::QkIdentity));
    }
    let sum = inst.add(&inst.mu(&ek, &q), &inst.mu(&s, &ep));
    if sum != inst.epsilon(&Homomorphism::identity(a.clone())) {
        return Err(TransformError::ConditionFails(Condition::KqSpIdentity));
    }
    if inst.mu(&ep, &ek) != inst.zero(&x, &b) {
        return Err(TransformError::ConditionFails(Condition::PkZero));
    }
    if inst.mu(&q, &s) != inst.epsilon(&Homomorphism::zero(b.clone(), x.clone())) {
        return Err(TransformError::ConditionFails(Condition::QsZero));
    }
    Ok(AbstractSemiBiproduct { x, a, b, p, k, q, s })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub object: String,
    pub values: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecognizerReport {
    pub instance: String,
    pub universe: usize,
    pub maps_checked: u64,
    /// Cancellation over the universe (monic for recognizers, epic for
    /// co-recognizers).
    pub cancellable: bool,
    pub counterexample: Option<Counterexample>,
}

impl RecognizerReport {
    pub fn passes(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn first_counterexample<F>(universe: &[Arc<FiniteMonoid>], per_object: F) -> (u64, Option<Counterexample>)
where
    F: Fn(&Arc<FiniteMonoid>) -> (u64, Option<Vec<usize>>) + Sync,
{
    let results: Vec<(u64, Option<Vec<usize>>)> = universe.par_iter().map(&per_object).collect();
    let checked = results.iter().map(|r| r.0).sum();
    let cx = results
        .into_iter()
        .zip(universe)
        .find_map(|((_, v), y)| v.map(|values| Counterexample { object: y.name().to_owned(), values }));
    (checked, cx)
}

/// For every `Y` and `u ∈ map(Y, X)`: if `k u ∈ ε(hom(Y, A))` then
/// `u ∈ ε(hom(Y, X))`. The first counterexample in universe order, then
/// lexicographic map order, is reported.
pub fn check_recognizer<I: MapTransformStructure + ?Sized>(
    inst: &I,
    k: &Homomorphism,
    universe: &[Arc<FiniteMonoid>],
) -> Result<RecognizerReport, TransformError> {
    if !k.is_injective() {
        return Err(TransformError::NotMono);
    }
    let universe: Vec<Arc<FiniteMonoid>> = universe.iter().filter(|y| inst.admits(y)).cloned().collect();
    let ek = inst.epsilon(k);
    let (maps_checked, counterexample) = first_counterexample(&universe, |y| {
        let maps = inst.maps(y, k.domain());
        let bad = maps.iter().find(|u| inst.mu(&ek, u).is_homomorphism() && !u.is_homomorphism());
        (maps.len() as u64, bad.map(|u| u.values().to_vec()))
    });
    let cancellable = universe.par_iter().all(|y| {
        let homs = all_homomorphisms(y, k.domain());
        homs.iter().enumerate().all(|(i, g)| {
            homs[i + 1..].iter().all(|h| g.then(k).ok() != h.then(k).ok())
        })
    });
    Ok(RecognizerReport { instance: inst.name().to_owned(), universe: universe.len(), maps_checked, cancellable, counterexample })
}

/// For every `Y` and `v ∈ map(B, Y)`: if `v p ∈ ε(hom(A, Y))` then
/// `v ∈ ε(hom(B, Y))`.
pub fn check_corecognizer<I: MapTransformStructure + ?Sized>(
    inst: &I,
    p: &Homomorphism,
    universe: &[Arc<FiniteMonoid>],
) -> RecognizerReport {
    let universe: Vec<Arc<FiniteMonoid>> = universe.iter().filter(|y| inst.admits(y)).cloned().collect();
    let ep = inst.epsilon(p);
    let (maps_checked, counterexample) = first_counterexample(&universe, |y| {
        let maps = inst.maps(p.codomain(), y);
        let bad = maps.iter().find(|v| inst.mu(v, &ep).is_homomorphism() && !v.is_homomorphism());
        (maps.len() as u64, bad.map(|v| v.values().to_vec()))
    });
    let cancellable = universe.par_iter().all(|y| {
        let homs = all_homomorphisms(p.codomain(), y);
        homs.iter().enumerate().all(|(i, g)| homs[i + 1..].iter().all(|h| p.then(g).ok() != p.then(h).ok()))
    });
    RecognizerReport { instance: inst.name().to_owned(), universe: universe.len(), maps_checked, cancellable, counterexample }
}

/// Absolute recognizer certificate in the monoid instance: an injective
/// homomorphism `k` with `k u` a homomorphism forces
/// `k(u(y + y')) = k(u(y)) + k(u(y')) = k(u(y) + u(y'))`, hence `u` is a
/// homomorphism. The certificate records the two checked premises.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecognizerCertificate {
    pub injective: bool,
    pub homomorphism: bool,
}

pub fn certify_monoid_recognizer(k: &PointedMap) -> Result<RecognizerCertificate, TransformError> {
    if !k.is_injective() {
        return Err(TransformError::NotMono);
    }
    if !k.is_homomorphism() {
        return Err(TransformError::NotMorphism(MapRole::K));
    }
    Ok(RecognizerCertificate { injective: true, homomorphism: true })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub universe: usize,
    pub k_monic: bool,
    pub p_epic: bool,
    /// Image of `k` is the fibre of `p` over the identity.
    pub k_image_is_kernel: bool,
    /// Every `h: Y → A` with `p h = 0` factors uniquely through `k`.
    pub k_kernel_universal: bool,
    /// Every `h: A → Y` with `h k = 0` factors uniquely through `p`.
    pub p_cokernel_universal: bool,
}

impl TheoremReport {
    pub fn all_pass(&self) -> bool {
        self.k_monic && self.p_epic && self.k_image_is_kernel && self.k_kernel_universal && self.p_cokernel_universal
    }
}

/// Monic, epic, kernel and cokernel properties of a verified abstract
/// semi-biproduct, relative to `universe`.
pub fn theorem_checks<I: MapTransformStructure + ?Sized>(
    inst: &I,
    sb: &AbstractSemiBiproduct,
    universe: &[Arc<FiniteMonoid>],
) -> TheoremReport {
    let universe: Vec<Arc<FiniteMonoid>> = universe.iter().filter(|y| inst.admits(y)).cloned().collect();
    let k_monic = check_recognizer(inst, &sb.k, &universe).map(|r| r.cancellable).unwrap_or(false);
    let p_epic = check_corecognizer(inst, &sb.p, &universe).cancellable;
    let one = sb.b.identity();
    let mut image: Vec<usize> = sb.k.values().to_vec();
    image.sort_unstable();
    let fibre: Vec<usize> = (0..sb.a.order()).filter(|&a| sb.p.apply(a) == one).collect();
    let k_image_is_kernel = image == fibre;
    let k_kernel_universal = universe.par_iter().all(|y| {
        let into_x = all_homomorphisms(y, &sb.x);
        all_homomorphisms(y, &sb.a).iter().filter(|h| h.then(&sb.p).map(|ph| ph.is_zero()).unwrap_or(false)).all(|h| {
            into_x.iter().filter(|h2| h2.then(&sb.k).ok().as_ref() == Some(h)).count() == 1
        })
    });
    let p_cokernel_universal = universe.par_iter().all(|y| {
        let from_b = all_homomorphisms(&sb.b, y);
        all_homomorphisms(&sb.a, y).iter().filter(|h| sb.k.then(h).map(|hk| hk.is_zero()).unwrap_or(false)).all(|h| {
            from_b.iter().filter(|h2| sb.p.then(h2).ok().as_ref() == Some(h)).count() == 1
        })
    });
    TheoremReport { universe: universe.len(), k_monic, p_epic, k_image_is_kernel, k_kernel_universal, p_cokernel_universal }
}

/// A triple `(g, x, y)` of pointed maps with `g(x + y) ≠ gx + gy`; only
/// possible when `g` is not a homomorphism.
pub fn left_distributivity_failure(objects: &[Arc<FiniteMonoid>]) -> Option<(PointedMap, PointedMap, PointedMap)> {
    for a in objects {
        for b in objects {
            let maps = all_pointed_maps(a, b);
            for c in objects {
                for g in all_pointed_maps(b, c) {
                    for x in &maps {
                        for y in &maps {
                            let lhs = g.after(&x.pointwise_add(y).ok()?).ok()?;
                            let rhs = g.after(x).ok()?.pointwise_add(&g.after(y).ok()?).ok()?;
                            if lhs != rhs {
                                return Some((g, x.clone(), y.clone()));
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::gallery;

    fn arcs(ms: Vec<FiniteMonoid>) -> Vec<Arc<FiniteMonoid>> {
        ms.into_iter().map(Arc::new).collect()
    }

    fn abstract_e1<I: MapTransformStructure>(inst: &I) -> Result<AbstractSemiBiproduct, TransformError> {
        let sb = gallery::paper_e1().unwrap();
        verify_abstract_semibiproduct(
            inst,
            sb.x().clone(),
            sb.a().clone(),
            sb.b().clone(),
            sb.p().as_map().clone(),
            sb.k().as_map().clone(),
            sb.q().clone(),
            sb.s().clone(),
        )
    }

    #[test]
    fn monoid_axioms_on_e1_objects() {
        let sb = gallery::paper_e1().unwrap();
        let objects = vec![sb.x().clone(), sb.b().clone(), sb.a().clone()];
        let report = verify_structure_axioms(&MonoidInstance, &objects);
        assert!(report.all_pass(), "{:?}", report.first_failure());
        assert!(report.outcomes.iter().all(|o| o.checked > 0));
    }

    #[test]
    fn commutative_axioms() {
        let report = verify_structure_axioms(&CommutativeInstance, &arcs(catalog::monoids_up_to(2)));
        assert!(report.all_pass());
        let non = arcs(vec![catalog::symmetric3()]);
        assert_eq!(verify_structure_axioms(&CommutativeInstance, &non).objects, 0);
    }

    #[test]
    fn e1_abstract_verification() {
        assert!(abstract_e1(&MonoidInstance).is_ok());
        assert_eq!(abstract_e1(&CommutativeInstance).unwrap_err(), TransformError::NotInMap(MapRole::Q));
        let z2 = Arc::new(catalog::cyclic(2));
        let z3 = Arc::new(catalog::cyclic(3));
        let sb = crate::semibiproduct::SemiBiproduct::direct_product(z2, z3);
        assert!(verify_abstract_semibiproduct(
            &CommutativeInstance,
            sb.x().clone(),
            sb.a().clone(),
            sb.b().clone(),
            sb.p().as_map().clone(),
            sb.k().as_map().clone(),
            sb.q().clone(),
            sb.s().clone(),
        )
        .is_ok());
    }

    #[test]
    fn e1_recognizers_and_theorem() {
        let sb = abstract_e1(&MonoidInstance).unwrap();
        let universe = vec![sb.x.clone(), sb.b.clone(), sb.a.clone()];
        assert!(check_recognizer(&MonoidInstance, &sb.k, &universe).unwrap().passes());
        let small = arcs(catalog::monoids_up_to(3));
        assert!(check_corecognizer(&MonoidInstance, &sb.p, &small).passes());
        assert!(theorem_checks(&MonoidInstance, &sb, &small).all_pass());
    }

    #[test]
    fn z3_corecognizer_counterexample() {
        let trivial = Arc::new(catalog::trivial());
        let z3 = Arc::new(catalog::cyclic(3));
        let p = Homomorphism::from_values(trivial.clone(), z3.clone(), vec![0]).unwrap();
        let report = check_corecognizer(&MonoidInstance, &p, &[trivial, z3.clone()]);
        assert_eq!(report.counterexample, Some(Counterexample { object: "Z3".into(), values: vec![0, 0, 1] }));
        assert!(!report.cancellable);
        let v = PointedMap::new(z3.clone(), z3, vec![0, 1, 0]).unwrap();
        assert!(v.after(p.as_map()).unwrap().is_zero() && !v.is_homomorphism());
    }

    #[test]
    fn left_distributivity_needs_homomorphisms() {
        let (g, x, y) = left_distributivity_failure(&arcs(catalog::monoids_up_to(2))).unwrap();
        assert!(!g.is_homomorphism());
        assert_ne!(g.after(&x.pointwise_add(&y).unwrap()).unwrap(), g.after(&x).unwrap().pointwise_add(&g.after(&y).unwrap()).unwrap());
    }
}
