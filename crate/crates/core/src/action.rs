//! Pseudo-actions `(φ, ρ, γ)` of a monoid `B` on a monoid `X`.
//!
//! Notation: `b·x = φ_b(x)`, `x^b = ρ(x, b)`, `b×b' = γ(b, b')`. Writing
//!
//! ```text
//! (x, b) ∗ (x', b') = ((x + b·x' + b×b')^{bb'}, bb')
//! ```
//!
//! for the formula operation on `X × B`, the coherence equation of a
//! pseudo-action says precisely that `∗` is associative. The unit laws pin
//! `1·x = x`, `b·0 = 0`, `x^1 = x`, `0^b = 0` and `1×b = 0 = b×1`.
//!
//! Index conventions for the raw tables: `phi[b][x]`, `rho[x][b]`,
//! `gamma[b][b']`.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::iso;
use crate::maps::{same_monoid, PointedMap};
use crate::monoid::FiniteMonoid;
use crate::semibiproduct::{extract_pseudo_action, SemiBiproduct, TheoremViolation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum UnitLaw {
    #[serde(rename = "1·x=x")]
    PreActionIdentity,
    #[serde(rename = "b·0=0")]
    PreActionZero,
    #[serde(rename = "x^1=x")]
    CorrectionIdentity,
    #[serde(rename = "0^b=0")]
    CorrectionZero,
    #[serde(rename = "1×b=0")]
    FactorLeft,
    #[serde(rename = "b×1=0")]
    FactorRight,
}

impl fmt::Display for UnitLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnitLaw::PreActionIdentity => "1·x = x",
            UnitLaw::PreActionZero => "b·0 = 0",
            UnitLaw::CorrectionIdentity => "x^1 = x",
            UnitLaw::CorrectionZero => "0^b = 0",
            UnitLaw::FactorLeft => "1×b = 0",
            UnitLaw::FactorRight => "b×1 = 0",
        })
    }
}

/// A tuple `(x, x', x'', b, b', b'')` at which the coherence equation fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FactorWitness {
    pub x: [usize; 3],
    pub b: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", content = "detail", rename_all = "kebab-case")]
pub enum ActionError {
    #[error("table {table} has shape mismatch, expected {rows}×{cols}")]
    Shape { table: &'static str, rows: usize, cols: usize },
    #[error("table {table} entry {value} at ({row}, {col}) is out of range")]
    IndexOutOfRange { table: &'static str, row: usize, col: usize, value: usize },
    #[error("unit law {law} fails at {witness}")]
    UnitLawFails { law: UnitLaw, witness: usize },
    #[error("coherence equation fails at x = {:?}, b = {:?}", .0.x, .0.b)]
    FactorEquationFails(FactorWitness),
    #[error("synthesis incoherent: {0}")]
    SynthesisIncoherent(String),
    #[error("pseudo-actions act between different monoids")]
    MonoidMismatch,
}

/// Raw, unvalidated tables with the documented index conventions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionTables {
    pub phi: Vec<Vec<usize>>,
    pub rho: Vec<Vec<usize>>,
    pub gamma: Vec<Vec<usize>>,
}

/// A validated pseudo-action. Equality is raw table equality.
#[derive(Clone, Debug)]
pub struct PseudoAction {
    x: Arc<FiniteMonoid>,
    b: Arc<FiniteMonoid>,
    phi: Vec<usize>,
    rho: Vec<usize>,
    gamma: Vec<usize>,
}

impl PartialEq for PseudoAction {
    fn eq(&self, other: &Self) -> bool {
        self.phi == other.phi
            && self.rho == other.rho
            && self.gamma == other.gamma
            && same_monoid(&self.x, &other.x)
            && same_monoid(&self.b, &other.b)
    }
}

impl Eq for PseudoAction {}

fn flatten(
    table: &'static str,
    rows: &[Vec<usize>],
    nrows: usize,
    ncols: usize,
    bound: usize,
) -> Result<Vec<usize>, ActionError> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(ActionError::Shape { table, rows: nrows, cols: ncols });
    }
    for (row, r) in rows.iter().enumerate() {
        if let Some(col) = r.iter().position(|&v| v >= bound) {
            return Err(ActionError::IndexOutOfRange { table, row, col, value: r[col] });
        }
    }
    Ok(rows.iter().flatten().copied().collect())
}

impl PseudoAction {
    pub fn validate(x: Arc<FiniteMonoid>, b: Arc<FiniteMonoid>, tables: &ActionTables) -> Result<Self, ActionError> {
        let (nx, nb) = (x.order(), b.order());
        let phi = flatten("phi", &tables.phi, nb, nx, nx)?;
        let rho = flatten("rho", &tables.rho, nx, nb, nx)?;
        let gamma = flatten("gamma", &tables.gamma, nb, nb, nx)?;
        Self::validate_flat(x, b, phi, rho, gamma)
    }

    /// Validation on row-major flat tables: unit laws first, then the
    /// coherence equation over all `|X|³·|B|³` tuples.
    pub fn validate_flat(
        x: Arc<FiniteMonoid>,
        b: Arc<FiniteMonoid>,
        phi: Vec<usize>,
        rho: Vec<usize>,
        gamma: Vec<usize>,
    ) -> Result<Self, ActionError> {
        let (nx, nb) = (x.order(), b.order());
        for (table, data, rows, cols) in [("phi", &phi, nb, nx), ("rho", &rho, nx, nb), ("gamma", &gamma, nb, nb)] {
            if data.len() != rows * cols {
                return Err(ActionError::Shape { table, rows, cols });
            }
            if let Some(pos) = data.iter().position(|&v| v >= nx) {
                return Err(ActionError::IndexOutOfRange { table, row: pos / cols, col: pos % cols, value: data[pos] });
            }
        }
        let pa = PseudoAction { x, b, phi, rho, gamma };
        if let Some((law, witness)) = pa.unit_law_violation() {
            return Err(ActionError::UnitLawFails { law, witness });
        }
        let kernel = FactorKernel::new(&pa.x, &pa.b);
        let memo = kernel.memo(&pa.phi, &pa.rho, &pa.gamma);
        if let Some(w) = kernel.first_violation_par(&memo) {
            return Err(ActionError::FactorEquationFails(w));
        }
        Ok(pa)
    }

    /// Caller guarantees validity.
    pub(crate) fn from_flat_unchecked(
        x: Arc<FiniteMonoid>,
        b: Arc<FiniteMonoid>,
        phi: Vec<usize>,
        rho: Vec<usize>,
        gamma: Vec<usize>,
    ) -> Self {
        PseudoAction { x, b, phi, rho, gamma }
    }

    fn unit_law_violation(&self) -> Option<(UnitLaw, usize)> {
        let (x, b) = (&*self.x, &*self.b);
        let (zero, one) = (x.identity(), b.identity());
        let checks: [(UnitLaw, Option<usize>); 6] = [
            (UnitLaw::PreActionIdentity, (0..x.order()).find(|&i| self.act(one, i) != i)),
            (UnitLaw::PreActionZero, (0..b.order()).find(|&j| self.act(j, zero) != zero)),
            (UnitLaw::CorrectionIdentity, (0..x.order()).find(|&i| self.correct(i, one) != i)),
            (UnitLaw::CorrectionZero, (0..b.order()).find(|&j| self.correct(zero, j) != zero)),
            (UnitLaw::FactorLeft, (0..b.order()).find(|&j| self.factor(one, j) != zero)),
            (UnitLaw::FactorRight, (0..b.order()).find(|&j| self.factor(j, one) != zero)),
        ];
        checks.into_iter().find_map(|(law, w)| w.map(|w| (law, w)))
    }

    pub fn x(&self) -> &Arc<FiniteMonoid> {
        &self.x
    }

    pub fn b(&self) -> &Arc<FiniteMonoid> {
        &self.b
    }

    /// `b·x`
    #[inline]
    pub fn act(&self, b: usize, x: usize) -> usize {
        self.phi[b * self.x.order() + x]
    }

    /// `x^b`
    #[inline]
    pub fn correct(&self, x: usize, b: usize) -> usize {
        self.rho[x * self.b.order() + b]
    }

    /// `b×b'`
    #[inline]
    pub fn factor(&self, b: usize, b2: usize) -> usize {
        self.gamma[b * self.b.order() + b2]
    }

    /// `(x, b) ∗ (x', b')`
    pub fn formula(&self, (x1, b1): (usize, usize), (x2, b2): (usize, usize)) -> (usize, usize) {
        let xm = &*self.x;
        let bb = self.b.op(b1, b2);
        let sum = xm.op(xm.op(x1, self.act(b1, x2)), self.factor(b1, b2));
        (self.correct(sum, bb), bb)
    }

    pub fn tables(&self) -> ActionTables {
        let (nx, nb) = (self.x.order(), self.b.order());
        ActionTables {
            phi: self.phi.chunks(nx).map(<[usize]>::to_vec).collect(),
            rho: self.rho.chunks(nb).map(<[usize]>::to_vec).collect(),
            gamma: self.gamma.chunks(nb).map(<[usize]>::to_vec).collect(),
        }
    }

    /// `(phi, rho, gamma)` flattened; the canonical sort key.
    pub fn table_key(&self) -> (&[usize], &[usize], &[usize]) {
        (&self.phi, &self.rho, &self.gamma)
    }

    pub fn has_trivial_correction(&self) -> bool {
        (0..self.x.order()).all(|x| (0..self.b.order()).all(|b| self.correct(x, b) == x))
    }

    /// `φ_b = id`, `x^b = x` and `γ ≡ 0`.
    pub fn is_trivial(&self) -> bool {
        let (nx, nb) = (self.x.order(), self.b.order());
        let zero = self.x.identity();
        self.has_trivial_correction()
            && (0..nb).all(|b| (0..nx).all(|x| self.act(b, x) == x))
            && self.gamma.iter().all(|&g| g == zero)
    }

    /// `(x^b, b)` for all pairs, deduplicated, sorted by `(b, x)`.
    pub fn carrier(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for b in 0..self.b.order() {
            let mut fibre: Vec<usize> = (0..self.x.order()).map(|x| self.correct(x, b)).collect();
            fibre.sort_unstable();
            fibre.dedup();
            out.extend(fibre.into_iter().map(|x| (x, b)));
        }
        out
    }
}

/// The trivial pseudo-action: `φ_b = id`, `x^b = x`, `γ ≡ 0`.
pub fn trivial_action(x: Arc<FiniteMonoid>, b: Arc<FiniteMonoid>) -> PseudoAction {
    let (nx, nb) = (x.order(), b.order());
    let phi = (0..nb).flat_map(|_| 0..nx).collect();
    let rho = (0..nx).flat_map(|i| std::iter::repeat(i).take(nb)).collect();
    let gamma = vec![x.identity(); nb * nb];
    PseudoAction::validate_flat(x, b, phi, rho, gamma).expect("the trivial pseudo-action is valid")
}

/// Evaluates the coherence equation from a memo of the formula operation.
///
/// Pairs `(x, b)` are indexed `b * |X| + x`; `memo[u * N + v]` is the pair
/// index of `u ∗ v` where `N = |X|·|B|`.
pub(crate) struct FactorKernel<'a> {
    x: &'a FiniteMonoid,
    b: &'a FiniteMonoid,
    nx: usize,
    nb: usize,
}

impl<'a> FactorKernel<'a> {
    pub(crate) fn new(x: &'a FiniteMonoid, b: &'a FiniteMonoid) -> Self {
        FactorKernel { x, b, nx: x.order(), nb: b.order() }
    }

    pub(crate) fn pairs(&self) -> usize {
        self.nx * self.nb
    }

    pub(crate) fn memo(&self, phi: &[usize], rho: &[usize], gamma: &[usize]) -> Vec<usize> {
        let mut memo = vec![0; self.pairs() * self.pairs()];
        self.fill_memo(phi, rho, gamma, &mut memo);
        memo
    }

    pub(crate) fn fill_memo(&self, phi: &[usize], rho: &[usize], gamma: &[usize], memo: &mut [usize]) {
        let (nx, nb, n) = (self.nx, self.nb, self.pairs());
        for b1 in 0..nb {
            for b2 in 0..nb {
                let bb = self.b.op(b1, b2);
                let g = gamma[b1 * nb + b2];
                for x1 in 0..nx {
                    let u = b1 * nx + x1;
                    for x2 in 0..nx {
                        let sum = self.x.op(self.x.op(x1, phi[b1 * nx + x2]), g);
                        memo[u * n + b2 * nx + x2] = bb * nx + rho[sum * nb + bb];
                    }
                }
            }
        }
    }

    /// Violations inside one outer block `(b, b', b'')`, scanning
    /// `(x, x', x'')` lexicographically.
    #[inline]
    fn block_violation(&self, memo: &[usize], bs: [usize; 3]) -> Option<FactorWitness> {
        let (nx, n) = (self.nx, self.pairs());
        for x1 in 0..nx {
            let u = bs[0] * nx + x1;
            for x2 in 0..nx {
                let v = bs[1] * nx + x2;
                let uv = memo[u * n + v];
                for x3 in 0..nx {
                    let w = bs[2] * nx + x3;
                    if memo[uv * n + w] != memo[u * n + memo[v * n + w]] {
                        return Some(FactorWitness { x: [x1, x2, x3], b: bs });
                    }
                }
            }
        }
        None
    }

    fn outer_blocks(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        let (nb, one) = (self.nb, self.b.identity());
        (0..nb * nb * nb)
            .map(move |i| [i / (nb * nb), (i / nb) % nb, i % nb])
            // all-identity blocks reduce to associativity of X
            .filter(move |bs| bs.iter().any(|&b| b != one))
    }

    pub(crate) fn first_violation(&self, memo: &[usize]) -> Option<FactorWitness> {
        self.outer_blocks().find_map(|bs| self.block_violation(memo, bs))
    }

    pub(crate) fn first_violation_par(&self, memo: &[usize]) -> Option<FactorWitness> {
        let blocks: Vec<[usize; 3]> = self.outer_blocks().collect();
        if blocks.len() * self.nx.pow(3) < 4096 {
            return blocks.into_iter().find_map(|bs| self.block_violation(memo, bs));
        }
        blocks.into_par_iter().find_map_first(|bs| self.block_violation(memo, bs))
    }
}

/// The derived identities that follow from the coherence equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DerivedIdentity {
    /// `(b·(x+y))^b = (b·x + b·y)^b`
    Correction1,
    /// `(x+y)^b = (x + y^b)^b`
    Correction2,
    /// `(x^b + b·y)^b = (x + (b·y)^b)^b`
    Correction3,
    /// `(b·(b'×b'')^{b'b''} + b×b'b'')^{bb'b''} = ((b×b')^{bb'} + bb'×b'')^{bb'b''}`
    FactorSystem,
    /// `(x^b + b×b')^{bb'} = (x + b×b')^{bb'}`
    CorrectedFactor,
    /// `(b·(b'·x)^{b'} + b×b')^{bb'} = ((b×b')^{bb'} + bb'·x)^{bb'}`
    FactorConjugation,
}

impl DerivedIdentity {
    pub const ALL: [DerivedIdentity; 6] = [
        DerivedIdentity::Correction1,
        DerivedIdentity::Correction2,
        DerivedIdentity::Correction3,
        DerivedIdentity::FactorSystem,
        DerivedIdentity::CorrectedFactor,
        DerivedIdentity::FactorConjugation,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityOutcome {
    pub identity: DerivedIdentity,
    pub checked: usize,
    pub failures: usize,
    pub first_witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedIdentityReport {
    pub outcomes: Vec<IdentityOutcome>,
    /// `(x^b)^b = x^b`, checked alongside.
    pub idempotence_failures: usize,
}

impl DerivedIdentityReport {
    pub fn all_pass(&self) -> bool {
        self.idempotence_failures == 0 && self.outcomes.iter().all(|o| o.failures == 0)
    }
}

/// Evaluates each derived identity on every applicable tuple.
pub fn check_derived_identities(pa: &PseudoAction) -> DerivedIdentityReport {
    let (xm, bm) = (&*pa.x, &*pa.b);
    let (nx, nb) = (xm.order(), bm.order());
    let add = |a: usize, c: usize| xm.op(a, c);
    let mul = |a: usize, c: usize| bm.op(a, c);
    let mut outcomes = Vec::with_capacity(6);
    for identity in DerivedIdentity::ALL {
        let mut outcome = IdentityOutcome { identity, checked: 0, failures: 0, first_witness: None };
        let mut record = |holds: bool, witness: &[usize]| {
            outcome.checked += 1;
            if !holds {
                outcome.failures += 1;
                outcome.first_witness.get_or_insert_with(|| witness.to_vec());
            }
        };
        match identity {
            DerivedIdentity::Correction1 | DerivedIdentity::Correction2 | DerivedIdentity::Correction3 => {
                for b in 0..nb {
                    for x in 0..nx {
                        for y in 0..nx {
                            let (lhs, rhs) = match identity {
                                DerivedIdentity::Correction1 => (
                                    pa.correct(pa.act(b, add(x, y)), b),
                                    pa.correct(add(pa.act(b, x), pa.act(b, y)), b),
                                ),
                                DerivedIdentity::Correction2 => {
                                    (pa.correct(add(x, y), b), pa.correct(add(x, pa.correct(y, b)), b))
                                }
                                _ => (
                                    pa.correct(add(pa.correct(x, b), pa.act(b, y)), b),
                                    pa.correct(add(x, pa.correct(pa.act(b, y), b)), b),
                                ),
                            };
                            record(lhs == rhs, &[x, y, b]);
                        }
                    }
                }
            }
            DerivedIdentity::FactorSystem => {
                for b1 in 0..nb {
                    for b2 in 0..nb {
                        for b3 in 0..nb {
                            let (b23, b12) = (mul(b2, b3), mul(b1, b2));
                            let b123 = mul(b12, b3);
                            let inner = pa.correct(pa.factor(b2, b3), b23);
                            let lhs = pa.correct(add(pa.act(b1, inner), pa.factor(b1, b23)), b123);
                            let rhs = pa.correct(add(pa.correct(pa.factor(b1, b2), b12), pa.factor(b12, b3)), b123);
                            record(lhs == rhs, &[b1, b2, b3]);
                        }
                    }
                }
            }
            DerivedIdentity::CorrectedFactor => {
                for x in 0..nx {
                    for b1 in 0..nb {
                        for b2 in 0..nb {
                            let bb = mul(b1, b2);
                            let g = pa.factor(b1, b2);
                            let lhs = pa.correct(add(pa.correct(x, b1), g), bb);
                            let rhs = pa.correct(add(x, g), bb);
                            record(lhs == rhs, &[x, b1, b2]);
                        }
                    }
                }
            }
            DerivedIdentity::FactorConjugation => {
                for x in 0..nx {
                    for b1 in 0..nb {
                        for b2 in 0..nb {
                            let bb = mul(b1, b2);
                            let g = pa.factor(b1, b2);
                            let lhs = pa.correct(add(pa.act(b1, pa.correct(pa.act(b2, x), b2)), g), bb);
                            let rhs = pa.correct(add(pa.correct(g, bb), pa.act(bb, x)), bb);
                            record(lhs == rhs, &[x, b1, b2]);
                        }
                    }
                }
            }
        }
        outcomes.push(outcome);
    }
    let idempotence_failures = (0..nx)
        .flat_map(|x| (0..nb).map(move |b| (x, b)))
        .filter(|&(x, b)| pa.correct(pa.correct(x, b), b) != pa.correct(x, b))
        .count();
    DerivedIdentityReport { outcomes, idempotence_failures }
}

/// The monoid `X ⋊_{φ,ρ,γ} B` on the corrected pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntheticSemiBiproduct {
    pub action: PseudoAction,
    /// `{(x^b, b)}` sorted by `(b, x)`.
    pub carrier: Vec<(usize, usize)>,
    pub monoid: Arc<FiniteMonoid>,
}

/// Builds the synthetic semi-biproduct and verifies it.
pub fn synthesize(pa: &PseudoAction) -> Result<(SyntheticSemiBiproduct, SemiBiproduct), ActionError> {
    let (xm, bm) = (&pa.x, &pa.b);
    let nx = xm.order();
    let carrier = pa.carrier();
    let mut position = vec![usize::MAX; nx * bm.order()];
    for (i, &(x, b)) in carrier.iter().enumerate() {
        position[b * nx + x] = i;
    }
    let locate = |(x, b): (usize, usize)| position[b * nx + x];
    let n = carrier.len();
    let mut table = Vec::with_capacity(n * n);
    for &u in &carrier {
        for &v in &carrier {
            let w = pa.formula(u, v);
            let idx = locate(w);
            if idx == usize::MAX {
                return Err(ActionError::SynthesisIncoherent(format!("{u:?} ∗ {v:?} = {w:?} leaves the carrier")));
            }
            table.push(idx);
        }
    }
    let identity = locate((xm.identity(), bm.identity()));
    if identity == usize::MAX {
        return Err(ActionError::SynthesisIncoherent("(0, 1) is not in the carrier".into()));
    }
    let labels = carrier.iter().map(|&(x, b)| format!("({},{})", xm.label(x), bm.label(b))).collect();
    let name = format!("{}⋊{}", xm.name(), bm.name());
    let a = FiniteMonoid::from_flat(name, labels, identity, table)
        .map_err(|e| ActionError::SynthesisIncoherent(e.to_string()))?;
    let a = Arc::new(a);
    let p = carrier.iter().map(|&(_, b)| b).collect();
    let q = carrier.iter().map(|&(x, _)| x).collect();
    let k = (0..nx).map(|x| locate((x, bm.identity()))).collect();
    let s = (0..bm.order()).map(|b| locate((xm.identity(), b))).collect();
    let incoherent = |e: &dyn fmt::Display| ActionError::SynthesisIncoherent(e.to_string());
    let p = PointedMap::new(a.clone(), bm.clone(), p).map_err(|e| incoherent(&e))?;
    let q = PointedMap::new(a.clone(), xm.clone(), q).map_err(|e| incoherent(&e))?;
    let k = PointedMap::new(xm.clone(), a.clone(), k).map_err(|e| incoherent(&e))?;
    let s = PointedMap::new(bm.clone(), a.clone(), s).map_err(|e| incoherent(&e))?;
    let sb = SemiBiproduct::verify(xm.clone(), a.clone(), bm.clone(), p, k, q, s).map_err(|e| incoherent(&e))?;
    Ok((SyntheticSemiBiproduct { action: pa.clone(), carrier, monoid: a }, sb))
}

#[derive(Clone, Debug)]
pub struct RoundTrip {
    pub derived: PseudoAction,
    pub synthetic: SemiBiproduct,
}

/// Synthesizes, re-extracts, and checks `φ'_b(x) = (b·x)^b`, `ρ' = ρ`,
/// `γ'(b, b') = (b×b')^{bb'}` and `(x^b)^b = x^b`.
pub fn roundtrip_equivalent(pa: &PseudoAction) -> Result<RoundTrip, TheoremViolation> {
    let (_, sb) = synthesize(pa)?;
    let derived = extract_pseudo_action(&sb)?;
    let (nx, nb) = (pa.x.order(), pa.b.order());
    for b in 0..nb {
        for x in 0..nx {
            if derived.act(b, x) != pa.correct(pa.act(b, x), b) {
                return Err(TheoremViolation::RoundTrip(format!("phi' at b={b}, x={x}")));
            }
            if derived.correct(x, b) != pa.correct(x, b) {
                return Err(TheoremViolation::RoundTrip(format!("rho' at x={x}, b={b}")));
            }
            if pa.correct(pa.correct(x, b), b) != pa.correct(x, b) {
                return Err(TheoremViolation::RoundTrip(format!("idempotence at x={x}, b={b}")));
            }
        }
        for b2 in 0..nb {
            if derived.factor(b, b2) != pa.correct(pa.factor(b, b2), pa.b.op(b, b2)) {
                return Err(TheoremViolation::RoundTrip(format!("gamma' at ({b}, {b2})")));
            }
        }
    }
    Ok(RoundTrip { derived, synthetic: sb })
}

/// Whether two pseudo-actions on the same `X`, `B` are equivalent: equal
/// after one round trip, or with synthetic semi-biproducts related by an
/// isomorphism of the form `(id_X, f, id_B)`.
pub fn equivalent(first: &PseudoAction, second: &PseudoAction) -> Result<bool, TheoremViolation> {
    if !same_monoid(&first.x, &second.x) || !same_monoid(&first.b, &second.b) {
        return Err(ActionError::MonoidMismatch.into());
    }
    let (r1, r2) = (roundtrip_equivalent(first)?, roundtrip_equivalent(second)?);
    if r1.derived == r2.derived {
        return Ok(true);
    }
    let (s1, s2) = (&r1.synthetic, &r2.synthetic);
    let f = iso::find_isomorphism(s1.a(), s2.a(), |a| {
        let target = (s1.q().apply(a), s1.p().apply(a));
        (0..s2.a().order()).filter(|&c| (s2.q().apply(c), s2.p().apply(c)) == target).collect()
    });
    Ok(f.is_some())
}

/// A triple in `X × B` where `∗` is not associative, preferring triples
/// with at least one element off the carrier.
pub fn nonassociative_triple(pa: &PseudoAction) -> Option<[(usize, usize); 3]> {
    let kernel = FactorKernel::new(&pa.x, &pa.b);
    let memo = kernel.memo(&pa.phi, &pa.rho, &pa.gamma);
    kernel.first_violation(&memo).map(|w| [(w.x[0], w.b[0]), (w.x[1], w.b[1]), (w.x[2], w.b[2])])
}

/// A pair `(x, b)` off the carrier where `(0, 1)` fails to act as a left
/// neutral element for `∗`.
pub fn neutral_failure(pa: &PseudoAction) -> Option<(usize, usize)> {
    let one = (pa.x.identity(), pa.b.identity());
    (0..pa.b.order())
        .flat_map(|b| (0..pa.x.order()).map(move |x| (x, b)))
        .find(|&u| pa.formula(one, u) != u)
}
