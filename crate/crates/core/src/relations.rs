//! Semi-biproducts built from a relation `R ⊆ X × B`.
//!
//! Given `u: B → X` and `q: R → X` with `xR1`, `q(xR1) = x`, `u(b)Rb`,
//! `q(u(b)Rb) = 0` and `q` injective on each fibre, every monoid structure
//! on `R` with neutral `0R1` and homomorphic projection `xRb ↦ b` yields
//!
//! ```text
//! x ⊕ x' = q(xR1 + x'R1)        b × b' = q(u(b)Rb + u(b')Rb')
//! b · x  = q(u(b)Rb + xR1)       x^b    = q(xR1 + u(b)Rb)
//! ```
//!
//! and a semi-biproduct whenever `⊕` is the operation of `X` and
//! `q(xRb)^b = q(xRb)` on `R`.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::enumerate::EnumerationError;
use crate::maps::PointedMap;
use crate::monoid::FiniteMonoid;
use crate::semibiproduct::{SemiBiproduct, SemiBiproductError};

const UNSET: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("pair ({0}, {1}) is outside X × B")]
    PairOutOfRange(usize, usize),
    #[error("({0}, 1) is missing from R")]
    MissingUnitFibre(usize),
    #[error("q({0}R1) differs from {0}")]
    QOnUnitFibre(usize),
    #[error("u({0}) R {0} is missing from R")]
    MissingSection(usize),
    #[error("q(u({0}) R {0}) is not zero")]
    QOnSection(usize),
    #[error("q is not injective on the fibre over {0}")]
    QNotInjective(usize),
    #[error("q or u has the wrong length or an out-of-range value")]
    Shape,
}

/// Admissible data `(R, u, q)`; `R` is kept sorted by `(b, x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationScheme {
    x: Arc<FiniteMonoid>,
    b: Arc<FiniteMonoid>,
    r: Vec<(usize, usize)>,
    u: Vec<usize>,
    q: Vec<usize>,
}

impl RelationScheme {
    /// `q` is given per element of `r` in the order supplied.
    pub fn new(
        x: Arc<FiniteMonoid>,
        b: Arc<FiniteMonoid>,
        r: Vec<(usize, usize)>,
        u: Vec<usize>,
        q: Vec<usize>,
    ) -> Result<Self, SchemeError> {
        let (nx, nb) = (x.order(), b.order());
        if q.len() != r.len() || u.len() != nb || u.iter().chain(&q).any(|&v| v >= nx) {
            return Err(SchemeError::Shape);
        }
        if let Some(&(xi, bi)) = r.iter().find(|&&(xi, bi)| xi >= nx || bi >= nb) {
            return Err(SchemeError::PairOutOfRange(xi, bi));
        }
        let mut pairs: Vec<((usize, usize), usize)> = r.into_iter().zip(q).collect();
        pairs.sort_by_key(|&((xi, bi), _)| (bi, xi));
        pairs.dedup_by_key(|p| p.0);
        let (r, q): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        let scheme = RelationScheme { x, b, r, u, q };
        scheme.check()?;
        Ok(scheme)
    }

    /// `q(xRb) = x` and `u = 0`.
    pub fn canonical(x: Arc<FiniteMonoid>, b: Arc<FiniteMonoid>, r: Vec<(usize, usize)>) -> Result<Self, SchemeError> {
        let q = r.iter().map(|&(xi, _)| xi).collect();
        let u = vec![x.identity(); b.order()];
        Self::new(x, b, r, u, q)
    }

    fn check(&self) -> Result<(), SchemeError> {
        let (x, b) = (&*self.x, &*self.b);
        let one = b.identity();
        for xi in 0..x.order() {
            let i = self.position((xi, one)).ok_or(SchemeError::MissingUnitFibre(xi))?;
            if self.q[i] != xi {
                return Err(SchemeError::QOnUnitFibre(xi));
            }
        }
        for bi in 0..b.order() {
            let i = self.position((self.u[bi], bi)).ok_or(SchemeError::MissingSection(bi))?;
            if self.q[i] != x.identity() {
                return Err(SchemeError::QOnSection(bi));
            }
            let mut seen: Vec<usize> = self.fibre(bi).map(|i| self.q[i]).collect();
            let len = seen.len();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != len {
                return Err(SchemeError::QNotInjective(bi));
            }
        }
        Ok(())
    }

    pub fn x(&self) -> &Arc<FiniteMonoid> {
        &self.x
    }

    pub fn b(&self) -> &Arc<FiniteMonoid> {
        &self.b
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.r
    }

    pub fn u(&self) -> &[usize] {
        &self.u
    }

    pub fn q(&self) -> &[usize] {
        &self.q
    }

    pub fn position(&self, pair: (usize, usize)) -> Option<usize> {
        self.r.binary_search_by_key(&(pair.1, pair.0), |&(xi, bi)| (bi, xi)).ok()
    }

    fn fibre(&self, bi: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.r.len()).filter(move |&i| self.r[i].1 == bi)
    }

    pub fn labels(&self) -> Vec<String> {
        self.r.iter().map(|&(xi, bi)| format!("{}R{}", self.x.label(xi), self.b.label(bi))).collect()
    }

    fn unit(&self) -> usize {
        self.position((self.x.identity(), self.b.identity())).expect("0R1 is in R")
    }
}

/// All monoid structures on `R` with neutral `0R1` and homomorphic
/// projection, in lexicographic table order.
pub fn monoid_structures(scheme: &RelationScheme, budget: u64) -> Result<Vec<FiniteMonoid>, EnumerationError> {
    let n = scheme.r.len();
    let e = scheme.unit();
    let mut table = vec![UNSET; n * n];
    for i in 0..n {
        table[e * n + i] = i;
        table[i * n + e] = i;
    }
    let cells: Vec<usize> = (0..n).filter(|&i| i != e).flat_map(|i| (0..n).filter(move |&j| j != e).map(move |j| i * n + j)).collect();
    let options: Vec<Vec<usize>> = cells
        .iter()
        .map(|&c| {
            let target = scheme.b.op(scheme.r[c / n].1, scheme.r[c % n].1);
            scheme.fibre(target).collect()
        })
        .collect();
    let nodes = AtomicU64::new(0);
    let mut out = Vec::new();
    fill(n, &cells, &options, 0, &mut table, &nodes, budget, &mut out)?;
    let name = format!("R({}, {})", scheme.x.name(), scheme.b.name());
    Ok(out
        .into_iter()
        .map(|t| FiniteMonoid::from_flat(name.clone(), scheme.labels(), e, t).expect("associative by construction"))
        .collect())
}

#[allow(clippy::too_many_arguments)]
fn fill(
    n: usize,
    cells: &[usize],
    options: &[Vec<usize>],
    pos: usize,
    table: &mut Vec<usize>,
    nodes: &AtomicU64,
    budget: u64,
    out: &mut Vec<Vec<usize>>,
) -> Result<(), EnumerationError> {
    if pos == cells.len() {
        out.push(table.clone());
        return Ok(());
    }
    for &v in &options[pos] {
        if nodes.fetch_add(1, Ordering::Relaxed) >= budget {
            return Err(EnumerationError::BudgetExceeded { what: "monoid structures on R", budget });
        }
        table[cells[pos]] = v;
        if locally_associative(n, table, cells[pos]) {
            fill(n, cells, options, pos + 1, table, nodes, budget, out)?;
        }
    }
    table[cells[pos]] = UNSET;
    Ok(())
}

/// Checks every associativity instance touching the cell just set.
fn locally_associative(n: usize, t: &[usize], cell: usize) -> bool {
    let get = |i: usize, j: usize| t[i * n + j];
    let consistent = |i: usize, j: usize, k: usize| {
        let (ij, jk) = (get(i, j), get(j, k));
        if ij == UNSET || jk == UNSET {
            return true;
        }
        let (l, r) = (get(ij, k), get(i, jk));
        l == UNSET || r == UNSET || l == r
    };
    let (a, b) = (cell / n, cell % n);
    (0..n).all(|k| consistent(a, b, k) && consistent(k, a, b))
        && (0..n).all(|i| (0..n).all(|j| {
            // instances where the new value is an intermediate product
            (get(i, j) != a || consistent(i, j, b)) && (get(i, j) != b || consistent(a, i, j))
        }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum Rejection {
    /// `x ⊕ x' ≠ x + x'`
    NotAdditive { x: usize, x2: usize, oplus: usize, sum: usize },
    /// `q(r)^b ≠ q(r)` for `r = xRb`
    CorrectionMoves { element: usize },
    /// `r ≠ q(r)R1 + u(b)Rb`
    NoDecomposition { element: usize },
    NotSemiBiproduct { message: String },
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Accepted(SemiBiproduct),
    Rejected(Rejection),
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted(_))
    }
}

/// One monoid structure on `R` together with the derived operations and
/// the outcome of the acceptance tests.
#[derive(Clone, Debug)]
pub struct RelationCandidate {
    pub monoid: Arc<FiniteMonoid>,
    /// `oplus[x][x']`
    pub oplus: Vec<Vec<usize>>,
    /// `factor[b][b']`
    pub factor: Vec<Vec<usize>>,
    /// `act[b][x]`
    pub act: Vec<Vec<usize>>,
    /// `correct[x][b]`
    pub correct: Vec<Vec<usize>>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct RelationSearch {
    pub scheme: RelationScheme,
    pub structures_found: usize,
    pub candidates: Vec<RelationCandidate>,
}

impl RelationSearch {
    pub fn accepted(&self) -> impl Iterator<Item = &SemiBiproduct> {
        self.candidates.iter().filter_map(|c| match &c.verdict {
            Verdict::Accepted(sb) => Some(sb),
            Verdict::Rejected(_) => None,
        })
    }
}

/// Runs the scheme over every monoid structure on `R`.
pub fn evaluate_scheme(scheme: &RelationScheme, budget: u64) -> Result<RelationSearch, EnumerationError> {
    let structures = monoid_structures(scheme, budget)?;
    let candidates: Vec<RelationCandidate> =
        structures.into_par_iter().map(|m| evaluate_structure(scheme, Arc::new(m))).collect();
    let structures_found = candidates.len();
    Ok(RelationSearch { scheme: scheme.clone(), structures_found, candidates })
}

fn evaluate_structure(scheme: &RelationScheme, a: Arc<FiniteMonoid>) -> RelationCandidate {
    let (x, b) = (&scheme.x, &scheme.b);
    let (nx, nb) = (x.order(), b.order());
    let one = b.identity();
    let k: Vec<usize> = (0..nx).map(|xi| scheme.position((xi, one)).expect("unit fibre")).collect();
    let s: Vec<usize> = (0..nb).map(|bi| scheme.position((scheme.u[bi], bi)).expect("section")).collect();
    let q = |r: usize| scheme.q[r];
    let oplus: Vec<Vec<usize>> = (0..nx).map(|i| (0..nx).map(|j| q(a.op(k[i], k[j]))).collect()).collect();
    let factor: Vec<Vec<usize>> = (0..nb).map(|i| (0..nb).map(|j| q(a.op(s[i], s[j]))).collect()).collect();
    let act: Vec<Vec<usize>> = (0..nb).map(|bi| (0..nx).map(|xi| q(a.op(s[bi], k[xi]))).collect()).collect();
    let correct: Vec<Vec<usize>> = (0..nx).map(|xi| (0..nb).map(|bi| q(a.op(k[xi], s[bi]))).collect()).collect();
    let verdict = judge(scheme, &a, &k, &s, &oplus, &correct);
    RelationCandidate { monoid: a, oplus, factor, act, correct, verdict }
}

fn judge(
    scheme: &RelationScheme,
    a: &Arc<FiniteMonoid>,
    k: &[usize],
    s: &[usize],
    oplus: &[Vec<usize>],
    correct: &[Vec<usize>],
) -> Verdict {
    let (x, b) = (&scheme.x, &scheme.b);
    for xi in 0..x.order() {
        for xj in 0..x.order() {
            if oplus[xi][xj] != x.op(xi, xj) {
                return Verdict::Rejected(Rejection::NotAdditive { x: xi, x2: xj, oplus: oplus[xi][xj], sum: x.op(xi, xj) });
            }
        }
    }
    for (i, &(_, bi)) in scheme.r.iter().enumerate() {
        if correct[scheme.q[i]][bi] != scheme.q[i] {
            return Verdict::Rejected(Rejection::CorrectionMoves { element: i });
        }
    }
    for (i, &(_, bi)) in scheme.r.iter().enumerate() {
        if a.op(k[scheme.q[i]], s[bi]) != i {
            return Verdict::Rejected(Rejection::NoDecomposition { element: i });
        }
    }
    let p: Vec<usize> = scheme.r.iter().map(|&(_, bi)| bi).collect();
    let mk = |d: &Arc<FiniteMonoid>, c: &Arc<FiniteMonoid>, v: Vec<usize>| PointedMap::new(d.clone(), c.clone(), v);
    let maps = (
        mk(a, b, p),
        mk(x, a, k.to_vec()),
        mk(a, x, scheme.q.clone()),
        mk(b, a, s.to_vec()),
    );
    let verified = match maps {
        (Ok(p), Ok(k), Ok(q), Ok(s)) => {
            SemiBiproduct::verify(x.clone(), a.clone(), b.clone(), p, k, q, s).map_err(|e: SemiBiproductError| e.to_string())
        }
        _ => Err("maps are not zero-preserving".to_owned()),
    };
    match verified {
        Ok(sb) => Verdict::Accepted(sb),
        Err(message) => Verdict::Rejected(Rejection::NotSemiBiproduct { message }),
    }
}

/// Every admissible `(R, u, q)` over `X`, `B`, optionally with `R` fixed,
/// in a deterministic order.
pub fn admissible_schemes(
    x: &Arc<FiniteMonoid>,
    b: &Arc<FiniteMonoid>,
    r: Option<Vec<(usize, usize)>>,
    budget: u64,
) -> Result<Vec<RelationScheme>, EnumerationError> {
    let (nx, nb) = (x.order(), b.order());
    let one = b.identity();
    let relations: Vec<Vec<(usize, usize)>> = match r {
        Some(r) => vec![r],
        None => {
            let others: Vec<(usize, usize)> =
                (0..nb).filter(|&bi| bi != one).flat_map(|bi| (0..nx).map(move |xi| (xi, bi))).collect();
            if others.len() >= 63 || (1u64 << others.len()) > budget {
                return Err(EnumerationError::BudgetExceeded { what: "candidate relations", budget });
            }
            (0u64..1 << others.len())
                .map(|mask| {
                    let mut rel: Vec<(usize, usize)> = (0..nx).map(|xi| (xi, one)).collect();
                    rel.extend(others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p));
                    rel
                })
                .collect()
        }
    };
    let mut out = Vec::new();
    let mut count = 0u64;
    for rel in relations {
        let mut rel = rel;
        rel.sort_by_key(|&(xi, bi)| (bi, xi));
        rel.dedup();
        if rel.iter().any(|&(xi, bi)| xi >= nx || bi >= nb) {
            continue;
        }
        let fibres: Vec<Vec<usize>> = (0..nb).map(|bi| rel.iter().filter(|p| p.1 == bi).map(|p| p.0).collect()).collect();
        // u(b) ranges over the fibre; q on the fibre is injective with q(u(b)) = 0
        let mut per_fibre: Vec<Vec<(usize, Vec<usize>)>> = Vec::with_capacity(nb);
        for (bi, fibre) in fibres.iter().enumerate() {
            let mut choices = Vec::new();
            if bi == one {
                if fibre.len() == nx && x.identity() < nx {
                    choices.push((x.identity(), fibre.clone()));
                }
            } else {
                for &ub in fibre {
                    for qs in injections(fibre.len(), nx) {
                        let pos = fibre.iter().position(|&v| v == ub).expect("member");
                        if qs[pos] == x.identity() {
                            choices.push((ub, qs));
                        }
                    }
                }
            }
            per_fibre.push(choices);
        }
        let mut stack: Vec<(usize, Vec<usize>, Vec<usize>)> = vec![(0, Vec::new(), Vec::new())];
        while let Some((bi, u, q)) = stack.pop() {
            if bi == nb {
                count += 1;
                if count > budget {
                    return Err(EnumerationError::BudgetExceeded { what: "admissible (R, u, q) triples", budget });
                }
                let qvals: Vec<usize> = q;
                if let Ok(s) = RelationScheme::new(x.clone(), b.clone(), rel.clone(), u, qvals) {
                    out.push(s);
                }
                continue;
            }
            for (ub, qs) in per_fibre[bi].iter().rev() {
                let mut u2 = u.clone();
                u2.push(*ub);
                let mut q2 = q.clone();
                q2.extend_from_slice(qs);
                stack.push((bi + 1, u2, q2));
            }
        }
    }
    Ok(out)
}

/// Injective maps `{0..len} → {0..n}` as value lists, lexicographically.
fn injections(len: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn go(len: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !cur.contains(&v) {
                cur.push(v);
                go(len, n, cur, out);
                cur.pop();
            }
        }
    }
    go(len, n, &mut cur, &mut out);
    out
}

/// Runs the scheme over every admissible `(R, u, q)`.
pub fn enumerate_relation_extensions(
    x: &Arc<FiniteMonoid>,
    b: &Arc<FiniteMonoid>,
    r: Option<Vec<(usize, usize)>>,
    budget: u64,
) -> Result<Vec<RelationSearch>, EnumerationError> {
    admissible_schemes(x, b, r, budget)?.iter().map(|s| evaluate_scheme(s, budget)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::gallery;

    fn e1_scheme() -> RelationScheme {
        let x = Arc::new(catalog::semilattice2());
        let b = Arc::new(catalog::idempotent2());
        RelationScheme::canonical(x, b, vec![(0, 0), (1, 0), (0, 1)]).unwrap()
    }

    #[test]
    fn e1_has_two_structures_and_one_survivor() {
        let search = evaluate_scheme(&e1_scheme(), 1_000).unwrap();
        assert_eq!(search.structures_found, 2);
        let tables: Vec<Vec<Vec<usize>>> = search.candidates.iter().map(|c| c.monoid.rows()).collect();
        assert!(tables.contains(&gallery::e1_sign().rows()));
        assert!(tables.contains(&gallery::e1_chain().rows()));
        let accepted: Vec<_> = search.accepted().collect();
        assert_eq!(accepted.len(), 1);
        assert_eq!(accepted[0].a().rows(), gallery::e1_chain().rows());
        let sign = search.candidates.iter().find(|c| c.monoid.rows() == gallery::e1_sign().rows()).unwrap();
        match &sign.verdict {
            Verdict::Rejected(Rejection::NotAdditive { x: 1, x2: 1, oplus: 0, sum: 1 }) => {}
            other => panic!("unexpected verdict {other:?}"),
        }
    }

    #[test]
    fn e1_relation_is_the_only_proper_one_with_zero_sections() {
        let x = Arc::new(catalog::semilattice2());
        let b = Arc::new(catalog::idempotent2());
        let schemes = admissible_schemes(&x, &b, None, 1_000).unwrap();
        let proper: Vec<_> = schemes
            .iter()
            .filter(|s| s.pairs().len() < 4 && s.u().iter().all(|&v| v == 0) && s.q().iter().zip(s.pairs()).all(|(&q, p)| q == p.0))
            .collect();
        assert_eq!(proper.len(), 1);
        assert_eq!(proper[0].pairs(), &[(0, 0), (1, 0), (0, 1)]);
    }

    #[test]
    fn scheme_conditions_are_enforced() {
        let x = Arc::new(catalog::semilattice2());
        let b = Arc::new(catalog::idempotent2());
        assert_eq!(
            RelationScheme::canonical(x.clone(), b.clone(), vec![(0, 0), (0, 1)]),
            Err(SchemeError::MissingUnitFibre(1))
        );
        assert_eq!(
            RelationScheme::canonical(x.clone(), b.clone(), vec![(0, 0), (1, 0), (1, 1)]),
            Err(SchemeError::MissingSection(1))
        );
        assert_eq!(
            RelationScheme::new(x, b, vec![(0, 0), (1, 0), (0, 1), (1, 1)], vec![0, 0], vec![0, 1, 0, 0]),
            Err(SchemeError::QNotInjective(1))
        );
    }
}
