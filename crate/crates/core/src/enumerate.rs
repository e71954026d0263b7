//! Exhaustive enumeration of pseudo-actions.
//!
//! Entries pinned by the unit laws are fixed up front. The remaining free
//! cells are filled in the order `φ` (rows `b ≠ 1`, columns `x ≠ 0`), then
//! `ρ` (rows `x ≠ 0`, columns `b ≠ 1`), then `γ` (`b, b' ≠ 1`), each in
//! row-major order. Since forced cells are constant, lexicographic order on
//! the free cells agrees with lexicographic order on `(phi, rho, gamma)`.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::action::{FactorKernel, PseudoAction};
use crate::monoid::FiniteMonoid;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

const UNSET: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub enum EnumerationError {
    #[error("budget exceeded: {what} needs more than {budget}")]
    BudgetExceeded { what: &'static str, budget: u64 },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Generate every assignment of the free cells and check the
    /// coherence equation at the end.
    Lazy,
    /// Depth-first with partial evaluation of the coherence equation after
    /// each assignment.
    #[default]
    Pruned,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Caps `|X|³·|B|³` per candidate and the number of candidates (lazy)
    /// or search nodes (pruned).
    pub budget: u64,
    pub strategy: Strategy,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { budget: DEFAULT_BUDGET, strategy: Strategy::Pruned }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Table {
    Phi,
    Rho,
    Gamma,
}

struct Space<'a> {
    x: &'a FiniteMonoid,
    b: &'a FiniteMonoid,
    shared: (&'a Arc<FiniteMonoid>, &'a Arc<FiniteMonoid>),
    nx: usize,
    nb: usize,
    /// `(table, flat index)` of each free cell, in search order.
    cells: Vec<(Table, usize)>,
    phi: Vec<usize>,
    rho: Vec<usize>,
    gamma: Vec<usize>,
}

impl<'a> Space<'a> {
    fn new(xa: &'a Arc<FiniteMonoid>, ba: &'a Arc<FiniteMonoid>) -> Self {
        let (x, b) = (&**xa, &**ba);
        let (nx, nb) = (x.order(), b.order());
        let (zero, one) = (x.identity(), b.identity());
        let mut phi = vec![UNSET; nb * nx];
        let mut rho = vec![UNSET; nx * nb];
        let mut gamma = vec![UNSET; nb * nb];
        let mut cells = Vec::new();
        for bi in 0..nb {
            for xi in 0..nx {
                if bi == one {
                    phi[bi * nx + xi] = xi;
                } else if xi == zero {
                    phi[bi * nx + xi] = zero;
                } else {
                    cells.push((Table::Phi, bi * nx + xi));
                }
            }
        }
        for xi in 0..nx {
            for bi in 0..nb {
                if bi == one {
                    rho[xi * nb + bi] = xi;
                } else if xi == zero {
                    rho[xi * nb + bi] = zero;
                } else {
                    cells.push((Table::Rho, xi * nb + bi));
                }
            }
        }
        for b1 in 0..nb {
            for b2 in 0..nb {
                if b1 == one || b2 == one {
                    gamma[b1 * nb + b2] = zero;
                } else {
                    cells.push((Table::Gamma, b1 * nb + b2));
                }
            }
        }
        Space { x, b, shared: (xa, ba), nx, nb, cells, phi, rho, gamma }
    }

    fn set(&mut self, cell: usize, value: usize) {
        let (table, idx) = self.cells[cell];
        match table {
            Table::Phi => self.phi[idx] = value,
            Table::Rho => self.rho[idx] = value,
            Table::Gamma => self.gamma[idx] = value,
        }
    }

    fn candidate_count(&self) -> Option<u64> {
        (self.nx as u64).checked_pow(self.cells.len() as u32)
    }

    fn finish(&self) -> PseudoAction {
        PseudoAction::from_flat_unchecked(
            self.shared.0.clone(),
            self.shared.1.clone(),
            self.phi.clone(),
            self.rho.clone(),
            self.gamma.clone(),
        )
    }

    /// Partial formula memo; entries depending on unset cells stay `UNSET`.
    fn partial_memo(&self, memo: &mut [usize]) {
        let (nx, nb) = (self.nx, self.nb);
        let n = nx * nb;
        for b1 in 0..nb {
            for b2 in 0..nb {
                let bb = self.b.op(b1, b2);
                let g = self.gamma[b1 * nb + b2];
                for x1 in 0..nx {
                    let u = b1 * nx + x1;
                    for x2 in 0..nx {
                        let a = self.phi[b1 * nx + x2];
                        let v = b2 * nx + x2;
                        memo[u * n + v] = if a == UNSET || g == UNSET {
                            UNSET
                        } else {
                            let r = self.rho[self.x.op(self.x.op(x1, a), g) * nb + bb];
                            if r == UNSET {
                                UNSET
                            } else {
                                bb * nx + r
                            }
                        };
                    }
                }
            }
        }
    }

    /// Whether some fully evaluable instance of the coherence equation fails.
    fn partial_violation(&self, memo: &[usize]) -> bool {
        let n = self.nx * self.nb;
        for u in 0..n {
            for v in 0..n {
                let uv = memo[u * n + v];
                if uv == UNSET {
                    continue;
                }
                for w in 0..n {
                    let vw = memo[v * n + w];
                    if vw == UNSET {
                        continue;
                    }
                    let (l, r) = (memo[uv * n + w], memo[u * n + vw]);
                    if l != UNSET && r != UNSET && l != r {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// All pseudo-actions of `b` on `x`, sorted by `(phi, rho, gamma)`.
pub fn enumerate_pseudo_actions(
    x: &FiniteMonoid,
    b: &FiniteMonoid,
    config: &SearchConfig,
) -> Result<Vec<PseudoAction>, EnumerationError> {
    let per_check = (x.order() as u64).pow(3).saturating_mul((b.order() as u64).pow(3));
    if per_check > config.budget {
        return Err(EnumerationError::BudgetExceeded { what: "coherence check per candidate", budget: config.budget });
    }
    let (xa, ba) = (Arc::new(x.clone()), Arc::new(b.clone()));
    let space = Space::new(&xa, &ba);
    let mut out = match config.strategy {
        Strategy::Lazy => lazy(&space, config.budget)?,
        Strategy::Pruned => pruned(&space, config.budget)?,
    };
    out.sort_by(|l, r| l.table_key().cmp(&r.table_key()));
    Ok(out)
}

/// Number of leading cells fixed per parallel task.
fn prefix_len(space: &Space<'_>) -> usize {
    let mut len = 0;
    let mut tasks = 1usize;
    while len < space.cells.len() && tasks < 256 {
        tasks *= space.nx;
        len += 1;
    }
    len
}

fn prefixes(space: &Space<'_>, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|p| (0..space.nx).map(move |v| [p.clone(), vec![v]].concat())).collect();
    }
    out
}

fn lazy(space: &Space<'_>, budget: u64) -> Result<Vec<PseudoAction>, EnumerationError> {
    match space.candidate_count() {
        Some(c) if c <= budget => {}
        _ => return Err(EnumerationError::BudgetExceeded { what: "candidate assignments", budget }),
    }
    let len = prefix_len(space);
    let rest = space.cells.len() - len;
    let results: Vec<Vec<PseudoAction>> = prefixes(space, len)
        .into_par_iter()
        .map(|prefix| {
            let mut local = clone_space(space);
            for (i, &v) in prefix.iter().enumerate() {
                local.set(i, v);
            }
            let kernel = FactorKernel::new(local.x, local.b);
            let mut memo = vec![0; kernel.pairs() * kernel.pairs()];
            let mut digits = vec![0usize; rest];
            let mut found = Vec::new();
            loop {
                for (i, &d) in digits.iter().enumerate() {
                    local.set(len + i, d);
                }
                kernel.fill_memo(&local.phi, &local.rho, &local.gamma, &mut memo);
                if kernel.first_violation(&memo).is_none() {
                    found.push(local.finish());
                }
                // mixed-radix increment, last cell fastest
                let mut pos = rest;
                loop {
                    if pos == 0 {
                        return found;
                    }
                    pos -= 1;
                    digits[pos] += 1;
                    if digits[pos] < local.nx {
                        break;
                    }
                    digits[pos] = 0;
                }
            }
        })
        .collect();
    Ok(results.into_iter().flatten().collect())
}

fn clone_space<'a>(space: &Space<'a>) -> Space<'a> {
    Space {
        x: space.x,
        b: space.b,
        shared: space.shared,
        nx: space.nx,
        nb: space.nb,
        cells: space.cells.clone(),
        phi: space.phi.clone(),
        rho: space.rho.clone(),
        gamma: space.gamma.clone(),
    }
}

fn pruned(space: &Space<'_>, budget: u64) -> Result<Vec<PseudoAction>, EnumerationError> {
    let nodes = AtomicU64::new(0);
    let len = prefix_len(space);
    let n = space.nx * space.nb;
    let results: Result<Vec<Vec<PseudoAction>>, EnumerationError> = prefixes(space, len)
        .into_par_iter()
        .map(|prefix| {
            let mut local = clone_space(space);
            let mut memo = vec![UNSET; n * n];
            for (i, &v) in prefix.iter().enumerate() {
                local.set(i, v);
                local.partial_memo(&mut memo);
                if local.partial_violation(&memo) {
                    return Ok(Vec::new());
                }
            }
            let mut found = Vec::new();
            dfs(&mut local, len, &mut memo, &nodes, budget, &mut found)?;
            Ok(found)
        })
        .collect();
    Ok(results?.into_iter().flatten().collect())
}

fn dfs(
    space: &mut Space<'_>,
    cell: usize,
    memo: &mut [usize],
    nodes: &AtomicU64,
    budget: u64,
    out: &mut Vec<PseudoAction>,
) -> Result<(), EnumerationError> {
    if cell == space.cells.len() {
        out.push(space.finish());
        return Ok(());
    }
    for v in 0..space.nx {
        if nodes.fetch_add(1, Ordering::Relaxed) >= budget {
            return Err(EnumerationError::BudgetExceeded { what: "search nodes", budget });
        }
        space.set(cell, v);
        space.partial_memo(memo);
        if !space.partial_violation(memo) {
            dfs(space, cell + 1, memo, nodes, budget, out)?;
        }
    }
    space.set(cell, UNSET);
    Ok(())
}

/// Number of free cells and candidate assignments before any pruning.
pub fn search_space(x: &FiniteMonoid, b: &FiniteMonoid) -> (usize, Option<u64>) {
    let (xa, ba) = (Arc::new(x.clone()), Arc::new(b.clone()));
    let space = Space::new(&xa, &ba);
    (space.cells.len(), space.candidate_count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn both(x: &FiniteMonoid, b: &FiniteMonoid) -> Vec<PseudoAction> {
        let lazy = enumerate_pseudo_actions(x, b, &SearchConfig { strategy: Strategy::Lazy, ..Default::default() });
        let pruned = enumerate_pseudo_actions(x, b, &SearchConfig::default());
        assert_eq!(lazy, pruned);
        pruned.unwrap()
    }

    #[test]
    fn forced_cases_have_one_action() {
        let t = catalog::trivial();
        for m in catalog::monoids_up_to(3) {
            assert_eq!(both(&m, &t).len(), 1);
            assert_eq!(both(&t, &m).len(), 1);
        }
    }

    #[test]
    fn e1_space_has_eight_candidates() {
        let (x, b) = (catalog::semilattice2(), catalog::idempotent2());
        assert_eq!(search_space(&x, &b), (3, Some(8)));
        let all = both(&x, &b);
        assert!(all.iter().all(|pa| PseudoAction::validate(pa.x().clone(), pa.b().clone(), &pa.tables()).is_ok()));
    }

    #[test]
    fn budget_is_enforced_not_truncated() {
        let z3 = catalog::cyclic(3);
        let tight = SearchConfig { budget: 10, strategy: Strategy::Pruned };
        assert!(matches!(enumerate_pseudo_actions(&z3, &z3, &tight), Err(EnumerationError::BudgetExceeded { .. })));
        let tight = SearchConfig { budget: 10, strategy: Strategy::Lazy };
        assert!(matches!(enumerate_pseudo_actions(&z3, &z3, &tight), Err(EnumerationError::BudgetExceeded { .. })));
    }

    #[test]
    fn strategies_agree_on_order_two_and_three() {
        for x in catalog::monoids_up_to(3).iter().filter(|m| m.order() >= 2) {
            for b in catalog::monoids_of_order(2) {
                both(x, &b);
            }
        }
    }
}
