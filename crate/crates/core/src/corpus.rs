//! The small-instance corpus: every pseudo-action over every pair of
//! monoids up to a given order, with per-action checks and a deterministic
//! summary.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::action::{check_derived_identities, roundtrip_equivalent, PseudoAction};
use crate::catalog;
use crate::enumerate::{enumerate_pseudo_actions, EnumerationError, SearchConfig};
use crate::monoid::FiniteMonoid;
use crate::semibiproduct::{beta_embedding, decomposition_check, is_schreier, SemiBiproduct};
use crate::transform::{verify_structure_axioms, AxiomReport, MonoidInstance};

/// All pseudo-actions of one `B` on one `X`, sorted by table order.
#[derive(Clone, Debug)]
pub struct PairActions {
    pub x: Arc<FiniteMonoid>,
    pub b: Arc<FiniteMonoid>,
    pub actions: Vec<PseudoAction>,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub order: usize,
    pub monoids: Vec<Arc<FiniteMonoid>>,
    pub pairs: Vec<PairActions>,
}

impl Corpus {
    /// Monoids of order `1..=order` up to isomorphism and all ordered pairs
    /// of them.
    pub fn build(order: usize, config: &SearchConfig) -> Result<Self, EnumerationError> {
        let monoids: Vec<Arc<FiniteMonoid>> = catalog::monoids_up_to(order).into_iter().map(Arc::new).collect();
        let mut pairs = Vec::with_capacity(monoids.len() * monoids.len());
        for x in &monoids {
            for b in &monoids {
                let actions = enumerate_pseudo_actions(x, b, config)?;
                pairs.push(PairActions { x: x.clone(), b: b.clone(), actions });
            }
        }
        Ok(Corpus { order, monoids, pairs })
    }

    pub fn action_count(&self) -> usize {
        self.pairs.iter().map(|p| p.actions.len()).sum()
    }

    pub fn actions(&self) -> impl Iterator<Item = &PseudoAction> {
        self.pairs.iter().flat_map(|p| p.actions.iter())
    }
}

/// Outcome of the per-action checks. Every flag is expected to be true.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ActionChecks {
    /// Synthesis, re-extraction and the derived-action formulas.
    pub roundtrip: bool,
    /// `β` injective with image `{(x^b, b)}`, `αβ = 1`, `q(a)^{p(a)} = q(a)`
    /// and the decomposition of sums, on the synthetic semi-biproduct.
    pub embedding: bool,
    /// Schreier ⇔ trivial `ρ` ⇔ `|A| = |X||B|` with `β` bijective.
    pub schreier: bool,
    pub identities: bool,
}

impl ActionChecks {
    pub fn all(&self) -> bool {
        self.roundtrip && self.embedding && self.schreier && self.identities
    }
}

/// Checks on a semi-biproduct that follow from its equations alone.
pub fn embedding_holds(sb: &SemiBiproduct) -> bool {
    beta_embedding(sb).is_ok() && decomposition_check(sb).is_ok()
}

/// Schreier ⇔ trivial correction ⇔ `β` a bijection onto `X × B`.
pub fn schreier_consistent(sb: &SemiBiproduct) -> bool {
    let Ok(beta) = beta_embedding(sb) else {
        return false;
    };
    let (nx, nb) = (sb.x().order(), sb.b().order());
    let trivial = (0..nb).all(|b| (0..nx).all(|x| sb.correct(x, b) == x));
    let bijective = sb.a().order() == nx * nb && beta.is_bijective_onto_product(nx, nb);
    is_schreier(sb) == trivial && trivial == bijective
}

pub fn check_action(pa: &PseudoAction) -> ActionChecks {
    let identities = check_derived_identities(pa).all_pass();
    let Ok(rt) = roundtrip_equivalent(pa) else {
        return ActionChecks { identities, ..Default::default() };
    };
    let sb = &rt.synthetic;
    ActionChecks {
        roundtrip: true,
        embedding: embedding_holds(sb),
        schreier: schreier_consistent(sb) && is_schreier(sb) == pa.has_trivial_correction(),
        identities,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PairSummary {
    pub x: String,
    pub b: String,
    pub actions: usize,
    pub trivial_correction: usize,
    pub trivial_factor: usize,
    pub biproducts: usize,
    pub roundtrip_failures: usize,
    pub embedding_failures: usize,
    pub schreier_failures: usize,
    pub identity_failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub order: usize,
    pub monoids: Vec<String>,
    pub actions: usize,
    pub failures: usize,
    pub pairs: Vec<PairSummary>,
    pub axioms: AxiomReport,
}

impl CorpusReport {
    pub fn all_pass(&self) -> bool {
        self.failures == 0 && self.axioms.all_pass()
    }
}

pub fn summarize_pair(pair: &PairActions) -> PairSummary {
    let checks: Vec<ActionChecks> = pair.actions.par_iter().map(check_action).collect();
    let count = |f: fn(&ActionChecks) -> bool| checks.iter().filter(|c| !f(c)).count();
    PairSummary {
        x: pair.x.name().to_owned(),
        b: pair.b.name().to_owned(),
        actions: pair.actions.len(),
        trivial_correction: pair.actions.iter().filter(|a| a.has_trivial_correction()).count(),
        trivial_factor: pair.actions.iter().filter(|a| a.tables().gamma.iter().flatten().all(|&g| g == a.x().identity())).count(),
        biproducts: pair.actions.iter().filter(|a| a.is_trivial()).count(),
        roundtrip_failures: count(|c| c.roundtrip),
        embedding_failures: count(|c| c.embedding),
        schreier_failures: count(|c| c.schreier),
        identity_failures: count(|c| c.identities),
    }
}

/// Runs every per-action check and the map-transformation axioms over the
/// corpus monoids.
pub fn corpus_report(corpus: &Corpus) -> CorpusReport {
    let pairs: Vec<PairSummary> = corpus.pairs.iter().map(summarize_pair).collect();
    let failures = pairs
        .iter()
        .map(|p| p.roundtrip_failures + p.embedding_failures + p.schreier_failures + p.identity_failures)
        .sum();
    CorpusReport {
        order: corpus.order,
        monoids: corpus.monoids.iter().map(|m| m.name().to_owned()).collect(),
        actions: corpus.action_count(),
        failures,
        pairs,
        axioms: verify_structure_axioms(&MonoidInstance, &corpus.monoids),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_two_corpus_is_clean() {
        let corpus = Corpus::build(2, &SearchConfig::default()).unwrap();
        assert_eq!(corpus.monoids.len(), 3);
        let report = corpus_report(&corpus);
        assert!(report.all_pass(), "{report:?}");
        assert_eq!(report.actions, corpus.action_count());
        // the trivial monoid admits exactly one pseudo-action either way
        for p in &report.pairs {
            if p.x == "M1.0" || p.b == "M1.0" {
                assert_eq!(p.actions, 1);
            }
        }
    }
}
