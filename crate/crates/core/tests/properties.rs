use std::sync::Arc;

use proptest::prelude::*;
use proptest::sample::Index;
use proptest::test_runner::RngSeed;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sbp_core::action::{roundtrip_equivalent, synthesize, PseudoAction};
use sbp_core::catalog;
use sbp_core::enumerate::{enumerate_pseudo_actions, SearchConfig};
use sbp_core::gallery;
use sbp_core::io::{self, ActionInput};
use sbp_core::maps::{all_homomorphisms, all_pointed_maps, PointedMap};
use sbp_core::monoid::FiniteMonoid;
use sbp_core::morphism::{classify_up_to_iso, fixed_endpoint_isomorphism};
use sbp_core::semibiproduct::{extract_pseudo_action, SemiBiproduct};

fn monoids() -> Vec<Arc<FiniteMonoid>> {
    catalog::monoids_up_to(3).into_iter().map(Arc::new).collect()
}

fn pick<T: Clone>(items: &[T], i: Index) -> T {
    items[i.index(items.len())].clone()
}

/// A pseudo-action of a random corpus pair, chosen by index.
fn action(x: Index, b: Index, which: Index) -> PseudoAction {
    let ms = monoids();
    let (x, b) = (pick(&ms, x), pick(&ms, b));
    let all = enumerate_pseudo_actions(&x, &b, &SearchConfig::default()).expect("small pair");
    pick(&all, which)
}

/// Fixed seed unless `SBP_SEED` overrides it.
fn config() -> ProptestConfig {
    let seed = std::env::var("SBP_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x5b9);
    ProptestConfig { cases: 64, rng_seed: RngSeed::Fixed(seed), ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn pointwise_sum_is_a_monoid(a in any::<Index>(), b in any::<Index>(), f in any::<Index>(), g in any::<Index>(), h in any::<Index>()) {
        let ms = monoids();
        let (a, b) = (pick(&ms, a), pick(&ms, b));
        let maps = all_pointed_maps(&a, &b);
        let (f, g, h) = (pick(&maps, f), pick(&maps, g), pick(&maps, h));
        let zero = PointedMap::zero(a.clone(), b.clone());
        prop_assert_eq!(f.pointwise_add(&zero).unwrap(), f.clone());
        prop_assert_eq!(zero.pointwise_add(&f).unwrap(), f.clone());
        let left = f.pointwise_add(&g).unwrap().pointwise_add(&h).unwrap();
        let right = f.pointwise_add(&g.pointwise_add(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn composition_distributes(a in any::<Index>(), b in any::<Index>(), c in any::<Index>(), g in any::<Index>(), h in any::<Index>(), k in any::<Index>(), f in any::<Index>()) {
        let ms = monoids();
        let (a, b, c) = (pick(&ms, a), pick(&ms, b), pick(&ms, c));
        let maps = all_pointed_maps(&a, &b);
        let (g, h) = (pick(&maps, g), pick(&maps, h));
        let k = pick(&all_pointed_maps(&c, &a), k);
        let sum = g.pointwise_add(&h).unwrap();
        prop_assert_eq!(sum.after(&k).unwrap(), g.after(&k).unwrap().pointwise_add(&h.after(&k).unwrap()).unwrap());
        let f = pick(&all_homomorphisms(&b, &c), f);
        let outer = f.as_map().after(&sum).unwrap();
        prop_assert_eq!(outer, f.as_map().after(&g).unwrap().pointwise_add(&f.as_map().after(&h).unwrap()).unwrap());
    }

    #[test]
    fn synthesis_round_trips(x in any::<Index>(), b in any::<Index>(), which in any::<Index>()) {
        let pa = action(x, b, which);
        prop_assert!(roundtrip_equivalent(&pa).is_ok());
        let (synth, sb) = synthesize(&pa).unwrap();
        let back = extract_pseudo_action(&sb).unwrap();
        for &(x, b) in &synth.carrier {
            prop_assert_eq!(back.correct(x, b), x);
        }
    }

    #[test]
    fn action_documents_round_trip(x in any::<Index>(), b in any::<Index>(), which in any::<Index>()) {
        let pa = action(x, b, which);
        let input = ActionInput::from_action(&pa);
        let text = serde_json::to_string(&io::emit_action(Some("a"), &input)).unwrap();
        let ws = io::parse_str(&text, "a.json").unwrap();
        let back = &ws.actions["a"];
        prop_assert_eq!(back.tables.clone(), input.tables.clone());
        prop_assert_eq!(back.x.table(), input.x.table());
        prop_assert_eq!(back.b.table(), input.b.table());
        prop_assert!(back.validate().is_ok());
    }

    #[test]
    fn classification_ignores_order(x in 0usize..10, b in 0usize..10, seed in any::<u64>()) {
        let ms = monoids();
        let (x, b) = (ms[x].clone(), ms[b].clone());
        let all = enumerate_pseudo_actions(&x, &b, &SearchConfig::default()).unwrap();
        prop_assume!(all.len() <= 200);
        let sbs: Vec<SemiBiproduct> = all.iter().map(|pa| synthesize(pa).unwrap().1).collect();
        let mut shuffled = sbs.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let summary = |classes: Vec<sbp_core::morphism::IsoClass>| {
            let mut v: Vec<_> = classes.into_iter().map(|c| (c.representative.a().table().to_vec(), c.size)).collect();
            v.sort();
            v
        };
        prop_assert_eq!(summary(classify_up_to_iso(&sbs).unwrap()), summary(classify_up_to_iso(&shuffled).unwrap()));
    }

    #[test]
    fn relabelling_gives_an_isomorphic_copy(seed in any::<u64>()) {
        let s3 = gallery::z3_semidirect_z2();
        let mut rest: Vec<usize> = (1..6).collect();
        rest.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let perm: Vec<usize> = std::iter::once(0).chain(rest).collect();
        let twisted = gallery::twisted_copy(&s3, &perm).unwrap();
        prop_assert!(fixed_endpoint_isomorphism(&s3, &twisted).is_some());
        prop_assert!(fixed_endpoint_isomorphism(&twisted, &s3).is_some());
    }
}

/// Independent count of pseudo-actions: every choice of the three tables,
/// kept when it passes validation.
fn brute_force_count(x: &Arc<FiniteMonoid>, b: &Arc<FiniteMonoid>) -> usize {
    let (nx, nb) = (x.order(), b.order());
    let cells = nb * nx + nx * nb + nb * nb;
    let mut count = 0;
    let mut digits = vec![0usize; cells];
    loop {
        let phi: Vec<Vec<usize>> = digits[..nb * nx].chunks(nx).map(<[usize]>::to_vec).collect();
        let rho: Vec<Vec<usize>> = digits[nb * nx..nb * nx + nx * nb].chunks(nb).map(<[usize]>::to_vec).collect();
        let gamma: Vec<Vec<usize>> = digits[nb * nx + nx * nb..].chunks(nb).map(<[usize]>::to_vec).collect();
        let tables = sbp_core::action::ActionTables { phi, rho, gamma };
        count += usize::from(PseudoAction::validate(x.clone(), b.clone(), &tables).is_ok());
        let mut i = 0;
        loop {
            if i == cells {
                return count;
            }
            digits[i] += 1;
            if digits[i] < nx {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn enumeration_matches_brute_force() {
    let ms: Vec<Arc<FiniteMonoid>> = catalog::monoids_up_to(2).into_iter().map(Arc::new).collect();
    for x in &ms {
        for b in &ms {
            let fast = enumerate_pseudo_actions(x, b, &SearchConfig::default()).unwrap().len();
            assert_eq!(fast, brute_force_count(x, b), "{} by {}", x.name(), b.name());
        }
    }
    let (x, b) = (Arc::new(catalog::semilattice2()), Arc::new(catalog::idempotent2()));
    assert_eq!(brute_force_count(&x, &b), 8);
}
