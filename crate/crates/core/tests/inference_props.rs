mod common;

use actinf_core::{
    answer, direct_focus, is_consistent, iterated_focus, system_p_infers, z_partition, BeliefBase,
    Conditional, QueryResponse, WorldSpace,
};
use common::{
    accepts, base, conditional, consistent_prefix, each_ranking, table, tolerated_by, Table, NAMES,
};
use proptest::prelude::*;

const THREE: &[&str] = &["a", "b", "c"];
const FOUR: &[&str] = &NAMES;

fn tables(base: &BeliefBase) -> Vec<Table> {
    base.conditionals().iter().map(|r| table(base.signature(), r)).collect()
}

fn has_ranking_model(base: &BeliefBase, max: u32) -> bool {
    let ts = tables(base);
    let mut found = false;
    each_ranking(1 << base.signature().len(), max, |ranks| {
        found = ts.iter().all(|t| accepts(ranks, t));
        !found
    });
    found
}

fn all_subsets(base: &BeliefBase) -> Vec<BeliefBase> {
    let ids: Vec<&str> = base.ids().collect();
    (0u32..1 << ids.len())
        .map(|mask| {
            let pick: Vec<&str> =
                ids.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, id)| *id).collect();
            base.subset(&pick).unwrap()
        })
        .collect()
}

fn satisfiable_antecedent(base: &BeliefBase, q: &Conditional) -> bool {
    WorldSpace::new(base.signature()).unwrap().is_satisfiable(&q.antecedent).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn consistency_matches_ranking_models(b in base(3, 3)) {
        prop_assert_eq!(is_consistent(&b).unwrap(), has_ranking_model(&b, b.len() as u32));
    }

    #[test]
    fn entailment_matches_ranking_models(b in base(3, 2), queries in prop::collection::vec(conditional(THREE), 4)) {
        let b = consistent_prefix(&b);
        let ts = tables(&b);
        let mut models: Vec<Vec<u32>> = Vec::new();
        each_ranking(8, b.len() as u32 + 1, |ranks| {
            if ts.iter().all(|t| accepts(ranks, t)) {
                models.push(ranks.to_vec());
            }
            true
        });
        for q in &queries {
            let tq = table(b.signature(), q);
            let expected = models.iter().all(|m| accepts(m, &tq));
            prop_assert_eq!(system_p_infers(&b, q).unwrap(), expected, "{}", q);
        }
    }

    #[test]
    fn z_partition_is_valid_and_greedy(b in base(4, 5)) {
        let sig = b.signature().clone();
        match z_partition(&b) {
            Err(_) => prop_assert!(!is_consistent(&b).unwrap()),
            Ok(zp) => {
                for (i, layer) in zp.layers.iter().enumerate() {
                    let rest: Vec<&Conditional> =
                        zp.layers[i..].iter().flatten().map(|id| b.get(id).unwrap()).collect();
                    for id in layer {
                        prop_assert!(tolerated_by(&sig, b.get(id).unwrap(), &rest));
                    }
                    for id in zp.layers[i + 1..].iter().flatten() {
                        prop_assert!(!tolerated_by(&sig, b.get(id).unwrap(), &rest), "{} could join layer {}", id, i);
                    }
                }
                for id in &zp.vacuous {
                    let t = table(&sig, b.get(id).unwrap());
                    prop_assert!(t.verify.iter().chain(&t.falsify).all(|x| !x));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn semi_monotony(b in base(4, 4), queries in prop::collection::vec(conditional(FOUR), 20)) {
        let b = consistent_prefix(&b);
        let subsets = all_subsets(&b);
        for q in &queries {
            let full = system_p_infers(&b, q).unwrap();
            for s in &subsets {
                if system_p_infers(s, q).unwrap() {
                    prop_assert!(full, "{} follows from a subset only", q);
                }
            }
        }
    }

    #[test]
    fn members_are_inferred(b in base(4, 4)) {
        let b = consistent_prefix(&b);
        for r in b.conditionals() {
            prop_assert_eq!(answer(&b, r).unwrap(), QueryResponse::Yes);
        }
    }

    #[test]
    fn never_yes_both_ways(b in base(4, 4), q in conditional(FOUR)) {
        let b = consistent_prefix(&b);
        prop_assume!(satisfiable_antecedent(&b, &q));
        let yes = system_p_infers(&b, &q).unwrap();
        let yes_negated = system_p_infers(&b, &q.negated("q")).unwrap();
        prop_assert!(!(yes && yes_negated));
        let expected = match (yes, yes_negated) {
            (true, _) => QueryResponse::Yes,
            (_, true) => QueryResponse::No,
            _ => QueryResponse::Unknown,
        };
        prop_assert_eq!(answer(&b, &q).unwrap(), expected);
    }

    #[test]
    fn iterated_focus_grows_to_a_fixed_point(b in base(4, 6), q in conditional(FOUR)) {
        prop_assert_eq!(iterated_focus(&b, &q, 0), direct_focus(&b, &q));
        let mut previous = iterated_focus(&b, &q, 0);
        for depth in 1..=b.len() + 1 {
            let next = iterated_focus(&b, &q, depth);
            prop_assert!(previous.iter().all(|id| next.contains(id)));
            previous = next;
        }
        prop_assert_eq!(iterated_focus(&b, &q, b.len()), previous);
    }
}
