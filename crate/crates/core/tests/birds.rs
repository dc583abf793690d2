//! The 20-conditional birds-and-fish base: ranks, associations, labels,
//! activation tables, selections and answers.

use std::collections::BTreeSet;

use actinf_core::rational::{int, to_decimal_string};
use actinf_core::{
    answer, answer_query, build_network, direct_focus, initial_base_levels, is_consistent, iterated_focus,
    label_network, parse_conditional, ratio, sample, select, soundness_check, system_p_infers, tolerates,
    update_state, weighting, z_partition, Atom, BeliefBase, EngineConfig, QueryResponse, Rational, Session,
    World,
};

fn ids(list: &[u32]) -> Vec<String> {
    list.iter().map(|i| format!("r{i}")).collect()
}

fn set(list: &[String]) -> BTreeSet<String> {
    list.iter().cloned().collect()
}

fn sub(list: &[u32]) -> BeliefBase {
    sample::birds().subset(&ids(list)).unwrap()
}

fn q(text: &str) -> actinf_core::Conditional {
    parse_conditional(text).unwrap()
}

#[test]
fn signature_is_inferred() {
    let base = sample::birds();
    assert_eq!(base.len(), 20);
    let atoms: BTreeSet<&str> = base.signature().atoms().iter().map(Atom::name).collect();
    assert_eq!(atoms, "a b c d f h i k l m p r s w".split(' ').collect());
    assert!(is_consistent(&base).unwrap());
}

#[test]
fn winged_animal_rule_is_tolerated() {
    let base = sample::birds();
    let r1 = base.get("r1").unwrap();
    let world = World::with_true_atoms(base.signature(), ["a", "b", "d", "f", "w"]).unwrap();
    assert!(r1.verified_by(&world).unwrap());
    for r in base.conditionals() {
        assert!(!r.falsified_by(&world).unwrap(), "{} falsified", r.id);
    }
    let witness = tolerates(&base, r1).unwrap().expect("r1 is tolerated");
    assert!(r1.verified_by(&witness).unwrap());
}

#[test]
fn z_partition_layers() {
    let zp = z_partition(&sample::birds()).unwrap();
    assert_eq!(
        zp.layers,
        vec![ids(&[1, 2, 3, 4, 5, 6, 8, 12, 13, 14, 15, 16, 17, 18, 20]), ids(&[7, 9, 11, 19]), ids(&[10]),]
    );
    assert_eq!(zp.z_rank("r1").unwrap(), 0);
    assert_eq!(zp.z_rank("r9").unwrap(), 1);
    assert_eq!(zp.z_rank("r10").unwrap(), 2);
}

#[test]
fn base_levels_follow_ranks() {
    let levels = initial_base_levels(&z_partition(&sample::birds()).unwrap());
    assert_eq!(levels["r9"], ratio(1, 2));
    assert_eq!(levels["r10"], ratio(1, 3));
    assert_eq!(levels["r1"], int(1));
}

#[test]
fn calm_chickens_example() {
    let calm = sample::calm_chicken_query();
    let chickens = sub(&[9, 11]);
    assert!(system_p_infers(&chickens, &calm.negated("q")).unwrap());
    assert!(!is_consistent(&chickens.with(calm.clone()).unwrap()).unwrap());
    assert_eq!(answer(&chickens, &calm).unwrap(), QueryResponse::No);
    assert_eq!(answer(&sub(&[8]), &calm).unwrap(), QueryResponse::Unknown);
    assert_eq!(answer(&sub(&[9]), &calm).unwrap(), QueryResponse::Unknown);
    // birds usually have wings: a member of the base
    assert!(system_p_infers(&sample::birds(), &q("(w | b)")).unwrap());
}

#[test]
fn direct_focus_of_calm_chicken_query() {
    let base = sample::birds();
    let calm = sample::calm_chicken_query();
    let focus = direct_focus(&base, &calm);
    assert_eq!(focus, ids(&[1, 2, 7, 8, 9, 10, 11, 19]));
    assert_eq!(answer(&base.subset(&focus).unwrap(), &calm).unwrap(), QueryResponse::No);
    assert_eq!(iterated_focus(&base, &calm, 0), focus);
}

// Atoms of each conditional, copied by hand from the base file.
#[rustfmt::skip]
const SIGNATURES: &[(u32, &str)] = &[
    (1, "afw"), (2, "afw"), (3, "ab"), (4, "bw"), (5, "bd"), (6, "bp"), (7, "fp"), (8, "bc"),
    (9, "cf"), (10, "cfs"), (11, "cs"), (12, "ai"), (13, "ir"), (14, "il"), (15, "ilr"),
    (16, "dr"), (17, "dl"), (18, "hr"), (19, "fhw"), (20, "km"),
];

#[test]
fn iterated_focus_matches_set_expansion() {
    let sigs = SIGNATURES;
    let shares = |a: &str, b: &str| a.chars().any(|c| b.contains(c));
    let mut focus: Vec<u32> = sigs.iter().filter(|(_, s)| shares(s, "cfs")).map(|(i, _)| *i).collect();
    let base = sample::birds();
    let calm = sample::calm_chicken_query();
    for depth in 1..=20 {
        let reached: String = sigs.iter().filter(|(i, _)| focus.contains(i)).map(|(_, s)| *s).collect();
        focus = sigs.iter().filter(|(_, s)| shares(s, &reached)).map(|(i, _)| *i).collect();
        assert_eq!(iterated_focus(&base, &calm, depth), ids(&focus), "depth {depth}");
    }
    assert_eq!(focus, (1..=19).collect::<Vec<_>>());
    assert_eq!(iterated_focus(&base, &calm, 1), ids(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 18, 19]));
}

#[test]
fn network_edges() {
    let net = build_network(&sample::birds());
    assert_eq!(net.vertices().len(), 14);
    let edges: BTreeSet<String> = net.edges().iter().map(|(a, b)| format!("{a}{b}")).collect();
    let expected: BTreeSet<String> = "ab af ai aw bc bd bp bw cf cs dl dr fh fp fs fw hr hw il ir km lr"
        .split(' ')
        .map(str::to_string)
        .collect();
    assert_eq!(edges, expected);
}

type LabelRow = (&'static str, (i64, i64), Option<usize>);

fn check_labels(query: &str, expected: &[LabelRow]) {
    let labels = label_network(&build_network(&sample::birds()), &q(query)).unwrap();
    for (atom, (p, d), step) in expected {
        let atom = Atom::new(*atom);
        assert_eq!(labels.tau(&atom), Some(&ratio(*p, *d)), "tau({atom})");
        assert_eq!(labels.step(&atom), Some(*step), "step({atom})");
    }
}

#[test]
fn labels_for_penguin_query() {
    check_labels(
        sample::PENGUIN_ANIMAL_QUERY,
        &[
            ("a", (1, 1), Some(0)),
            ("b", (2, 3), Some(1)),
            ("c", (4, 15), Some(2)),
            ("d", (2, 15), Some(2)),
            ("f", (2, 3), Some(1)),
            ("h", (1, 5), Some(2)),
            ("i", (1, 3), Some(1)),
            ("k", (0, 1), None),
            ("l", (1, 15), Some(2)),
            ("m", (0, 1), None),
            ("p", (1, 1), Some(0)),
            ("r", (1, 15), Some(2)),
            ("s", (2, 15), Some(2)),
            ("w", (1, 3), Some(1)),
        ],
    );
}

#[test]
fn labels_for_calm_chicken_query() {
    check_labels(
        sample::CALM_CHICKEN_QUERY,
        &[
            ("a", (1, 4), Some(1)),
            ("b", (1, 4), Some(1)),
            ("c", (1, 1), Some(0)),
            ("d", (1, 21), Some(2)),
            ("f", (1, 1), Some(0)),
            ("h", (1, 4), Some(1)),
            ("i", (1, 21), Some(2)),
            ("k", (0, 1), None),
            ("l", (4, 151), Some(3)),
            ("m", (0, 1), None),
            ("p", (1, 4), Some(1)),
            ("r", (1, 21), Some(2)),
            ("s", (1, 1), Some(0)),
            ("w", (1, 4), Some(1)),
        ],
    );
}

#[test]
fn frontier_labels_shrink_with_each_round_on_this_base() {
    for query in [sample::PENGUIN_ANIMAL_QUERY, sample::CALM_CHICKEN_QUERY] {
        let labels = label_network(&build_network(&sample::birds()), &q(query)).unwrap();
        let mut by_step: Vec<(usize, Rational)> =
            labels.iter().filter_map(|(_, v, s)| s.map(|s| (s, v.clone()))).collect();
        by_step.sort();
        for pair in by_step.windows(2) {
            if pair[0].0 < pair[1].0 {
                let max_later =
                    by_step.iter().filter(|(s, _)| *s == pair[1].0).map(|(_, v)| v).max().unwrap();
                let min_earlier =
                    by_step.iter().filter(|(s, _)| *s == pair[0].0).map(|(_, v)| v).min().unwrap();
                assert!(max_later < min_earlier, "{query}: round {} vs {}", pair[1].0, pair[0].0);
            }
        }
    }
}

#[test]
fn weighting_examples() {
    let base = sample::birds();
    let labels = label_network(&build_network(&base), &sample::penguin_animal_query()).unwrap();
    assert_eq!(weighting(&labels, base.get("r9").unwrap()).unwrap(), ratio(4, 15));
    assert_eq!(weighting(&labels, base.get("r20").unwrap()).unwrap(), int(0));
    assert_eq!(weighting(&labels, base.get("r3").unwrap()).unwrap(), ratio(2, 3));
}

#[test]
fn penguin_query_selection_and_answer() {
    let session = Session::new(sample::birds()).unwrap();
    let (_, profile) = session.activation(&sample::penguin_animal_query()).unwrap();
    let r1 = profile.get("r1").unwrap();
    assert_eq!(to_decimal_string(&r1.spreading, 2), "1.36");
    assert_eq!(to_decimal_string(&r1.total, 2), "2.36");
    let r20 = profile.get("r20").unwrap();
    assert_eq!((r20.spreading.clone(), r20.total.clone()), (int(0), int(1)));

    let selected = select(&profile, &ratio(23, 10)).unwrap();
    assert_eq!(selected, ids(&[1, 2, 3, 6]));
    assert_eq!(select(&profile, &int(0)).unwrap().len(), 20);
    assert_eq!(answer(&sub(&[1, 2, 3, 6]), &sample::penguin_animal_query()).unwrap(), QueryResponse::Yes);
}

#[test]
fn calm_chicken_selection_and_answer() {
    let session = Session::new(sample::birds()).unwrap();
    let (_, profile) = session.activation(&sample::calm_chicken_query()).unwrap();
    assert_eq!(to_decimal_string(&profile.get("r10").unwrap().total, 2), "2.94");
    assert_eq!(select(&profile, &ratio(23, 10)).unwrap(), ids(&[8, 9, 10, 11]));
    assert_eq!(answer(&sub(&[8, 9, 10, 11]), &sample::calm_chicken_query()).unwrap(), QueryResponse::No);
}

#[test]
fn engine_runs_both_queries_with_forgetting() {
    let mut session = Session::new(sample::birds()).unwrap();
    let config = EngineConfig::new(ratio(23, 10), ratio(1, 5)).unwrap();

    let (first, trace) = answer_query(&mut session, &sample::penguin_animal_query(), &config).unwrap();
    assert_eq!(first, QueryResponse::Yes);
    assert_eq!(trace.steps.len(), 1);
    assert_eq!(trace.steps[0].selected, ids(&[1, 2, 3, 6]));

    let levels = session.base_levels();
    assert_eq!(levels["r1"], ratio(6, 5));
    assert_eq!(levels["r9"], ratio(2, 5));
    assert_eq!(levels["r10"], ratio(4, 15));
    let lowest = levels.iter().min_by(|a, b| a.1.cmp(b.1)).unwrap();
    assert_eq!(lowest.0, "r10");
    assert_eq!(levels.values().filter(|v| **v == ratio(4, 15)).count(), 1);

    let (second, trace) = answer_query(&mut session, &sample::calm_chicken_query(), &config).unwrap();
    assert_eq!(second, QueryResponse::No);
    assert_eq!(trace.steps.len(), 1);
    assert_eq!(trace.steps[0].selected, ids(&[1, 2, 9, 10, 11]));
    assert!(!trace.steps[0].selected.contains(&"r8".to_string()));
    assert_eq!(session.state().query_count(), 2);
}

#[test]
fn pristine_calm_chicken_query_through_engine() {
    let mut session = Session::new(sample::birds()).unwrap();
    let config = EngineConfig::new(ratio(23, 10), ratio(1, 5)).unwrap();
    let (response, trace) = answer_query(&mut session, &sample::calm_chicken_query(), &config).unwrap();
    assert_eq!(response, QueryResponse::No);
    assert_eq!(set(&trace.steps[0].selected), set(&ids(&[8, 9, 10, 11])));
}

#[test]
fn update_matches_direct_state_arithmetic() {
    let session = Session::new(sample::birds()).unwrap();
    let next = update_state(session.state(), &ids(&[1, 2, 3, 6]), &ratio(1, 5)).unwrap();
    for (id, level) in next.base_levels() {
        let before = session.base_levels()[id].clone();
        let factor = if ["r1", "r2", "r3", "r6"].contains(&id.as_str()) { ratio(6, 5) } else { ratio(4, 5) };
        assert_eq!(level, &(before * factor), "{id}");
    }
}

#[test]
fn focused_answers_are_sound_on_a_threshold_grid() {
    let base = sample::birds();
    for query in [sample::penguin_animal_query(), sample::calm_chicken_query()] {
        let full = answer(&base, &query).unwrap();
        for step in 0..=6 {
            let theta = ratio(step, 2);
            let mut session = Session::new(base.clone()).unwrap();
            let config = EngineConfig::with_schedule(
                if step == 0 { vec![int(0)] } else { vec![theta.clone(), int(0)] },
                ratio(1, 5),
            )
            .unwrap()
            .without_forgetting();
            let (response, trace) = answer_query(&mut session, &query, &config).unwrap();
            assert!(soundness_check(&session, &query, response).unwrap());
            for st in &trace.steps {
                if st.response != QueryResponse::Unknown {
                    assert_eq!(st.response, full, "θ = {}", st.theta);
                }
            }
            assert_eq!(response, full);
        }
    }
}

#[test]
fn traces_are_deterministic() {
    let config = EngineConfig::new(ratio(23, 10), ratio(1, 5)).unwrap();
    let run = || {
        let mut s = Session::new(sample::birds()).unwrap();
        let a = answer_query(&mut s, &sample::penguin_animal_query(), &config).unwrap();
        let b = answer_query(&mut s, &sample::calm_chicken_query(), &config).unwrap();
        (a, b, s.state().clone())
    };
    assert_eq!(format!("{:?}", run()), format!("{:?}", run()));
}

// Non-zero upper-triangle entries, row by row: (column, numerator, denominator).
type AssociationRow = (u32, &'static [(u32, i64, i64)]);

#[rustfmt::skip]
const ASSOCIATIONS: &[AssociationRow] = &[
    (1, &[(2, 1, 1), (3, 1, 4), (4, 1, 4), (7, 1, 4), (9, 1, 4), (10, 1, 5), (12, 1, 4), (19, 1, 2)]),
    (2, &[(3, 1, 4), (4, 1, 4), (7, 1, 4), (9, 1, 4), (10, 1, 5), (12, 1, 4), (19, 1, 2)]),
    (3, &[(4, 1, 3), (5, 1, 3), (6, 1, 3), (8, 1, 3), (12, 1, 3)]),
    (4, &[(5, 1, 3), (6, 1, 3), (8, 1, 3), (19, 1, 4)]),
    (5, &[(6, 1, 3), (8, 1, 3), (16, 1, 3), (17, 1, 3)]),
    (6, &[(7, 1, 3), (8, 1, 3)]),
    (7, &[(9, 1, 3), (10, 1, 4), (19, 1, 4)]),
    (8, &[(9, 1, 3), (10, 1, 4), (11, 1, 3)]),
    (9, &[(10, 2, 3), (11, 1, 3), (19, 1, 4)]),
    (10, &[(11, 2, 3), (19, 1, 5)]),
    (12, &[(13, 1, 3), (14, 1, 3), (15, 1, 4)]),
    (13, &[(14, 1, 3), (15, 2, 3), (16, 1, 3), (18, 1, 3)]),
    (14, &[(15, 2, 3), (17, 1, 3)]),
    (15, &[(16, 1, 4), (17, 1, 4), (18, 1, 4)]),
    (16, &[(17, 1, 3), (18, 1, 3)]),
    (18, &[(19, 1, 4)]),
];

#[test]
fn association_table() {
    let matrix = actinf_core::AssociationMatrix::new(&sample::birds());
    let mut nonzero = 0;
    for i in 1..=20u32 {
        for j in i..=20u32 {
            let expected = if i == j {
                int(1)
            } else {
                ASSOCIATIONS
                    .iter()
                    .find(|(row, _)| *row == i)
                    .and_then(|(_, cols)| cols.iter().find(|(c, _, _)| *c == j))
                    .map_or(int(0), |(_, p, d)| ratio(*p, *d))
            };
            let (a, b) = (format!("r{i}"), format!("r{j}"));
            assert_eq!(matrix.get(&a, &b), Some(&expected), "S({a}, {b})");
            assert_eq!(matrix.get(&b, &a), Some(&expected), "S({b}, {a})");
            if i != j && expected != int(0) {
                nonzero += 1;
            }
        }
    }
    assert_eq!(nonzero, 56);
}
