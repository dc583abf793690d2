#![allow(dead_code)]

use actinf_core::{enumerate_worlds, evaluate, BeliefBase, Conditional, Formula, Signature};
use proptest::prelude::*;

pub const NAMES: [&str; 4] = ["a", "b", "c", "d"];

pub fn signature(n: usize) -> Signature {
    Signature::new(NAMES[..n].iter().copied()).unwrap()
}

pub fn formula(atoms: &'static [&'static str]) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        1 => Just(Formula::True),
        1 => Just(Formula::False),
        6 => prop::sample::select(atoms).prop_map(Formula::atom),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::implies(a, b)),
        ]
    })
}

pub fn pair(atoms: &'static [&'static str]) -> impl Strategy<Value = (Formula, Formula)> {
    (formula(atoms), formula(atoms))
}

pub fn conditional(atoms: &'static [&'static str]) -> impl Strategy<Value = Conditional> {
    pair(atoms).prop_map(|(b, a)| Conditional::new("q", b, a))
}

pub fn base_of(sig: &Signature, pairs: Vec<(Formula, Formula)>) -> BeliefBase {
    let conditionals = pairs
        .into_iter()
        .enumerate()
        .map(|(i, (b, a))| Conditional::new(format!("r{}", i + 1), b, a))
        .collect();
    BeliefBase::new(sig.clone(), conditionals).unwrap()
}

/// Random base over the first `n` atoms with up to `max` conditionals.
pub fn base(n: usize, max: usize) -> impl Strategy<Value = BeliefBase> {
    prop::collection::vec(pair(&NAMES[..n]), 0..=max).prop_map(move |pairs| base_of(&signature(n), pairs))
}

/// Per-world truth of verification and falsification, computed pointwise.
pub struct Table {
    pub verify: Vec<bool>,
    pub falsify: Vec<bool>,
}

pub fn table(sig: &Signature, r: &Conditional) -> Table {
    let worlds = enumerate_worlds(sig).unwrap();
    let mut t = Table { verify: vec![], falsify: vec![] };
    for w in &worlds {
        let a = evaluate(&r.antecedent, w).unwrap();
        let b = evaluate(&r.consequent, w).unwrap();
        t.verify.push(a && b);
        t.falsify.push(a && !b);
    }
    t
}

/// Acceptance of a conditional by a rank vector; `None` is infinite rank.
pub fn accepts(ranks: &[u32], t: &Table) -> bool {
    let best = |mask: &[bool]| mask.iter().zip(ranks).filter(|(m, _)| **m).map(|(_, r)| *r).min();
    match (best(&t.verify), best(&t.falsify)) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(v), Some(f)) => v < f,
    }
}

/// Calls `visit` with every rank vector over `worlds` entries with ranks in `0..=max`.
pub fn each_ranking(worlds: usize, max: u32, mut visit: impl FnMut(&[u32]) -> bool) {
    let mut ranks = vec![0u32; worlds];
    loop {
        if !visit(&ranks) {
            return;
        }
        let mut i = 0;
        loop {
            if i == worlds {
                return;
            }
            ranks[i] += 1;
            if ranks[i] <= max {
                break;
            }
            ranks[i] = 0;
            i += 1;
        }
    }
}

/// Tolerance by plain world search, independent of the library's bitsets.
pub fn tolerated_by(sig: &Signature, r: &Conditional, others: &[&Conditional]) -> bool {
    let tr = table(sig, r);
    let tables: Vec<Table> = others.iter().map(|o| table(sig, o)).collect();
    (0..tr.verify.len()).any(|w| tr.verify[w] && tables.iter().all(|t| !t.falsify[w]))
}

/// Longest consistent prefix of a base.
pub fn consistent_prefix(base: &BeliefBase) -> BeliefBase {
    let ids: Vec<String> = base.ids().map(str::to_string).collect();
    (0..=ids.len())
        .rev()
        .map(|k| base.subset(&ids[..k]).unwrap())
        .find(|b| actinf_core::is_consistent(b).unwrap())
        .unwrap()
}
