//! Synthetic belief bases for the criterion benches.

use actinf_core::{BeliefBase, Conditional, Formula};

/// `n` atoms `x0..x{n-1}` linked in a chain by `(x{i+1} | x{i})`, plus an
/// exception `(!x{i+2} | x{i})` every third link so the Z-partition has
/// more than one layer.
pub fn chain_base(n: usize) -> BeliefBase {
    let atom = |i: usize| Formula::atom(&format!("x{i}"));
    let mut conditionals = Vec::new();
    for i in 0..n.saturating_sub(1) {
        conditionals.push(Conditional::new(format!("c{i}"), atom(i + 1), atom(i)));
        if i % 3 == 0 && i + 2 < n {
            conditionals.push(Conditional::new(
                format!("e{i}"),
                Formula::not(atom(i + 2)),
                Formula::and(atom(i), atom(i + 1)),
            ));
        }
    }
    BeliefBase::from_conditionals(conditionals).expect("ids are unique")
}
