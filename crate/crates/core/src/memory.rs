//! Usage history: base levels rise for conditionals that were used to
//! answer a query and decay for the rest.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::inference::BeliefBase;
use crate::rational::{to_exact_string, Rational};

/// Per-conditional base-level activation carried across queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActivationState {
    base_levels: BTreeMap<String, Rational>,
    query_count: u64,
    resets: u64,
}

impl ActivationState {
    /// All levels must be strictly positive.
    pub fn new(base_levels: BTreeMap<String, Rational>) -> Result<ActivationState> {
        ActivationState::restore(base_levels, 0, 0)
    }

    pub fn restore(
        base_levels: BTreeMap<String, Rational>,
        query_count: u64,
        resets: u64,
    ) -> Result<ActivationState> {
        if let Some((id, level)) = base_levels.iter().find(|(_, v)| !v.is_positive()) {
            return Err(Error::InvalidState(format!(
                "base level of `{id}` must be positive, got {}",
                to_exact_string(level)
            )));
        }
        Ok(ActivationState { base_levels, query_count, resets })
    }

    pub fn base_levels(&self) -> &BTreeMap<String, Rational> {
        &self.base_levels
    }

    pub fn base_level(&self, id: &str) -> Option<&Rational> {
        self.base_levels.get(id)
    }

    pub fn query_count(&self) -> u64 {
        self.query_count
    }

    /// How many times the history was discarded because the belief base
    /// changed.
    pub fn resets(&self) -> u64 {
        self.resets
    }

    /// Replaces every level, keeping the query counter and recording a reset.
    pub fn reset_to(&self, base_levels: BTreeMap<String, Rational>) -> Result<ActivationState> {
        ActivationState::restore(base_levels, self.query_count, self.resets + 1)
    }

    /// Fails unless this state covers exactly the ids of `base`.
    pub fn check_ids(&self, base: &BeliefBase) -> Result<()> {
        let ours: BTreeSet<&str> = self.base_levels.keys().map(String::as_str).collect();
        let theirs: BTreeSet<&str> = base.ids().collect();
        if ours == theirs {
            return Ok(());
        }
        let missing: Vec<&str> = theirs.difference(&ours).copied().collect();
        let extra: Vec<&str> = ours.difference(&theirs).copied().collect();
        Err(Error::IdSetMismatch(format!(
            "missing from session: [{}]; unknown to belief base: [{}]",
            missing.join(", "),
            extra.join(", ")
        )))
    }
}

/// `1 + delta` for selected conditionals, `1 - delta` otherwise.
pub fn forgetting_factor(delta: &Rational, selected: bool) -> Result<Rational> {
    check_delta(delta)?;
    Ok(if selected { Rational::one() + delta } else { Rational::one() - delta })
}

pub(crate) fn check_delta(delta: &Rational) -> Result<()> {
    if delta.is_negative() || *delta >= Rational::one() {
        return Err(Error::DeltaOutOfRange(to_exact_string(delta)));
    }
    Ok(())
}

/// Multiplies each base level by its forgetting factor and counts the query.
pub fn update_state<S: AsRef<str>>(
    state: &ActivationState,
    selection: &[S],
    delta: &Rational,
) -> Result<ActivationState> {
    check_delta(delta)?;
    let selected: BTreeSet<&str> = selection.iter().map(AsRef::as_ref).collect();
    if let Some(unknown) = selected.iter().find(|id| !state.base_levels.contains_key(**id)) {
        return Err(Error::UnknownId(unknown.to_string()));
    }
    let up = forgetting_factor(delta, true)?;
    let down = forgetting_factor(delta, false)?;
    let base_levels = state
        .base_levels
        .iter()
        .map(|(id, level)| {
            let factor = if selected.contains(id.as_str()) { &up } else { &down };
            (id.clone(), level * factor)
        })
        .collect();
    Ok(ActivationState { base_levels, query_count: state.query_count + 1, resets: state.resets })
}
