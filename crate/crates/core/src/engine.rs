//! Query answering over a session.
//!
//! A query primes the network once; the resulting activation profile is
//! then cut at each threshold of a descending schedule until the selected
//! conditionals decide the query or the threshold reaches zero, at which
//! point the whole belief base is used. The selection of the last step
//! feeds the forgetting update.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::activation::{
    activation_profile, build_network, initial_base_levels, label_network, select, ActivationProfile,
    AssociationMatrix, SpreadingNetwork, TriggeringLabels,
};
use crate::error::{Error, Result};
use crate::inference::{answer_unchecked, z_partition, BeliefBase, QueryResponse, ZPartition};
use crate::logic::Conditional;
use crate::memory::{check_delta, update_state, ActivationState};
use crate::rational::{ratio, to_exact_string, Rational};

/// Query-independent data for one belief base, shared read-only between
/// sessions.
#[derive(Debug)]
pub struct KnowledgeBase {
    base: BeliefBase,
    partition: ZPartition,
    network: SpreadingNetwork,
    associations: AssociationMatrix,
}

impl KnowledgeBase {
    /// Fails with [`Error::Inconsistent`] for an inconsistent base.
    pub fn new(base: BeliefBase) -> Result<KnowledgeBase> {
        let partition = z_partition(&base)?;
        Ok(KnowledgeBase {
            network: build_network(&base),
            associations: AssociationMatrix::new(&base),
            partition,
            base,
        })
    }

    pub fn base(&self) -> &BeliefBase {
        &self.base
    }

    pub fn partition(&self) -> &ZPartition {
        &self.partition
    }

    pub fn network(&self) -> &SpreadingNetwork {
        &self.network
    }

    pub fn associations(&self) -> &AssociationMatrix {
        &self.associations
    }

    pub fn initial_state(&self) -> ActivationState {
        ActivationState::new(initial_base_levels(&self.partition)).expect("initial levels are positive")
    }
}

/// A belief base together with its evolving usage history.
#[derive(Debug, Clone)]
pub struct Session {
    knowledge: Arc<KnowledgeBase>,
    state: ActivationState,
}

impl Session {
    pub fn new(base: BeliefBase) -> Result<Session> {
        Ok(Session::fresh(Arc::new(KnowledgeBase::new(base)?)))
    }

    pub fn fresh(knowledge: Arc<KnowledgeBase>) -> Session {
        let state = knowledge.initial_state();
        Session { knowledge, state }
    }

    /// Resumes a stored history; its ids must match the base exactly.
    pub fn with_state(knowledge: Arc<KnowledgeBase>, state: ActivationState) -> Result<Session> {
        state.check_ids(&knowledge.base)?;
        Ok(Session { knowledge, state })
    }

    /// Discards a stored history whose ids no longer match the base,
    /// recording the reset in the state.
    pub fn reset_from(knowledge: Arc<KnowledgeBase>, previous: &ActivationState) -> Session {
        let state = previous
            .reset_to(initial_base_levels(&knowledge.partition))
            .expect("initial levels are positive");
        Session { knowledge, state }
    }

    pub fn knowledge(&self) -> &Arc<KnowledgeBase> {
        &self.knowledge
    }

    pub fn base(&self) -> &BeliefBase {
        &self.knowledge.base
    }

    pub fn state(&self) -> &ActivationState {
        &self.state
    }

    pub fn base_levels(&self) -> &BTreeMap<String, Rational> {
        self.state.base_levels()
    }

    /// Labels and activation profile for `query` under the current history.
    pub fn activation(&self, query: &Conditional) -> Result<(TriggeringLabels, ActivationProfile)> {
        self.base().signature().check_covers(&query.signature())?;
        let labels = label_network(&self.knowledge.network, query)?;
        let profile = activation_profile(
            &self.knowledge.base,
            self.state.base_levels(),
            &self.knowledge.associations,
            &labels,
        )?;
        Ok((labels, profile))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineConfig {
    schedule: Vec<Rational>,
    pub delta: Rational,
    pub forgetting_enabled: bool,
}

impl EngineConfig {
    /// Threshold `theta`, lowered in steps of 1/2 down to 0 on `unknown`.
    pub fn new(theta: Rational, delta: Rational) -> Result<EngineConfig> {
        EngineConfig::with_schedule(default_schedule(&theta, &ratio(1, 2))?, delta)
    }

    /// The schedule must be strictly decreasing and end at 0.
    pub fn with_schedule(schedule: Vec<Rational>, delta: Rational) -> Result<EngineConfig> {
        check_delta(&delta)?;
        if let Some(neg) = schedule.iter().find(|t| t.is_negative()) {
            return Err(Error::NegativeThreshold(to_exact_string(neg)));
        }
        if !schedule.last().is_some_and(Zero::is_zero) {
            return Err(Error::InvalidSchedule("the last threshold must be 0".into()));
        }
        if schedule.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidSchedule("thresholds must strictly decrease".into()));
        }
        Ok(EngineConfig { schedule, delta, forgetting_enabled: true })
    }

    pub fn without_forgetting(mut self) -> EngineConfig {
        self.forgetting_enabled = false;
        self
    }

    pub fn theta(&self) -> &Rational {
        &self.schedule[0]
    }

    pub fn schedule(&self) -> &[Rational] {
        &self.schedule
    }
}

/// `theta, theta - step, theta - 2·step, …` while positive, then 0.
pub fn default_schedule(theta: &Rational, step: &Rational) -> Result<Vec<Rational>> {
    if theta.is_negative() {
        return Err(Error::NegativeThreshold(to_exact_string(theta)));
    }
    if !step.is_positive() {
        return Err(Error::InvalidSchedule("step must be positive".into()));
    }
    let mut out = Vec::new();
    let mut t = theta.clone();
    while t.is_positive() {
        out.push(t.clone());
        t -= step;
    }
    out.push(Rational::zero());
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub theta: Rational,
    pub selected: Vec<String>,
    pub response: QueryResponse,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryTrace {
    pub query: Conditional,
    pub steps: Vec<StepRecord>,
    pub labels: TriggeringLabels,
    pub profile: ActivationProfile,
    pub response: QueryResponse,
    /// Selection applied to the usage history; `None` when forgetting is off.
    pub memory_selection: Option<Vec<String>>,
}

pub fn answer_query(
    session: &mut Session,
    query: &Conditional,
    config: &EngineConfig,
) -> Result<(QueryResponse, QueryTrace)> {
    let (labels, profile) = session.activation(query)?;
    let mut steps: Vec<StepRecord> = Vec::new();
    for theta in &config.schedule {
        let selected = select(&profile, theta)?;
        let response = match steps.last() {
            Some(prev) if prev.selected == selected => prev.response,
            _ => {
                // subsets of a consistent base are consistent
                let focus = session.base().subset(&selected)?;
                answer_unchecked(&focus, query)?
            }
        };
        steps.push(StepRecord { theta: theta.clone(), selected, response });
        if response != QueryResponse::Unknown {
            break;
        }
    }
    let last = steps.last().expect("schedule is non-empty");
    let response = last.response;
    let memory_selection = if config.forgetting_enabled {
        session.state = update_state(&session.state, &last.selected, &config.delta)?;
        Some(last.selected.clone())
    } else {
        None
    };
    Ok((response, QueryTrace { query: query.clone(), steps, labels, profile, response, memory_selection }))
}

/// Whether a focused response agrees with the whole belief base; `unknown`
/// is always sound.
pub fn soundness_check(session: &Session, query: &Conditional, response: QueryResponse) -> Result<bool> {
    if response == QueryResponse::Unknown {
        return Ok(true);
    }
    Ok(answer_unchecked(session.base(), query)? == response)
}
