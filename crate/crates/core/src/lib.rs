//! Activation-based focused inference over conditional belief bases.
//!
//! A query `(B|A)` primes a network of atoms; the resulting activation picks
//! the conditionals worth reasoning with, System P answers the query on that
//! subset, and the usage history of each conditional is updated so that
//! unused knowledge slowly fades.
//!
//! ```
//! use actinf_core::{answer_query, parse_belief_base, parse_conditional, ratio, EngineConfig, Session};
//!
//! let doc = parse_belief_base("(f | b)\n(!f | p)\n(b | p)\n").unwrap();
//! let mut session = Session::new(doc.to_belief_base().unwrap()).unwrap();
//! let config = EngineConfig::new(ratio(3, 2), ratio(1, 5)).unwrap();
//! let (response, _trace) =
//!     answer_query(&mut session, &parse_conditional("(!f | p && b)").unwrap(), &config).unwrap();
//! assert_eq!(response.to_string(), "yes");
//! ```

pub mod activation;
pub mod document;
pub mod engine;
pub mod error;
pub mod inference;
pub mod logic;
pub mod memory;
pub mod ranking;
pub mod rational;
pub mod sample;
pub mod syntax;

pub use activation::{
    activation_profile, association, build_network, initial_base_levels, label_network, select, weighting,
    ActivationProfile, ActivationRow, AssociationMatrix, LabelStep, SpreadingNetwork, TriggeringLabels,
};
pub use document::{
    parse_belief_base, parse_session, parse_session_for, render_belief_base, serialize_session,
    BeliefBaseDocument,
};
pub use engine::{
    answer_query, default_schedule, soundness_check, EngineConfig, KnowledgeBase, QueryTrace, Session,
    StepRecord,
};
pub use error::{Error, Result};
pub use inference::{
    answer, direct_focus, is_consistent, iterated_focus, system_p_infers, tolerates, z_partition, z_rank,
    BeliefBase, QueryResponse, ZPartition,
};
pub use logic::{
    enumerate_worlds, enumerate_worlds_capped, evaluate, falsifies, verifies, Atom, Conditional, Formula,
    Signature, World, WorldSpace, DEFAULT_WORLD_CAP,
};
pub use memory::{forgetting_factor, update_state, ActivationState};
pub use ranking::{accepts, rank_of_formula, Rank, RankingFunction};
pub use rational::{parse_rational, ratio, Rational};
pub use syntax::{parse_conditional, parse_conditional_with, parse_formula};
