//! The birds-and-fish belief base used throughout the tests, benches and
//! README: 20 conditionals over 14 atoms.

use crate::inference::BeliefBase;
use crate::logic::Conditional;

pub const BIRDS_KB: &str = include_str!("../data/birds.kb");

/// "Are penguins animals?"
pub const PENGUIN_ANIMAL_QUERY: &str = "(p => a | true)";

/// "Do unscared chickens fly?"
pub const CALM_CHICKEN_QUERY: &str = "(f | c && !s)";

pub fn birds() -> BeliefBase {
    crate::document::parse_belief_base(BIRDS_KB)
        .and_then(|doc| doc.to_belief_base())
        .expect("bundled belief base parses")
}

pub fn penguin_animal_query() -> Conditional {
    crate::syntax::parse_conditional(PENGUIN_ANIMAL_QUERY).expect("query parses")
}

pub fn calm_chicken_query() -> Conditional {
    crate::syntax::parse_conditional(CALM_CHICKEN_QUERY).expect("query parses")
}
