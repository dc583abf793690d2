//! Ordinal conditional functions.
//!
//! Not used by the reasoning pipeline itself. The inference module decides
//! consistency through tolerance; this module provides the model-theoretic
//! definition so tests can check one against the other.

use std::fmt;

use crate::error::{Error, Result};
use crate::logic::{Conditional, Formula, Signature, WorldSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rank {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(n) => write!(f, "{n}"),
            Rank::Infinite => f.write_str("∞"),
        }
    }
}

/// Ranks for every world of a signature, indexed like [`WorldSpace`].
#[derive(Debug, Clone)]
pub struct RankingFunction {
    space: WorldSpace,
    ranks: Vec<Rank>,
}

impl RankingFunction {
    /// Fails unless there is one rank per world and some world has rank 0.
    pub fn new(signature: &Signature, ranks: Vec<Rank>) -> Result<RankingFunction> {
        let space = WorldSpace::new(signature)?;
        if ranks.len() as u64 != space.world_count() {
            return Err(Error::InvalidState(format!(
                "ranking function needs {} ranks, got {}",
                space.world_count(),
                ranks.len()
            )));
        }
        if !ranks.contains(&Rank::Finite(0)) {
            return Err(Error::InvalidState("ranking function is not normalized".into()));
        }
        Ok(RankingFunction { space, ranks })
    }

    pub fn uniform(signature: &Signature) -> Result<RankingFunction> {
        let n = WorldSpace::new(signature)?.world_count() as usize;
        RankingFunction::new(signature, vec![Rank::Finite(0); n])
    }

    pub fn ranks(&self) -> &[Rank] {
        &self.ranks
    }

    pub fn signature(&self) -> &Signature {
        self.space.signature()
    }

    /// Adds `offset` to every finite rank. The result is not normalized.
    pub fn shifted_ranks(&self, offset: u32) -> Vec<Rank> {
        self.ranks
            .iter()
            .map(|r| match r {
                Rank::Finite(n) => Rank::Finite(n + offset),
                Rank::Infinite => Rank::Infinite,
            })
            .collect()
    }
}

fn min_rank(ranks: &[Rank], space: &WorldSpace, formula: &Formula) -> Result<Rank> {
    let models = space.models(formula)?;
    Ok((0..space.world_count())
        .filter(|w| models.contains(*w))
        .map(|w| ranks[w as usize])
        .min()
        .unwrap_or(Rank::Infinite))
}

/// Minimum rank over the models of `formula`; infinite if it has none.
pub fn rank_of_formula(kappa: &RankingFunction, formula: &Formula) -> Result<Rank> {
    min_rank(&kappa.ranks, &kappa.space, formula)
}

pub fn accepts(kappa: &RankingFunction, conditional: &Conditional) -> Result<bool> {
    accepts_ranks(&kappa.ranks, &kappa.space, conditional)
}

/// Acceptance over a raw rank vector; works for unnormalized vectors too.
pub fn accepts_ranks(ranks: &[Rank], space: &WorldSpace, conditional: &Conditional) -> Result<bool> {
    let a = &conditional.antecedent;
    let b = &conditional.consequent;
    if min_rank(ranks, space, a)? == Rank::Infinite {
        return Ok(true);
    }
    let verified = min_rank(ranks, space, &Formula::and(a.clone(), b.clone()))?;
    let falsified = min_rank(ranks, space, &Formula::and(a.clone(), b.negated()))?;
    Ok(verified < falsified)
}
