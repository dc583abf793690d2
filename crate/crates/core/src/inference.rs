//! Tolerance, Z-partitions and skeptical (System P) inference.
//!
//! Everything here works on exhaustive world enumeration through
//! [`WorldSpace`] bitsets; a belief base over 14 atoms costs 256 machine
//! words per formula.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::logic::{Atom, Conditional, ConditionalModels, Signature, World, WorldSpace};

/// An ordered set of conditionals with unique ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeliefBase {
    signature: Signature,
    conditionals: Vec<Conditional>,
}

impl BeliefBase {
    /// Fails on duplicate ids or on atoms outside `signature`.
    pub fn new(signature: Signature, conditionals: Vec<Conditional>) -> Result<BeliefBase> {
        let mut ids = BTreeSet::new();
        for r in &conditionals {
            if !ids.insert(r.id.as_str()) {
                return Err(Error::DuplicateConditional(r.id.clone()));
            }
            signature.check_covers(&r.signature())?;
        }
        Ok(BeliefBase { signature, conditionals })
    }

    /// Signature inferred from the atoms in order of first mention.
    pub fn from_conditionals(conditionals: Vec<Conditional>) -> Result<BeliefBase> {
        let mut atoms = Vec::new();
        for r in &conditionals {
            r.consequent.atoms_in_order(&mut atoms);
            r.antecedent.atoms_in_order(&mut atoms);
        }
        BeliefBase::new(Signature::new(atoms)?, conditionals)
    }

    pub fn empty() -> BeliefBase {
        BeliefBase { signature: Signature::empty(), conditionals: Vec::new() }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn conditionals(&self) -> &[Conditional] {
        &self.conditionals
    }

    pub fn len(&self) -> usize {
        self.conditionals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conditionals.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.conditionals.iter().map(|r| r.id.as_str())
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.conditionals.iter().position(|r| r.id == id)
    }

    pub fn get(&self, id: &str) -> Option<&Conditional> {
        self.conditionals.iter().find(|r| r.id == id)
    }

    /// Atoms mentioned by some conditional.
    pub fn mentioned_atoms(&self) -> BTreeSet<Atom> {
        self.conditionals.iter().flat_map(Conditional::signature).collect()
    }

    /// The listed conditionals, kept in base order, over the same signature.
    pub fn subset<S: AsRef<str>>(&self, ids: &[S]) -> Result<BeliefBase> {
        let wanted: BTreeSet<&str> = ids.iter().map(AsRef::as_ref).collect();
        if let Some(missing) = wanted.iter().find(|id| self.get(id).is_none()) {
            return Err(Error::UnknownId(missing.to_string()));
        }
        Ok(BeliefBase {
            signature: self.signature.clone(),
            conditionals: self
                .conditionals
                .iter()
                .filter(|r| wanted.contains(r.id.as_str()))
                .cloned()
                .collect(),
        })
    }

    /// This base plus `extra`, extending the signature if needed.
    pub fn with(&self, extra: Conditional) -> Result<BeliefBase> {
        let signature = self.signature.extended(extra.signature().iter());
        let mut conditionals = self.conditionals.clone();
        conditionals.push(extra);
        BeliefBase::new(signature, conditionals)
    }
}

/// Ordered tolerance partition; ids inside each layer keep base order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZPartition {
    pub layers: Vec<Vec<String>>,
    /// Conditionals whose antecedent has no model.
    pub vacuous: Vec<String>,
}

impl ZPartition {
    /// Layer index; vacuous conditionals get rank 0.
    pub fn z_rank(&self, id: &str) -> Result<usize> {
        if self.vacuous.iter().any(|v| v == id) {
            return Ok(0);
        }
        self.layers
            .iter()
            .position(|layer| layer.iter().any(|v| v == id))
            .ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.layers.iter().flatten().chain(&self.vacuous).map(String::as_str)
    }
}

pub fn z_rank(partition: &ZPartition, id: &str) -> Result<usize> {
    partition.z_rank(id)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QueryResponse {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for QueryResponse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QueryResponse::Yes => "yes",
            QueryResponse::No => "no",
            QueryResponse::Unknown => "unknown",
        })
    }
}

fn all_models(space: &WorldSpace, conditionals: &[Conditional]) -> Result<Vec<ConditionalModels>> {
    conditionals.iter().map(|r| space.conditional_models(r)).collect()
}

enum Partition {
    Layers { layers: Vec<Vec<usize>>, vacuous: Vec<usize> },
    Stuck(Vec<usize>),
}

/// Greedy maximal-layer construction over precomputed model sets.
fn partition(space: &WorldSpace, models: &[ConditionalModels]) -> Partition {
    let (mut remaining, vacuous): (Vec<usize>, Vec<usize>) =
        (0..models.len()).partition(|&i| models[i].applicable());
    let mut layers = Vec::new();
    while !remaining.is_empty() {
        let mut falsified = space.none();
        for &i in &remaining {
            falsified.or_assign(&models[i].falsifying);
        }
        let (layer, rest): (Vec<usize>, Vec<usize>) =
            remaining.iter().partition(|&&i| !models[i].verifying.and_not(&falsified).is_empty());
        if layer.is_empty() {
            return Partition::Stuck(rest);
        }
        layers.push(layer);
        remaining = rest;
    }
    Partition::Layers { layers, vacuous }
}

fn ids_of(base: &BeliefBase, indices: &[usize]) -> Vec<String> {
    indices.iter().map(|&i| base.conditionals[i].id.clone()).collect()
}

/// First world (in enumeration order) verifying `r` and falsifying nothing
/// in `base`.
pub fn tolerates(base: &BeliefBase, r: &Conditional) -> Result<Option<World>> {
    let signature = base.signature.extended(r.signature().iter());
    let space = WorldSpace::new(&signature)?;
    let mut falsified = space.none();
    for m in all_models(&space, &base.conditionals)? {
        falsified.or_assign(&m.falsifying);
    }
    let target = space.conditional_models(r)?;
    Ok(target.verifying.and_not(&falsified).first().map(|w| space.world(w)))
}

/// The Z-partition, or [`Error::Inconsistent`] carrying the ids of the
/// remainder in which no conditional is tolerated.
pub fn z_partition(base: &BeliefBase) -> Result<ZPartition> {
    let space = WorldSpace::new(&base.signature)?;
    let models = all_models(&space, &base.conditionals)?;
    match partition(&space, &models) {
        Partition::Layers { layers, vacuous } => Ok(ZPartition {
            layers: layers.iter().map(|l| ids_of(base, l)).collect(),
            vacuous: ids_of(base, &vacuous),
        }),
        Partition::Stuck(rest) => Err(Error::Inconsistent { remainder: ids_of(base, &rest) }),
    }
}

pub fn is_consistent(base: &BeliefBase) -> Result<bool> {
    match z_partition(base) {
        Ok(_) => Ok(true),
        Err(Error::Inconsistent { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

fn require_consistent(base: &BeliefBase) -> Result<()> {
    z_partition(base).map(|_| ())
}

/// `Δ ∪ {(¬B|A)}` is inconsistent. A query with an unsatisfiable antecedent
/// is accepted by every ranking function, so it is always entailed.
fn entails(base: &BeliefBase, query: &Conditional) -> Result<bool> {
    let signature = base.signature.extended(query.signature().iter());
    let space = WorldSpace::new(&signature)?;
    if !space.is_satisfiable(&query.antecedent)? {
        return Ok(true);
    }
    let mut models = all_models(&space, &base.conditionals)?;
    models.push(space.conditional_models(&query.negated("¬q"))?);
    Ok(matches!(partition(&space, &models), Partition::Stuck(_)))
}

/// System P entailment of `query` from a consistent `base`.
pub fn system_p_infers(base: &BeliefBase, query: &Conditional) -> Result<bool> {
    require_consistent(base)?;
    entails(base, query)
}

/// Three-valued response: `yes` if `(B|A)` follows, `no` if `(¬B|A)` does.
pub fn answer(base: &BeliefBase, query: &Conditional) -> Result<QueryResponse> {
    require_consistent(base)?;
    answer_unchecked(base, query)
}

/// [`answer`] without re-checking consistency of `base`; callers must know
/// the base (or a superset of it) is consistent.
pub(crate) fn answer_unchecked(base: &BeliefBase, query: &Conditional) -> Result<QueryResponse> {
    if entails(base, query)? {
        Ok(QueryResponse::Yes)
    } else if entails(base, &query.negated(query.id.clone()))? {
        Ok(QueryResponse::No)
    } else {
        Ok(QueryResponse::Unknown)
    }
}

/// Conditionals sharing at least one atom with the query, in base order.
pub fn direct_focus(base: &BeliefBase, query: &Conditional) -> Vec<String> {
    let atoms = query.signature();
    base.conditionals.iter().filter(|r| !r.signature().is_disjoint(&atoms)).map(|r| r.id.clone()).collect()
}

/// The `i`-th focus: the direct focus, grown `i` times by every conditional
/// sharing an atom with some conditional already in focus.
///
/// That is `φᵢ = {r ∈ Δ | ∃ r' ∈ φᵢ₋₁: Σ(r) ∩ Σ(r') ≠ ∅}`. Testing against
/// `Σ(q)` at every step instead would never grow past the direct focus.
pub fn iterated_focus(base: &BeliefBase, query: &Conditional, depth: usize) -> Vec<String> {
    let sigs: Vec<BTreeSet<Atom>> = base.conditionals.iter().map(Conditional::signature).collect();
    let q = query.signature();
    let mut inside: Vec<bool> = sigs.iter().map(|s| !s.is_disjoint(&q)).collect();
    for _ in 0..depth {
        let reached: BTreeSet<&Atom> =
            sigs.iter().zip(&inside).filter(|(_, &yes)| yes).flat_map(|(s, _)| s.iter()).collect();
        let next: Vec<bool> =
            sigs.iter().zip(&inside).map(|(s, &yes)| yes || s.iter().any(|a| reached.contains(a))).collect();
        if next == inside {
            break;
        }
        inside = next;
    }
    base.conditionals.iter().zip(inside).filter(|(_, yes)| *yes).map(|(r, _)| r.id.clone()).collect()
}
