//! Activation of conditionals with respect to a query.
//!
//! The activation of a conditional `r` primed by query `q` is
//!
//! ```text
//! A(r) = B(r) + Σ_{r' ∈ Δ} W(r') · S(r, r')
//! ```
//!
//! where `B` is the base level (initially `1 / (1 + Z-rank)`), `S` is the
//! degree of association (shared atoms over all atoms of both conditionals)
//! and `W` is the weighting factor, the smallest triggering value among the
//! atoms of `r'`. Triggering values come from labeling the atom network,
//! starting at the atoms of the query. All arithmetic is exact.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::inference::{BeliefBase, ZPartition};
use crate::logic::{Atom, Conditional};
use crate::rational::{to_exact_string, Rational};

/// `B(r) = 1 / (1 + Z(r))` for every conditional of the partition.
pub fn initial_base_levels(partition: &ZPartition) -> BTreeMap<String, Rational> {
    partition
        .ids()
        .map(|id| {
            let rank = partition.z_rank(id).expect("id comes from the partition");
            (id.to_string(), Rational::new(1.into(), (1 + rank).into()))
        })
        .collect()
}

/// `|Σ(r1) ∩ Σ(r2)| / |Σ(r1) ∪ Σ(r2)|`; two atom-free conditionals are
/// fully associated.
pub fn association(r1: &Conditional, r2: &Conditional) -> Rational {
    association_of(&r1.signature(), &r2.signature())
}

fn association_of(a: &BTreeSet<Atom>, b: &BTreeSet<Atom>) -> Rational {
    let union = a.union(b).count();
    if union == 0 {
        return Rational::one();
    }
    let shared = a.intersection(b).count();
    Rational::new(shared.into(), union.into())
}

/// Symmetric association values for every pair of a belief base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociationMatrix {
    ids: Vec<String>,
    values: Vec<Rational>,
}

impl AssociationMatrix {
    pub fn new(base: &BeliefBase) -> AssociationMatrix {
        let sigs: Vec<BTreeSet<Atom>> = base.conditionals().iter().map(Conditional::signature).collect();
        let n = sigs.len();
        let mut values = vec![Rational::zero(); n * n];
        for i in 0..n {
            for j in i..n {
                let v = association_of(&sigs[i], &sigs[j]);
                values[j * n + i] = v.clone();
                values[i * n + j] = v;
            }
        }
        AssociationMatrix { ids: base.ids().map(str::to_string).collect(), values }
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.values[i * self.ids.len() + j]
    }

    pub fn get(&self, a: &str, b: &str) -> Option<&Rational> {
        let i = self.ids.iter().position(|id| id == a)?;
        let j = self.ids.iter().position(|id| id == b)?;
        Some(self.at(i, j))
    }
}

/// Undirected graph on the signature's atoms; two atoms are adjacent when
/// some conditional mentions both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadingNetwork {
    vertices: Vec<Atom>,
    edges: BTreeSet<(Atom, Atom)>,
}

impl SpreadingNetwork {
    pub fn vertices(&self) -> &[Atom] {
        &self.vertices
    }

    /// Edges as `(smaller, larger)` pairs, sorted.
    pub fn edges(&self) -> &BTreeSet<(Atom, Atom)> {
        &self.edges
    }

    pub fn adjacent(&self, a: &Atom, b: &Atom) -> bool {
        let key = if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        self.edges.contains(&key)
    }

    fn neighbours(&self) -> BTreeMap<&Atom, BTreeSet<&Atom>> {
        let mut out: BTreeMap<&Atom, BTreeSet<&Atom>> =
            self.vertices.iter().map(|v| (v, BTreeSet::new())).collect();
        for (a, b) in &self.edges {
            out.entry(a).or_default().insert(b);
            out.entry(b).or_default().insert(a);
        }
        out
    }
}

pub fn build_network(base: &BeliefBase) -> SpreadingNetwork {
    let mut edges = BTreeSet::new();
    for r in base.conditionals() {
        let atoms: Vec<Atom> = r.signature().into_iter().collect();
        for (i, a) in atoms.iter().enumerate() {
            for b in &atoms[i + 1..] {
                edges.insert((a.clone(), b.clone()));
            }
        }
    }
    SpreadingNetwork { vertices: base.signature().atoms().to_vec(), edges }
}

/// When an atom received its label: `Some(0)` for the query's own atoms,
/// `None` for atoms the labeling never reached.
pub type LabelStep = Option<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriggeringLabels {
    labels: BTreeMap<Atom, (Rational, LabelStep)>,
}

impl TriggeringLabels {
    pub fn tau(&self, atom: &Atom) -> Option<&Rational> {
        self.labels.get(atom).map(|(v, _)| v)
    }

    pub fn step(&self, atom: &Atom) -> Option<LabelStep> {
        self.labels.get(atom).map(|(_, s)| *s)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, &Rational, LabelStep)> {
        self.labels.iter().map(|(a, (v, s))| (a, v, *s))
    }
}

/// Labels every atom of the network with its triggering value.
///
/// Query atoms get 1. Then, round by round, every unlabeled atom adjacent
/// to a labeled one gets the sum of its labeled neighbours' values divided
/// by one plus the sum of all values labeled so far. Every atom of a round
/// sees the labels as they stood at the start of that round. Atoms never
/// reached get 0.
pub fn label_network(network: &SpreadingNetwork, query: &Conditional) -> Result<TriggeringLabels> {
    let primed = query.signature();
    if let Some(atom) = primed.iter().find(|a| !network.vertices.contains(a)) {
        return Err(Error::SignatureMismatch { atom: atom.name().to_string() });
    }
    let neighbours = network.neighbours();
    let mut labeled: BTreeMap<&Atom, (Rational, usize)> =
        primed.iter().map(|a| (a, (Rational::one(), 0))).collect();
    let mut total: Rational = labeled.values().map(|(v, _)| v).sum();

    for step in 1.. {
        let frontier: Vec<&Atom> = network
            .vertices
            .iter()
            .filter(|a| !labeled.contains_key(a))
            .filter(|a| neighbours[a].iter().any(|b| labeled.contains_key(b)))
            .collect();
        if frontier.is_empty() {
            break;
        }
        let denominator = Rational::one() + &total;
        let fresh: Vec<(&Atom, Rational)> = frontier
            .into_iter()
            .map(|a| {
                let sum: Rational = neighbours[a].iter().filter_map(|b| labeled.get(b).map(|(v, _)| v)).sum();
                (a, sum / &denominator)
            })
            .collect();
        for (atom, value) in fresh {
            total += &value;
            labeled.insert(atom, (value, step));
        }
    }

    let labels = network
        .vertices
        .iter()
        .map(|a| {
            let entry = match labeled.get(a) {
                Some((v, s)) => (v.clone(), Some(*s)),
                None => (Rational::zero(), None),
            };
            (a.clone(), entry)
        })
        .collect();
    Ok(TriggeringLabels { labels })
}

/// Smallest triggering value among the conditional's atoms; 1 when the
/// conditional mentions no atom at all.
pub fn weighting(labels: &TriggeringLabels, r: &Conditional) -> Result<Rational> {
    let mut min: Option<&Rational> = None;
    for atom in r.signature() {
        let tau =
            labels.tau(&atom).ok_or_else(|| Error::SignatureMismatch { atom: atom.name().to_string() })?;
        min = Some(match min {
            Some(m) if m <= tau => m,
            _ => tau,
        });
    }
    Ok(min.cloned().unwrap_or_else(Rational::one))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActivationRow {
    pub id: String,
    pub base_level: Rational,
    pub weighting: Rational,
    pub spreading: Rational,
    pub total: Rational,
}

/// Activation of every conditional, in belief-base order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActivationProfile {
    pub rows: Vec<ActivationRow>,
}

impl ActivationProfile {
    pub fn get(&self, id: &str) -> Option<&ActivationRow> {
        self.rows.iter().find(|r| r.id == id)
    }
}

pub fn activation_profile(
    base: &BeliefBase,
    base_levels: &BTreeMap<String, Rational>,
    associations: &AssociationMatrix,
    labels: &TriggeringLabels,
) -> Result<ActivationProfile> {
    let ids: Vec<&str> = base.ids().collect();
    if associations.ids.iter().map(String::as_str).ne(ids.iter().copied()) {
        return Err(Error::IdSetMismatch("association matrix was built for a different belief base".into()));
    }
    if base_levels.len() != ids.len() || ids.iter().any(|id| !base_levels.contains_key(*id)) {
        return Err(Error::IdSetMismatch("base levels do not cover exactly the belief base".into()));
    }
    let weights: Vec<Rational> =
        base.conditionals().iter().map(|r| weighting(labels, r)).collect::<Result<_>>()?;
    let rows = ids
        .iter()
        .enumerate()
        .map(|(i, id)| {
            let spreading: Rational =
                weights.iter().enumerate().map(|(j, w)| w * associations.at(i, j)).sum();
            let base_level = base_levels[*id].clone();
            ActivationRow {
                id: id.to_string(),
                total: &base_level + &spreading,
                base_level,
                weighting: weights[i].clone(),
                spreading,
            }
        })
        .collect();
    Ok(ActivationProfile { rows })
}

/// Ids whose total activation reaches `theta`, in base order.
pub fn select(profile: &ActivationProfile, theta: &Rational) -> Result<Vec<String>> {
    if theta.is_negative() {
        return Err(Error::NegativeThreshold(to_exact_string(theta)));
    }
    Ok(profile.rows.iter().filter(|r| r.total >= *theta).map(|r| r.id.clone()).collect())
}
