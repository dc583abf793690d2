//! Propositional formulas, possible worlds and conditionals.
//!
//! Worlds over a signature of `n` atoms are numbered `0..2^n`; bit `i` of the
//! number is the truth value of the `i`-th declared atom. All set-of-worlds
//! computations go through [`ModelSet`], a bitset indexed by that number.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest signature for which worlds are enumerated unless a caller asks
/// for a different cap.
pub const DEFAULT_WORLD_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(String);

impl Atom {
    pub fn new(name: impl Into<String>) -> Atom {
        let name = name.into();
        assert!(!name.is_empty(), "atom names are non-empty");
        Atom(name)
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Atom {
    fn from(name: &str) -> Atom {
        Atom::new(name)
    }
}

/// Ordered set of atoms; iteration follows declaration order.
#[derive(Clone)]
pub struct Signature {
    atoms: Arc<Vec<Atom>>,
    index: Arc<HashMap<Atom, usize>>,
}

impl Signature {
    pub fn new<I, A>(atoms: I) -> Result<Signature>
    where
        I: IntoIterator<Item = A>,
        A: Into<Atom>,
    {
        let mut list = Vec::new();
        let mut index = HashMap::new();
        for atom in atoms {
            let atom = atom.into();
            if index.insert(atom.clone(), list.len()).is_some() {
                return Err(Error::DuplicateAtom(atom.0));
            }
            list.push(atom);
        }
        Ok(Signature { atoms: Arc::new(list), index: Arc::new(index) })
    }

    pub fn empty() -> Signature {
        Signature::new(Vec::<Atom>::new()).expect("empty signature")
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn index_of(&self, atom: &Atom) -> Option<usize> {
        self.index.get(atom).copied()
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.index.contains_key(atom)
    }

    /// This signature followed by every atom of `extra` not yet present.
    pub fn extended<'a, I>(&self, extra: I) -> Signature
    where
        I: IntoIterator<Item = &'a Atom>,
    {
        let mut atoms: Vec<Atom> = self.atoms.to_vec();
        let mut seen: BTreeSet<&Atom> = self.atoms.iter().collect();
        let mut added = Vec::new();
        for atom in extra {
            if seen.insert(atom) {
                added.push(atom.clone());
            }
        }
        if added.is_empty() {
            return self.clone();
        }
        atoms.extend(added);
        Signature::new(atoms).expect("atoms are distinct")
    }

    pub fn check_covers(&self, atoms: &BTreeSet<Atom>) -> Result<()> {
        match atoms.iter().find(|a| !self.contains(a)) {
            Some(atom) => Err(Error::SignatureMismatch { atom: atom.0.clone() }),
            None => Ok(()),
        }
    }
}

impl PartialEq for Signature {
    fn eq(&self, other: &Signature) -> bool {
        self.atoms == other.atoms
    }
}

impl Eq for Signature {}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.atoms.iter().map(Atom::name)).finish()
    }
}

/// Formula over `¬`, `∧`, `∨` and the two constants.
///
/// Material implication is not a variant; [`Formula::implies`] rewrites it
/// to `¬a ∨ b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Atom::new(name))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::or(Formula::not(a), b)
    }

    pub fn negated(&self) -> Formula {
        Formula::not(self.clone())
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    /// Atoms in order of first occurrence, left to right.
    pub fn atoms_in_order(&self, out: &mut Vec<Atom>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => {
                if !out.contains(a) {
                    out.push(a.clone());
                }
            }
            Formula::Not(f) => f.atoms_in_order(out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.atoms_in_order(out);
                b.atoms_in_order(out);
            }
        }
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            Formula::Not(_) => 3,
            _ => 4,
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

/// Prints in the same ASCII grammar the parser reads.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Atom(a) => f.write_str(a.name()),
            Formula::Not(inner) => {
                f.write_str("!")?;
                inner.fmt_operand(f, 3)
            }
            Formula::And(a, b) => {
                a.fmt_operand(f, 2)?;
                f.write_str(" && ")?;
                b.fmt_operand(f, 3)
            }
            Formula::Or(a, b) => {
                a.fmt_operand(f, 1)?;
                f.write_str(" || ")?;
                b.fmt_operand(f, 2)
            }
        }
    }
}

/// A total truth assignment over a signature.
#[derive(Clone, PartialEq, Eq)]
pub struct World {
    signature: Signature,
    bits: u64,
}

impl World {
    pub fn from_index(signature: &Signature, index: u64) -> World {
        debug_assert!(signature.len() >= 64 || index >> signature.len() == 0);
        World { signature: signature.clone(), bits: index }
    }

    /// World making exactly the listed atoms true.
    pub fn with_true_atoms<'a, I>(signature: &Signature, atoms: I) -> Result<World>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut bits = 0u64;
        for name in atoms {
            let idx = signature
                .index_of(&Atom::new(name))
                .ok_or_else(|| Error::SignatureMismatch { atom: name.to_string() })?;
            bits |= 1 << idx;
        }
        Ok(World::from_index(signature, bits))
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn index(&self) -> u64 {
        self.bits
    }

    pub fn value(&self, atom: &Atom) -> Option<bool> {
        self.signature.index_of(atom).map(|i| (self.bits >> i) & 1 == 1)
    }
}

/// Literal notation, e.g. `ab!c` for `a ∧ b ∧ ¬c`.
impl fmt::Debug for World {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, atom) in self.signature.atoms().iter().enumerate() {
            if (self.bits >> i) & 1 == 0 {
                f.write_str("!")?;
            }
            f.write_str(atom.name())?;
        }
        Ok(())
    }
}

pub fn evaluate(formula: &Formula, world: &World) -> Result<bool> {
    Ok(match formula {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(a) => {
            world.value(a).ok_or_else(|| Error::SignatureMismatch { atom: a.name().to_string() })?
        }
        Formula::Not(f) => !evaluate(f, world)?,
        Formula::And(a, b) => evaluate(a, world)? && evaluate(b, world)?,
        Formula::Or(a, b) => evaluate(a, world)? || evaluate(b, world)?,
    })
}

/// A defeasible rule `(consequent | antecedent)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Conditional {
    pub id: String,
    pub antecedent: Formula,
    pub consequent: Formula,
}

impl Conditional {
    pub fn new(id: impl Into<String>, consequent: Formula, antecedent: Formula) -> Conditional {
        Conditional { id: id.into(), antecedent, consequent }
    }

    pub fn signature(&self) -> BTreeSet<Atom> {
        let mut atoms = self.antecedent.atoms();
        atoms.extend(self.consequent.atoms());
        atoms
    }

    /// `(¬B|A)` for `(B|A)`.
    pub fn negated(&self, id: impl Into<String>) -> Conditional {
        Conditional::new(id, self.consequent.negated(), self.antecedent.clone())
    }

    pub fn verified_by(&self, world: &World) -> Result<bool> {
        Ok(evaluate(&self.antecedent, world)? && evaluate(&self.consequent, world)?)
    }

    pub fn falsified_by(&self, world: &World) -> Result<bool> {
        Ok(evaluate(&self.antecedent, world)? && !evaluate(&self.consequent, world)?)
    }
}

/// Prints `(B | A)`, without the id.
impl fmt::Display for Conditional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} | {})", self.consequent, self.antecedent)
    }
}

pub fn verifies(world: &World, conditional: &Conditional) -> Result<bool> {
    conditional.verified_by(world)
}

pub fn falsifies(world: &World, conditional: &Conditional) -> Result<bool> {
    conditional.falsified_by(world)
}

fn check_cap(signature: &Signature, cap: usize) -> Result<()> {
    if signature.len() > cap || signature.len() > 63 {
        return Err(Error::Capacity { size: signature.len(), cap: cap.min(63) });
    }
    Ok(())
}

pub fn enumerate_worlds(signature: &Signature) -> Result<Vec<World>> {
    enumerate_worlds_capped(signature, DEFAULT_WORLD_CAP)
}

pub fn enumerate_worlds_capped(signature: &Signature, cap: usize) -> Result<Vec<World>> {
    check_cap(signature, cap)?;
    Ok((0..1u64 << signature.len()).map(|i| World::from_index(signature, i)).collect())
}

/// Set of worlds over a fixed signature, stored as a bitset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSet {
    words: Vec<u64>,
    worlds: u64,
}

const LOW_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

impl ModelSet {
    fn filled(worlds: u64, value: bool) -> ModelSet {
        let n_words = worlds.div_ceil(64) as usize;
        let mut set = ModelSet { words: vec![if value { u64::MAX } else { 0 }; n_words], worlds };
        set.mask_tail();
        set
    }

    fn mask_tail(&mut self) {
        let rem = self.worlds % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    fn of_atom(worlds: u64, index: usize) -> ModelSet {
        let n_words = worlds.div_ceil(64) as usize;
        let words = (0..n_words)
            .map(|k| {
                if index < 6 {
                    LOW_PATTERNS[index]
                } else if (k >> (index - 6)) & 1 == 1 {
                    u64::MAX
                } else {
                    0
                }
            })
            .collect();
        let mut set = ModelSet { words, worlds };
        set.mask_tail();
        set
    }

    pub fn world_count(&self) -> u64 {
        self.worlds
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn len(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn contains(&self, world: u64) -> bool {
        world < self.worlds && (self.words[(world / 64) as usize] >> (world % 64)) & 1 == 1
    }

    pub fn first(&self) -> Option<u64> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| k as u64 * 64 + u64::from(w.trailing_zeros()))
    }

    pub fn complement(&self) -> ModelSet {
        let mut out = ModelSet { words: self.words.iter().map(|w| !w).collect(), worlds: self.worlds };
        out.mask_tail();
        out
    }

    pub fn and(&self, other: &ModelSet) -> ModelSet {
        debug_assert_eq!(self.worlds, other.worlds);
        ModelSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
            worlds: self.worlds,
        }
    }

    pub fn or(&self, other: &ModelSet) -> ModelSet {
        debug_assert_eq!(self.worlds, other.worlds);
        ModelSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
            worlds: self.worlds,
        }
    }

    pub fn or_assign(&mut self, other: &ModelSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// `self ∧ ¬other`.
    pub fn and_not(&self, other: &ModelSet) -> ModelSet {
        ModelSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(),
            worlds: self.worlds,
        }
    }
}

/// All worlds of one signature, with bit-parallel formula evaluation.
#[derive(Debug, Clone)]
pub struct WorldSpace {
    signature: Signature,
    atom_sets: Vec<ModelSet>,
}

impl WorldSpace {
    pub fn new(signature: &Signature) -> Result<WorldSpace> {
        WorldSpace::with_cap(signature, DEFAULT_WORLD_CAP)
    }

    pub fn with_cap(signature: &Signature, cap: usize) -> Result<WorldSpace> {
        check_cap(signature, cap)?;
        let worlds = 1u64 << signature.len();
        Ok(WorldSpace {
            signature: signature.clone(),
            atom_sets: (0..signature.len()).map(|i| ModelSet::of_atom(worlds, i)).collect(),
        })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn world_count(&self) -> u64 {
        1u64 << self.signature.len()
    }

    pub fn world(&self, index: u64) -> World {
        World::from_index(&self.signature, index)
    }

    pub fn all(&self) -> ModelSet {
        ModelSet::filled(self.world_count(), true)
    }

    pub fn none(&self) -> ModelSet {
        ModelSet::filled(self.world_count(), false)
    }

    pub fn models(&self, formula: &Formula) -> Result<ModelSet> {
        Ok(match formula {
            Formula::True => self.all(),
            Formula::False => self.none(),
            Formula::Atom(a) => {
                let idx = self
                    .signature
                    .index_of(a)
                    .ok_or_else(|| Error::SignatureMismatch { atom: a.name().to_string() })?;
                self.atom_sets[idx].clone()
            }
            Formula::Not(f) => self.models(f)?.complement(),
            Formula::And(a, b) => self.models(a)?.and(&self.models(b)?),
            Formula::Or(a, b) => self.models(a)?.or(&self.models(b)?),
        })
    }

    pub fn is_satisfiable(&self, formula: &Formula) -> Result<bool> {
        Ok(!self.models(formula)?.is_empty())
    }

    /// Verifying and falsifying worlds of a conditional.
    pub fn conditional_models(&self, conditional: &Conditional) -> Result<ConditionalModels> {
        let antecedent = self.models(&conditional.antecedent)?;
        let consequent = self.models(&conditional.consequent)?;
        Ok(ConditionalModels {
            verifying: antecedent.and(&consequent),
            falsifying: antecedent.and_not(&consequent),
        })
    }
}

#[derive(Debug, Clone)]
pub struct ConditionalModels {
    pub verifying: ModelSet,
    pub falsifying: ModelSet,
}

impl ConditionalModels {
    pub fn applicable(&self) -> bool {
        !self.verifying.is_empty() || !self.falsifying.is_empty()
    }
}
