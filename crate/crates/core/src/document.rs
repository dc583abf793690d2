//! Belief-base files and session files.
//!
//! Belief-base file, one item per line:
//!
//! ```text
//! # comment
//! sig: a b c          (optional, before any conditional)
//! r1: (b | a)         (explicit id)
//! (c | b)             (bare; id defaults to r<position>)
//! ```
//!
//! Session file, LF-terminated, tab-separated lines sorted by conditional id:
//!
//! ```text
//! @queries  1
//! @resets   0
//! r1        6/5
//! r10       4/15
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::inference::BeliefBase;
use crate::logic::{Conditional, Signature};
use crate::memory::ActivationState;
use crate::rational::{parse_rational, to_fraction_string, Rational};
use crate::syntax::parse_conditional_with;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeliefBaseDocument {
    pub signature: Signature,
    /// Whether the signature came from a `sig:` line.
    pub declared: bool,
    pub conditionals: Vec<Conditional>,
}

impl BeliefBaseDocument {
    pub fn to_belief_base(&self) -> Result<BeliefBase> {
        BeliefBase::new(self.signature.clone(), self.conditionals.clone())
    }
}

fn is_identifier(text: &str) -> bool {
    let mut chars = text.chars();
    matches!(chars.next(), Some(c) if c == '_' || c.is_ascii_alphabetic())
        && chars.all(|c| c == '_' || c.is_ascii_alphanumeric())
}

pub fn parse_belief_base(text: &str) -> Result<BeliefBaseDocument> {
    let mut declared: Option<Signature> = None;
    let mut conditionals: Vec<Conditional> = Vec::new();
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();

    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("sig:") {
            if declared.is_some() || !conditionals.is_empty() {
                return Err(Error::Syntax {
                    offset: 0,
                    message: "`sig:` must appear once, before any conditional".into(),
                }
                .at_line(line_no));
            }
            let names: Vec<&str> = rest.split_whitespace().collect();
            if let Some(bad) = names.iter().find(|n| !is_identifier(n) || **n == "true" || **n == "false") {
                return Err(Error::Syntax {
                    offset: 0,
                    message: format!("`{bad}` is not a valid atom name"),
                }
                .at_line(line_no));
            }
            declared = Some(Signature::new(names).map_err(|e| e.at_line(line_no))?);
            continue;
        }

        let (id, body) = if line.starts_with('(') {
            (format!("r{}", conditionals.len() + 1), line)
        } else {
            let Some((id, body)) = line.split_once(':') else {
                return Err(Error::Syntax {
                    offset: 0,
                    message: "expected `id: (B | A)` or `(B | A)`".into(),
                }
                .at_line(line_no));
            };
            let id = id.trim();
            if !is_identifier(id) {
                return Err(Error::Syntax {
                    offset: 0,
                    message: format!("`{id}` is not a valid conditional id"),
                }
                .at_line(line_no));
            }
            (id.to_string(), body.trim())
        };
        if seen.insert(id.clone(), line_no).is_some() {
            return Err(Error::DuplicateId { id, line: line_no });
        }
        let conditional =
            parse_conditional_with(&id, body, declared.as_ref()).map_err(|e| e.at_line(line_no))?;
        conditionals.push(conditional);
    }

    let is_declared = declared.is_some();
    let base = match declared {
        Some(signature) => BeliefBase::new(signature, conditionals)?,
        None => BeliefBase::from_conditionals(conditionals)?,
    };
    Ok(BeliefBaseDocument {
        signature: base.signature().clone(),
        declared: is_declared,
        conditionals: base.conditionals().to_vec(),
    })
}

/// Writes a base back in file syntax, with a `sig:` line when `declare` is set.
pub fn render_belief_base(base: &BeliefBase, declare: bool) -> String {
    let mut out = String::new();
    if declare {
        let names: Vec<&str> = base.signature().atoms().iter().map(|a| a.name()).collect();
        let _ = writeln!(out, "sig: {}", names.join(" "));
    }
    for r in base.conditionals() {
        let _ = writeln!(out, "{}: {}", r.id, r);
    }
    out
}

pub fn serialize_session(state: &ActivationState) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "@queries\t{}", state.query_count());
    let _ = writeln!(out, "@resets\t{}", state.resets());
    for (id, level) in state.base_levels() {
        let _ = writeln!(out, "{id}\t{}", to_fraction_string(level));
    }
    out
}

pub fn parse_session(text: &str) -> Result<ActivationState> {
    let mut levels: BTreeMap<String, Rational> = BTreeMap::new();
    let mut queries = 0u64;
    let mut resets = 0u64;
    for (index, line) in text.lines().enumerate() {
        let line_no = index + 1;
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('\t') else {
            return Err(Error::InvalidState(format!("expected `id<TAB>p/q`, got `{line}`")).at_line(line_no));
        };
        let counter = || {
            value
                .parse::<u64>()
                .map_err(|_| Error::InvalidState(format!("bad counter `{value}`")).at_line(line_no))
        };
        match key {
            "@queries" => queries = counter()?,
            "@resets" => resets = counter()?,
            _ if key.starts_with('@') => {
                return Err(Error::InvalidState(format!("unknown header `{key}`")).at_line(line_no))
            }
            _ => {
                if !is_identifier(key) {
                    return Err(Error::InvalidState(format!("bad conditional id `{key}`")).at_line(line_no));
                }
                if !value.contains('/') {
                    return Err(Error::MalformedRational(value.to_string()).at_line(line_no));
                }
                let level = parse_rational(value).map_err(|e| e.at_line(line_no))?;
                if levels.insert(key.to_string(), level).is_some() {
                    return Err(Error::InvalidState(format!("duplicate id `{key}`")).at_line(line_no));
                }
            }
        }
    }
    ActivationState::restore(levels, queries, resets)
}

/// Parses a session and checks it covers exactly the ids of `base`.
pub fn parse_session_for(text: &str, base: &BeliefBase) -> Result<ActivationState> {
    let state = parse_session(text)?;
    if let Some(unknown) = state.base_levels().keys().find(|id| base.get(id).is_none()) {
        return Err(Error::UnknownId(unknown.clone()));
    }
    state.check_ids(base)?;
    Ok(state)
}
