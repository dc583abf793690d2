//! Recursive-descent parser for formulas and conditionals.
//!
//! Operators from loosest to tightest binding: `=>` (right-associative),
//! `||`, `&&`, `!`. Conditionals are written consequent first, `(B | A)`.
//! A single `|` is only legal as the separator of a conditional.

use crate::error::{Error, Result};
use crate::logic::{Atom, Conditional, Formula, Signature};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Not,
    And,
    Or,
    Implies,
    Bar,
    True,
    False,
    Ident(String),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    offset: usize,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax { offset, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'!' => Tok::Not,
            b'&' if bytes.get(i + 1) == Some(&b'&') => {
                i += 1;
                Tok::And
            }
            b'|' if bytes.get(i + 1) == Some(&b'|') => {
                i += 1;
                Tok::Or
            }
            b'|' => Tok::Bar,
            b'=' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Implies
            }
            c if c == b'_' || c.is_ascii_alphabetic() => {
                while i + 1 < bytes.len() && (bytes[i + 1] == b'_' || bytes[i + 1].is_ascii_alphanumeric()) {
                    i += 1;
                }
                match &text[start..=i] {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    name => Tok::Ident(name.to_string()),
                }
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character `{ch}`")));
            }
        };
        i += 1;
        out.push(Token { tok, offset: start });
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    end: usize,
    signature: Option<&'a Signature>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn offset(&self) -> usize {
        self.peek().map_or(self.end, |t| t.offset)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().map(|t| &t.tok) == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut f = self.conjunction()?;
        while self.eat(&Tok::Or) {
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.eat(&Tok::And) {
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat(&Tok::Not) {
            return Ok(Formula::not(self.unary()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula> {
        let Some(token) = self.peek() else {
            return Err(syntax(self.end, "unexpected end of input"));
        };
        self.pos += 1;
        match &token.tok {
            Tok::True => Ok(Formula::True),
            Tok::False => Ok(Formula::False),
            Tok::Ident(name) => {
                let atom = Atom::new(name.as_str());
                if let Some(sig) = self.signature {
                    if !sig.contains(&atom) {
                        return Err(Error::UnknownAtom { atom: name.clone(), offset: token.offset });
                    }
                }
                Ok(Formula::Atom(atom))
            }
            Tok::LParen => {
                let inner = match self.implication() {
                    Err(Error::Syntax { offset, .. }) if offset == self.end && self.peek().is_none() => {
                        return Err(syntax(token.offset, "unclosed parenthesis"));
                    }
                    other => other?,
                };
                if !self.eat(&Tok::RParen) {
                    if self.peek().is_none() {
                        return Err(syntax(token.offset, "unclosed parenthesis"));
                    }
                    return Err(syntax(self.offset(), "expected `)`"));
                }
                Ok(inner)
            }
            Tok::Bar => Err(syntax(token.offset, "`|` is not allowed inside formulas")),
            other => Err(syntax(token.offset, format!("unexpected {}", describe(other)))),
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) if t.tok == Tok::RParen => Err(syntax(t.offset, "unbalanced `)`")),
            Some(t) => Err(syntax(t.offset, format!("unexpected {}", describe(&t.tok)))),
        }
    }
}

fn describe(tok: &Tok) -> &'static str {
    match tok {
        Tok::LParen => "`(`",
        Tok::RParen => "`)`",
        Tok::Not => "`!`",
        Tok::And => "`&&`",
        Tok::Or => "`||`",
        Tok::Implies => "`=>`",
        Tok::Bar => "`|`",
        Tok::True => "`true`",
        Tok::False => "`false`",
        Tok::Ident(_) => "atom",
    }
}

fn parse_tokens(tokens: &[Token], end: usize, signature: Option<&Signature>) -> Result<Formula> {
    if tokens.is_empty() {
        return Err(syntax(end, "empty formula"));
    }
    let mut parser = Parser { tokens, pos: 0, end, signature };
    let f = parser.implication()?;
    parser.finish()?;
    Ok(f)
}

/// Parses a formula. With `Some(signature)`, every atom must be declared.
pub fn parse_formula(text: &str, signature: Option<&Signature>) -> Result<Formula> {
    let tokens = lex(text)?;
    if let Some(bar) = tokens.iter().find(|t| t.tok == Tok::Bar) {
        return Err(syntax(bar.offset, "`|` is not allowed inside formulas"));
    }
    parse_tokens(&tokens, text.len(), signature)
}

/// Parses a query conditional `(B | A)`; its id is `q`.
pub fn parse_conditional(text: &str) -> Result<Conditional> {
    parse_conditional_with("q", text, None)
}

pub fn parse_conditional_with(id: &str, text: &str, signature: Option<&Signature>) -> Result<Conditional> {
    let tokens = lex(text)?;
    let Some(first) = tokens.first() else {
        return Err(syntax(0, "empty conditional"));
    };
    if first.tok != Tok::LParen {
        return Err(syntax(first.offset, "conditional must start with `(`"));
    }

    let mut depth = 0usize;
    let mut close = None;
    let mut separators = Vec::new();
    for (i, t) in tokens.iter().enumerate() {
        match t.tok {
            Tok::LParen => depth += 1,
            Tok::RParen => {
                depth = depth.saturating_sub(1);
                if depth == 0 {
                    close = Some(i);
                    break;
                }
            }
            Tok::Bar if depth == 1 => separators.push(i),
            Tok::Bar => return Err(syntax(t.offset, "nested `|` inside a conditional")),
            _ => {}
        }
    }
    let Some(close) = close else {
        return Err(syntax(first.offset, "unclosed parenthesis"));
    };
    if let Some(extra) = tokens.get(close + 1) {
        return Err(syntax(extra.offset, "unexpected input after conditional"));
    }
    let bar = match separators.as_slice() {
        [] => return Err(syntax(tokens[close].offset, "missing `|` separator")),
        [bar] => *bar,
        [_, second, ..] => return Err(syntax(tokens[*second].offset, "more than one `|` separator")),
    };
    let consequent = parse_tokens(&tokens[1..bar], tokens[bar].offset, signature)?;
    let antecedent = parse_tokens(&tokens[bar + 1..close], tokens[close].offset, signature)?;
    Ok(Conditional::new(id, consequent, antecedent))
}
