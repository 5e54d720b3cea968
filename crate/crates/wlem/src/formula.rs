//! Propositional formulas over the connectives `&`, `|`, `->`, `~`.
//!
//! Variables are positive integers, printed as `p1`, `p2`, ... Negation is a
//! primitive connective (there is no falsum in the language). The module also
//! houses the two generated axiom families: [`gen_phi`] produces the
//! testability schemas that generalize the weak law of the excluded middle
//! `~p1 | ~~p1`, and [`gen_sigma`] produces Smorynski's topwidth schemas.
//!
//! Grammar accepted by [`parse`] (whitespace between tokens is ignored):
//!
//! ```text
//! formula := impl
//! impl    := or ("->" impl)?          right-associative
//! or      := and ("|" and)*           left-associative
//! and     := neg ("&" neg)*           left-associative
//! neg     := "~" neg | atom
//! atom    := ident | "(" formula ")"
//! ident   := [a-zA-Z][a-zA-Z0-9_]*
//! ```
//!
//! Precedence, tightest first: `~`, `&`, `|`, `->`. Identifiers of the form
//! `p<digits>` denote the variable with that index; any other identifier is
//! accepted and interned onto the smallest indices not claimed by an explicit
//! `p<digits>` anywhere in the input, in order of first appearance.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// A propositional formula.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Formula {
    Var(u32),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
}

impl Formula {
    pub fn var(index: u32) -> Formula {
        debug_assert!(index >= 1, "variable indices start at 1");
        Formula::Var(index)
    }

    pub fn and(left: Formula, right: Formula) -> Formula {
        Formula::And(Box::new(left), Box::new(right))
    }

    pub fn or(left: Formula, right: Formula) -> Formula {
        Formula::Or(Box::new(left), Box::new(right))
    }

    pub fn implies(left: Formula, right: Formula) -> Formula {
        Formula::Implies(Box::new(left), Box::new(right))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: Formula) -> Formula {
        Formula::Not(Box::new(inner))
    }

    /// Left-associated disjunction of a nonempty sequence.
    pub fn or_all<I: IntoIterator<Item = Formula>>(items: I) -> Option<Formula> {
        items.into_iter().reduce(Formula::or)
    }

    /// Left-associated conjunction of a nonempty sequence.
    pub fn and_all<I: IntoIterator<Item = Formula>>(items: I) -> Option<Formula> {
        items.into_iter().reduce(Formula::and)
    }

    /// The set of variable indices occurring in the formula.
    pub fn vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<u32>) {
        match self {
            Formula::Var(i) => {
                out.insert(*i);
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Not(a) => a.collect_vars(out),
        }
    }

    /// Number of nodes in the syntax tree.
    pub fn node_count(&self) -> usize {
        match self {
            Formula::Var(_) => 1,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.node_count() + b.node_count()
            }
            Formula::Not(a) => 1 + a.node_count(),
        }
    }

    /// Simultaneous substitution: every occurrence of a mapped variable is
    /// replaced by its image; unmapped variables stay fixed.
    pub fn substitute(&self, map: &BTreeMap<u32, Formula>) -> Formula {
        match self {
            Formula::Var(i) => map.get(i).cloned().unwrap_or_else(|| self.clone()),
            Formula::And(a, b) => Formula::and(a.substitute(map), b.substitute(map)),
            Formula::Or(a, b) => Formula::or(a.substitute(map), b.substitute(map)),
            Formula::Implies(a, b) => Formula::implies(a.substitute(map), b.substitute(map)),
            Formula::Not(a) => Formula::not(a.substitute(map)),
        }
    }
}

// Binding strength used by both the parser and the printer.
// Implies < Or < And < Not < atoms.
fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Implies(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Not(..) => 4,
        Formula::Var(_) => 5,
    }
}

impl fmt::Display for Formula {
    /// Minimal parenthesization: `parse(f.to_string())` returns a tree
    /// structurally equal to `f`.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_with_min_prec(self, 0, out)
    }
}

fn write_with_min_prec(f: &Formula, min_prec: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let needs_parens = precedence(f) < min_prec;
    if needs_parens {
        write!(out, "(")?;
    }
    match f {
        Formula::Var(i) => write!(out, "p{i}")?,
        // Left-associative operators admit an equal-precedence left child;
        // the right child must bind strictly tighter.
        Formula::And(a, b) => {
            write_with_min_prec(a, 3, out)?;
            write!(out, " & ")?;
            write_with_min_prec(b, 4, out)?;
        }
        Formula::Or(a, b) => {
            write_with_min_prec(a, 2, out)?;
            write!(out, " | ")?;
            write_with_min_prec(b, 3, out)?;
        }
        // Right-associative: the mirror image.
        Formula::Implies(a, b) => {
            write_with_min_prec(a, 2, out)?;
            write!(out, " -> ")?;
            write_with_min_prec(b, 1, out)?;
        }
        Formula::Not(a) => {
            write!(out, "~")?;
            write_with_min_prec(a, 4, out)?;
        }
    }
    if needs_parens {
        write!(out, ")")?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Arrow,
    Pipe,
    Amp,
    Tilde,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'(' => {
                tokens.push((Token::LParen, i));
                i += 1;
            }
            b')' => {
                tokens.push((Token::RParen, i));
                i += 1;
            }
            b'~' => {
                tokens.push((Token::Tilde, i));
                i += 1;
            }
            b'&' => {
                tokens.push((Token::Amp, i));
                i += 1;
            }
            b'|' => {
                tokens.push((Token::Pipe, i));
                i += 1;
            }
            b'-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    tokens.push((Token::Arrow, i));
                    i += 2;
                } else {
                    return Err(Error::Syntax {
                        offset: i,
                        message: "expected '->' after '-'".into(),
                    });
                }
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = i;
                i += 1;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push((Token::Ident(text[start..i].to_string()), start));
            }
            _ => {
                return Err(Error::Syntax {
                    offset: i,
                    message: format!("unexpected character {:?}", b as char),
                });
            }
        }
    }
    Ok(tokens)
}

/// Splits an identifier of the form `p<digits>` into its index.
fn canonical_index(name: &str) -> Option<std::result::Result<u32, ()>> {
    let digits = name.strip_prefix('p')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    match digits.parse::<u32>() {
        Ok(n) if n >= 1 => Some(Ok(n)),
        _ => Some(Err(())), // p0, or an index too large for u32
    }
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
    interned: BTreeMap<String, u32>,
    taken: BTreeSet<u32>,
}

impl Parser {
    fn peek(&self) -> Option<&(Token, usize)> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<(Token, usize)> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: &str) -> Error {
        let offset = self
            .tokens
            .get(self.pos)
            .map(|(_, o)| *o)
            .unwrap_or(self.end);
        Error::Syntax {
            offset,
            message: message.into(),
        }
    }

    fn variable(&mut self, name: &str, offset: usize) -> Result<u32> {
        match canonical_index(name) {
            Some(Ok(n)) => Ok(n),
            Some(Err(())) => Err(Error::Syntax {
                offset,
                message: format!(
                    "variable index in {name:?} must be between 1 and {}",
                    u32::MAX
                ),
            }),
            None => {
                if let Some(&n) = self.interned.get(name) {
                    return Ok(n);
                }
                let mut candidate = 1;
                while self.taken.contains(&candidate) {
                    candidate += 1;
                }
                self.taken.insert(candidate);
                self.interned.insert(name.to_string(), candidate);
                Ok(candidate)
            }
        }
    }

    fn parse_implies(&mut self) -> Result<Formula> {
        let left = self.parse_or()?;
        if matches!(self.peek(), Some((Token::Arrow, _))) {
            self.bump();
            let right = self.parse_implies()?;
            Ok(Formula::implies(left, right))
        } else {
            Ok(left)
        }
    }

    fn parse_or(&mut self) -> Result<Formula> {
        let mut acc = self.parse_and()?;
        while matches!(self.peek(), Some((Token::Pipe, _))) {
            self.bump();
            acc = Formula::or(acc, self.parse_and()?);
        }
        Ok(acc)
    }

    fn parse_and(&mut self) -> Result<Formula> {
        let mut acc = self.parse_neg()?;
        while matches!(self.peek(), Some((Token::Amp, _))) {
            self.bump();
            acc = Formula::and(acc, self.parse_neg()?);
        }
        Ok(acc)
    }

    fn parse_neg(&mut self) -> Result<Formula> {
        if matches!(self.peek(), Some((Token::Tilde, _))) {
            self.bump();
            Ok(Formula::not(self.parse_neg()?))
        } else {
            self.parse_atom()
        }
    }

    fn parse_atom(&mut self) -> Result<Formula> {
        match self.bump() {
            Some((Token::Ident(name), offset)) => Ok(Formula::Var(self.variable(&name, offset)?)),
            Some((Token::LParen, _)) => {
                let inner = self.parse_implies()?;
                if matches!(self.peek(), Some((Token::RParen, _))) {
                    self.bump();
                    Ok(inner)
                } else {
                    Err(self.error_here("expected ')'"))
                }
            }
            Some((_, offset)) => Err(Error::Syntax {
                offset,
                message: "expected a variable, '~', or '('".into(),
            }),
            None => Err(self.error_here("unexpected end of input")),
        }
    }
}

/// Parses a formula; see the module docs for the grammar.
pub fn parse(text: &str) -> Result<Formula> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::EmptyInput);
    }
    // Indices claimed by explicit p<digits> identifiers anywhere in the input
    // are reserved before any free-form identifier is interned.
    let mut taken = BTreeSet::new();
    for (tok, _) in &tokens {
        if let Token::Ident(name) = tok {
            if let Some(Ok(n)) = canonical_index(name) {
                taken.insert(n);
            }
        }
    }
    let end = text.len();
    let mut parser = Parser {
        tokens,
        pos: 0,
        end,
        interned: BTreeMap::new(),
        taken,
    };
    let formula = parser.parse_implies()?;
    if parser.pos < parser.tokens.len() {
        return Err(parser.error_here("unexpected trailing input"));
    }
    Ok(formula)
}

/// The testability schema family, starting from `~p1 | ~~p1` at `k = 1`.
///
/// For `k > 1` the formula is the left-associated disjunction, in
/// lexicographic `(i, j)` order, of all `~pi -> ~pj` with `i != j`, closed by
/// `~(~p1 & ... & ~pk)`; it has `k(k-1) + 1` disjuncts over `p1..pk`.
pub fn gen_phi(k: u32) -> Result<Formula> {
    if k == 0 {
        return Err(Error::ZeroSchemaIndex);
    }
    if k == 1 {
        let p = Formula::var(1);
        return Ok(Formula::or(
            Formula::not(p.clone()),
            Formula::not(Formula::not(p)),
        ));
    }
    let mut disjuncts = Vec::new();
    for i in 1..=k {
        for j in 1..=k {
            if i != j {
                disjuncts.push(Formula::implies(
                    Formula::not(Formula::var(i)),
                    Formula::not(Formula::var(j)),
                ));
            }
        }
    }
    let all_negated =
        Formula::and_all((1..=k).map(|i| Formula::not(Formula::var(i)))).expect("k >= 1");
    disjuncts.push(Formula::not(all_negated));
    Ok(Formula::or_all(disjuncts).expect("nonempty"))
}

/// Smorynski's topwidth schema family over `k + 1` variables.
///
/// The classical presentation uses variables indexed from 0; here they are
/// shifted to `p1..p(k+1)` so that all generators share one variable space.
/// Conjuncts and disjuncts are emitted in lexicographic order,
/// left-associated.
pub fn gen_sigma(k: u32) -> Result<Formula> {
    if k == 0 {
        return Err(Error::ZeroSchemaIndex);
    }
    let m = k
        .checked_add(1)
        .ok_or_else(|| Error::InvalidInput("schema index too large".into()))?;
    let neg = |i: u32| Formula::not(Formula::var(i));
    let mut conjuncts = Vec::new();
    for i in 1..=m {
        for j in (i + 1)..=m {
            conjuncts.push(Formula::not(Formula::and(neg(i), neg(j))));
        }
    }
    let antecedent = Formula::and_all(conjuncts).expect("k >= 1 gives at least one pair");
    let mut disjuncts = Vec::new();
    for i in 1..=m {
        let others = Formula::or_all((1..=m).filter(|&j| j != i).map(neg)).expect("m >= 2");
        disjuncts.push(Formula::implies(neg(i), others));
    }
    let consequent = Formula::or_all(disjuncts).expect("nonempty");
    Ok(Formula::implies(antecedent, consequent))
}

/// A recognized generated schema instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schema {
    /// `gen_phi(k)`
    Phi(u32),
    /// `gen_sigma(k)`
    Sigma(u32),
}

/// Detects whether `f` is structurally equal to a generated schema.
///
/// The fast evaluation paths key off this: both families mention variables
/// only in negated form and are invariant under permuting them.
pub fn recognize_schema(f: &Formula) -> Option<Schema> {
    let vars = f.vars();
    let n = u32::try_from(vars.len()).ok()?;
    if n == 0 || !vars.iter().copied().eq(1..=n) {
        return None;
    }
    if gen_phi(n).ok().as_ref() == Some(f) {
        return Some(Schema::Phi(n));
    }
    if n >= 2 && gen_sigma(n - 1).ok().as_ref() == Some(f) {
        return Some(Schema::Sigma(n - 1));
    }
    None
}

/// Rewrites `f` so that every negated variable `~pi` becomes the bare
/// variable `pi`. Returns `None` if some variable occurs outside a negation.
///
/// When this succeeds, the value of `f` under a valuation depends only on the
/// pointwise negations of the variable values, so a search may quantify over
/// the (usually much smaller) range of the negation map instead of over all
/// values. Sound for both Kripke and algebra semantics.
pub fn negated_variable_skeleton(f: &Formula) -> Option<Formula> {
    match f {
        Formula::Var(_) => None,
        Formula::Not(a) => match a.as_ref() {
            Formula::Var(i) => Some(Formula::var(*i)),
            _ => Some(Formula::not(negated_variable_skeleton(a)?)),
        },
        Formula::And(a, b) => Some(Formula::and(
            negated_variable_skeleton(a)?,
            negated_variable_skeleton(b)?,
        )),
        Formula::Or(a, b) => Some(Formula::or(
            negated_variable_skeleton(a)?,
            negated_variable_skeleton(b)?,
        )),
        Formula::Implies(a, b) => Some(Formula::implies(
            negated_variable_skeleton(a)?,
            negated_variable_skeleton(b)?,
        )),
    }
}
