//! Formulas of unit-free MLL with explicit negation.
//!
//! Formulas are trees over variables, a binary tensor and a unary negation.
//! Negation is a constructor in its own right: `p^^` is not `p`, and
//! `(p * q)^` is never rewritten into a par. The de Morgan translation in
//! [`de_morganize`] exists only so that the correctness checker can see a
//! tensor/par tree; it never touches a stored formula.
//!
//! Concrete syntax:
//!
//! ```text
//! F ::= var | "(" F "*" F ")" | F "^" | F "-o" F | "(" F ")"
//! ```
//!
//! Postfix `^` binds tightest. `A -o B` is sugar for `((A * B^))^` and is
//! right associative.

use std::sync::Arc;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

/// A formula. Equality is syntactic tree equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", try_from = "FormulaInput")]
pub enum Formula {
    Var(Arc<str>),
    Tensor(Arc<Formula>, Arc<Formula>),
    Neg(Arc<Formula>),
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawFormula {
    Var(String),
    Tensor(Box<RawFormula>, Box<RawFormula>),
    Neg(Box<RawFormula>),
}

/// Input accepts either the tree form or concrete syntax in a string.
#[derive(Deserialize)]
#[serde(untagged)]
enum FormulaInput {
    Text(String),
    Tree(RawFormula),
}

impl TryFrom<FormulaInput> for Formula {
    type Error = String;

    fn try_from(input: FormulaInput) -> Result<Self, Self::Error> {
        match input {
            FormulaInput::Text(text) => parse(&text).map_err(|e| e.to_string()),
            FormulaInput::Tree(raw) => Self::try_from(raw),
        }
    }
}

impl TryFrom<RawFormula> for Formula {
    type Error = String;

    fn try_from(raw: RawFormula) -> Result<Self, Self::Error> {
        Ok(match raw {
            RawFormula::Var(name) => {
                if !is_var_name(&name) {
                    return Err(format!("invalid variable name {name:?}"));
                }
                Formula::Var(name.into())
            }
            RawFormula::Tensor(a, b) => Formula::tensor(Self::try_from(*a)?, Self::try_from(*b)?),
            RawFormula::Neg(a) => Formula::neg(Self::try_from(*a)?),
        })
    }
}

/// Variable names match `[a-z][a-z0-9]*`.
pub fn is_var_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('a'..='z'))
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
}

impl Formula {
    /// Panics if `name` is not a valid variable name.
    pub fn var(name: &str) -> Formula {
        assert!(is_var_name(name), "invalid variable name {name:?}");
        Formula::Var(Arc::from(name))
    }

    pub fn tensor(left: Formula, right: Formula) -> Formula {
        Formula::Tensor(Arc::new(left), Arc::new(right))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(child: Formula) -> Formula {
        Formula::Neg(Arc::new(child))
    }

    /// Number of variable occurrences.
    pub fn leaf_count(&self) -> usize {
        match self {
            Formula::Var(_) => 1,
            Formula::Tensor(a, b) => a.leaf_count() + b.leaf_count(),
            Formula::Neg(a) => a.leaf_count(),
        }
    }

    /// Largest number of negations on a root-to-leaf path.
    pub fn neg_depth(&self) -> usize {
        match self {
            Formula::Var(_) => 0,
            Formula::Tensor(a, b) => a.neg_depth().max(b.neg_depth()),
            Formula::Neg(a) => 1 + a.neg_depth(),
        }
    }

    /// The subformula at `addr`, if the path resolves.
    pub fn at(&self, addr: &Addr) -> Option<&Formula> {
        let mut node = self;
        for step in addr.steps() {
            node = match (step, node) {
                (Step::L, Formula::Tensor(a, _)) => a,
                (Step::R, Formula::Tensor(_, b)) => b,
                (Step::N, Formula::Neg(a)) => a,
                _ => return None,
            };
        }
        Some(node)
    }

    /// If this formula is `A -o B`, i.e. `(A * B^)^`, returns `(A, B)`.
    pub fn as_lolli(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Neg(inner) => match inner.as_ref() {
                Formula::Tensor(a, nb) => match nb.as_ref() {
                    Formula::Neg(b) => Some((a, b)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }

    pub fn as_tensor(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Tensor(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_neg(&self) -> Option<&Formula> {
        match self {
            Formula::Neg(a) => Some(a),
            _ => None,
        }
    }
}

/// `A^`, purely syntactic.
pub fn dual(f: &Formula) -> Formula {
    Formula::neg(f.clone())
}

/// `A -o B := (A * B^)^`.
pub fn lolli(a: &Formula, b: &Formula) -> Formula {
    Formula::neg(Formula::tensor(a.clone(), Formula::neg(b.clone())))
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Var(name) => f.write_str(name),
            Formula::Tensor(a, b) => write!(f, "({a} * {b})"),
            Formula::Neg(a) => write!(f, "{a}^"),
        }
    }
}

/// Prints in the concrete grammar; the output reparses to an equal tree.
pub fn print(f: &Formula) -> String {
    f.to_string()
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {pos}: {message}")]
pub struct SyntaxError {
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Var(String),
    LParen,
    RParen,
    Star,
    Caret,
    Lolli,
    End,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Var(v) => write!(f, "variable `{v}`"),
            Token::LParen => f.write_str("`(`"),
            Token::RParen => f.write_str("`)`"),
            Token::Star => f.write_str("`*`"),
            Token::Caret => f.write_str("`^`"),
            Token::Lolli => f.write_str("`-o`"),
            Token::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'(' => {
                out.push((i, Token::LParen));
                i += 1;
            }
            b')' => {
                out.push((i, Token::RParen));
                i += 1;
            }
            b'*' => {
                out.push((i, Token::Star));
                i += 1;
            }
            b'^' => {
                out.push((i, Token::Caret));
                i += 1;
            }
            b'-' if bytes.get(i + 1) == Some(&b'o') => {
                out.push((i, Token::Lolli));
                i += 2;
            }
            b'a'..=b'z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_lowercase() || bytes[i].is_ascii_digit()) {
                    i += 1;
                }
                out.push((start, Token::Var(text[start..i].to_string())));
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(SyntaxError { pos: i, message: format!("unexpected character {ch:?}") });
            }
        }
    }
    out.push((text.len(), Token::End));
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    cursor: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.cursor].1
    }

    fn pos(&self) -> usize {
        self.tokens[self.cursor].0
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.cursor].1.clone();
        if tok != Token::End {
            self.cursor += 1;
        }
        tok
    }

    fn error<T>(&self, message: String) -> Result<T, SyntaxError> {
        Err(SyntaxError { pos: self.pos(), message })
    }

    fn expect(&mut self, want: Token) -> Result<(), SyntaxError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            let found = self.peek().clone();
            self.error(format!("expected {want}, found {found}"))
        }
    }

    // expr := postfix ("-o" expr)?
    fn expr(&mut self) -> Result<(Formula, bool), SyntaxError> {
        let head = self.postfix()?;
        if *self.peek() == Token::Lolli {
            self.bump();
            let (tail, _) = self.expr()?;
            Ok((lolli(&head, &tail), true))
        } else {
            Ok((head, false))
        }
    }

    // postfix := primary "^"*
    fn postfix(&mut self) -> Result<Formula, SyntaxError> {
        let mut f = self.primary()?;
        while *self.peek() == Token::Caret {
            self.bump();
            f = Formula::neg(f);
        }
        Ok(f)
    }

    // primary := var | "(" expr ")" | "(" expr "*" expr ")"
    fn primary(&mut self) -> Result<Formula, SyntaxError> {
        match self.bump() {
            Token::Var(name) => Ok(Formula::Var(name.into())),
            Token::LParen => {
                let (left, left_lolli) = self.expr()?;
                if *self.peek() == Token::Star {
                    let star = self.pos();
                    self.bump();
                    let (right, right_lolli) = self.expr()?;
                    if left_lolli || right_lolli {
                        return Err(SyntaxError {
                            pos: star,
                            message: "`-o` next to `*` must be parenthesized".into(),
                        });
                    }
                    self.expect(Token::RParen)?;
                    Ok(Formula::tensor(left, right))
                } else {
                    self.expect(Token::RParen)?;
                    Ok(left)
                }
            }
            tok => {
                self.cursor = self.cursor.saturating_sub(usize::from(tok != Token::End));
                self.error(format!("expected a variable or `(`, found {tok}"))
            }
        }
    }
}

/// Parses a formula in the concrete grammar.
pub fn parse(text: &str) -> Result<Formula, SyntaxError> {
    let mut parser = Parser { tokens: tokenize(text)?, cursor: 0 };
    let (f, _) = parser.expr()?;
    match parser.peek() {
        Token::End => Ok(f),
        tok => {
            let tok = tok.clone();
            parser.error(format!("unexpected {tok} after complete formula"))
        }
    }
}

impl FromStr for Formula {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

// ---------------------------------------------------------------------------
// Leaf addressing

/// One step of a path into a formula: tensor child (`L`/`R`) or negation
/// child (`N`). The derived order matches the order of the letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    L,
    N,
    R,
}

impl Step {
    fn letter(self) -> char {
        match self {
            Step::L => 'L',
            Step::N => 'N',
            Step::R => 'R',
        }
    }
}

/// Path address of a node, written as a string over `{L, R, N}`; the root is
/// the empty string.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Addr(SmallVec<[Step; 24]>);

impl Addr {
    pub fn root() -> Addr {
        Addr(SmallVec::new())
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn child(&self, step: Step) -> Addr {
        let mut steps = self.0.clone();
        steps.push(step);
        Addr(steps)
    }

    /// `prefix` followed by this address.
    pub fn prefixed(&self, prefix: &[Step]) -> Addr {
        let mut steps = SmallVec::with_capacity(prefix.len() + self.0.len());
        steps.extend_from_slice(prefix);
        steps.extend_from_slice(&self.0);
        Addr(steps)
    }

    /// Strips `prefix`, if this address starts with it.
    pub fn strip(&self, prefix: &[Step]) -> Option<Addr> {
        self.0.strip_prefix(prefix).map(|rest| Addr(SmallVec::from_slice(rest)))
    }

    pub fn negations(&self) -> usize {
        self.0.iter().filter(|s| **s == Step::N).count()
    }
}

impl fmt::Display for Addr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.letter())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid address {0:?}: expected letters from L, R, N")]
pub struct AddrError(pub String);

impl FromStr for Addr {
    type Err = AddrError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                'L' => Ok(Step::L),
                'R' => Ok(Step::R),
                'N' => Ok(Step::N),
                _ => Err(AddrError(s.to_string())),
            })
            .collect::<Result<SmallVec<_>, _>>()
            .map(Addr)
    }
}

impl Serialize for Addr {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Addr {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for building an address from a literal; panics on bad letters.
pub fn addr(s: &str) -> Addr {
    s.parse().expect("address literal")
}

/// Which end of a morphism a leaf lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Dom,
    Cod,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Pos,
    Neg,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Pos => Polarity::Neg,
            Polarity::Neg => Polarity::Pos,
        }
    }
}

/// Effective polarity of an occurrence: positive iff the number of enclosing
/// negations is even, flipped on the domain side.
pub fn polarity_of(side: Side, addr: &Addr) -> Polarity {
    let even = addr.negations().is_multiple_of(2);
    if even != (side == Side::Dom) {
        Polarity::Pos
    } else {
        Polarity::Neg
    }
}

/// A variable occurrence on one side of a morphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeafRef {
    pub side: Side,
    pub addr: Addr,
    pub var: Arc<str>,
    pub polarity: Polarity,
}

/// Leaves of `f` in left-to-right order.
pub fn leaves(f: &Formula, side: Side) -> Vec<LeafRef> {
    fn walk(f: &Formula, side: Side, here: &mut Vec<Step>, out: &mut Vec<LeafRef>) {
        match f {
            Formula::Var(name) => {
                let addr = Addr(SmallVec::from_slice(here));
                out.push(LeafRef { side, polarity: polarity_of(side, &addr), addr, var: name.clone() });
            }
            Formula::Tensor(a, b) => {
                here.push(Step::L);
                walk(a, side, here, out);
                here.pop();
                here.push(Step::R);
                walk(b, side, here, out);
                here.pop();
            }
            Formula::Neg(a) => {
                here.push(Step::N);
                walk(a, side, here, out);
                here.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(f, side, &mut Vec::new(), &mut out);
    out
}

// ---------------------------------------------------------------------------
// De Morgan translation

/// Tensor/par tree obtained by pushing negations to the leaves. Each internal
/// node remembers the address of the tensor it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DMTree {
    TensorNode { addr: Addr, left: Box<DMTree>, right: Box<DMTree> },
    ParNode { addr: Addr, left: Box<DMTree>, right: Box<DMTree> },
    Literal(LeafRef),
}

impl DMTree {
    pub fn leaf_count(&self) -> usize {
        match self {
            DMTree::Literal(_) => 1,
            DMTree::TensorNode { left, right, .. } | DMTree::ParNode { left, right, .. } => {
                left.leaf_count() + right.leaf_count()
            }
        }
    }

    pub fn par_count(&self) -> usize {
        match self {
            DMTree::Literal(_) => 0,
            DMTree::TensorNode { left, right, .. } => left.par_count() + right.par_count(),
            DMTree::ParNode { left, right, .. } => 1 + left.par_count() + right.par_count(),
        }
    }
}

/// Translates `f` read at `start` polarity. Starting at `Neg` reads the
/// formula as a domain (its leaves get `Side::Dom`), starting at `Pos` reads
/// it as a codomain.
pub fn de_morganize(f: &Formula, start: Polarity) -> DMTree {
    let side = match start {
        Polarity::Pos => Side::Cod,
        Polarity::Neg => Side::Dom,
    };
    fn go(f: &Formula, pol: Polarity, side: Side, here: &mut Vec<Step>) -> DMTree {
        match f {
            Formula::Var(name) => {
                let addr = Addr(SmallVec::from_slice(here));
                debug_assert_eq!(polarity_of(side, &addr), pol);
                DMTree::Literal(LeafRef { side, addr, var: name.clone(), polarity: pol })
            }
            Formula::Neg(a) => {
                here.push(Step::N);
                let t = go(a, pol.flip(), side, here);
                here.pop();
                t
            }
            Formula::Tensor(a, b) => {
                let addr = Addr(SmallVec::from_slice(here));
                here.push(Step::L);
                let left = Box::new(go(a, pol, side, here));
                here.pop();
                here.push(Step::R);
                let right = Box::new(go(b, pol, side, here));
                here.pop();
                match pol {
                    Polarity::Pos => DMTree::TensorNode { addr, left, right },
                    Polarity::Neg => DMTree::ParNode { addr, left, right },
                }
            }
        }
    }
    go(f, start, side, &mut Vec::new())
}
