//! Morphemes, numeral expression trees, evaluation and the token format.
//!
//! Tokens are serialized whitespace-separated (`4 * 10 + 3`), so multi-digit
//! atoms stay unambiguous. Parsing follows the derivation shapes of Hurford's
//! grammar: `*` binds tighter than `+`/`-`, `*` associates to the left and
//! `+`/`-` associate to the right (`5 + 15 + 4` is `5 + (15 + 4)`).

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Upper bound on any value, intermediate or final, that an expression may take.
pub const MAX_VALUE: u64 = 1_000_000;

/// Arithmetic combinator. Combinators are null morphemes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Op {
    Plus,
    Minus,
    Times,
}

impl Op {
    pub fn symbol(self) -> &'static str {
        match self {
            Op::Plus => "+",
            Op::Minus => "-",
            Op::Times => "*",
        }
    }

    fn is_additive(self) -> bool {
        matches!(self, Op::Plus | Op::Minus)
    }
}

/// One symbol of a linearized numeral.
///
/// The derived ordering puts atoms first, ordered by value, then combinators,
/// then parentheses. Automaton construction sorts words by this order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Morpheme {
    Atom(u32),
    Op(Op),
    Open,
    Close,
}

impl Morpheme {
    /// Parentheses carry no meaning and are not counted as morphemes.
    pub fn is_counted(self) -> bool {
        matches!(self, Morpheme::Atom(_) | Morpheme::Op(_))
    }
}

impl fmt::Display for Morpheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Morpheme::Atom(v) => write!(f, "{v}"),
            Morpheme::Op(op) => f.write_str(op.symbol()),
            Morpheme::Open => f.write_str("("),
            Morpheme::Close => f.write_str(")"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("atom value must be positive")]
    ZeroAtom,
    #[error("`{0}` yields a non-positive value")]
    NonPositive(String),
    #[error("value exceeds {MAX_VALUE} in `{0}`")]
    OutOfBounds(String),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("empty token sequence")]
    Empty,
    #[error("unrecognized token `{0}`")]
    BadToken(String),
    #[error("unbalanced parentheses")]
    UnbalancedParens,
    #[error("combinator without operand at token {0}")]
    DanglingCombinator(usize),
    #[error("unexpected token `{token}` at position {position}")]
    Unexpected { token: Morpheme, position: usize },
}

/// A numeral: leaves are number atoms, internal nodes are combinators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NumeralExpr {
    Atom(u32),
    Node(Op, Box<NumeralExpr>, Box<NumeralExpr>),
}

impl NumeralExpr {
    pub fn atom(value: u32) -> Self {
        NumeralExpr::Atom(value)
    }

    pub fn node(op: Op, left: NumeralExpr, right: NumeralExpr) -> Self {
        NumeralExpr::Node(op, Box::new(left), Box::new(right))
    }

    pub fn plus(left: NumeralExpr, right: NumeralExpr) -> Self {
        Self::node(Op::Plus, left, right)
    }

    pub fn minus(left: NumeralExpr, right: NumeralExpr) -> Self {
        Self::node(Op::Minus, left, right)
    }

    pub fn times(left: NumeralExpr, right: NumeralExpr) -> Self {
        Self::node(Op::Times, left, right)
    }

    /// Number of number atoms (the depth measure of the enumerator).
    pub fn atom_count(&self) -> usize {
        match self {
            NumeralExpr::Atom(_) => 1,
            NumeralExpr::Node(_, l, r) => l.atom_count() + r.atom_count(),
        }
    }

    pub fn combinator_count(&self) -> usize {
        match self {
            NumeralExpr::Atom(_) => 0,
            NumeralExpr::Node(_, l, r) => 1 + l.combinator_count() + r.combinator_count(),
        }
    }

    /// Morphosyntactic complexity: atoms plus combinators, parentheses excluded.
    pub fn morpheme_count(&self) -> usize {
        self.atom_count() + self.combinator_count()
    }

    /// Visits every atom value left to right.
    pub fn for_each_atom(&self, f: &mut impl FnMut(u32)) {
        match self {
            NumeralExpr::Atom(v) => f(*v),
            NumeralExpr::Node(_, l, r) => {
                l.for_each_atom(f);
                r.for_each_atom(f);
            }
        }
    }

    pub fn uses_op(&self, op: Op) -> bool {
        match self {
            NumeralExpr::Atom(_) => false,
            NumeralExpr::Node(o, l, r) => *o == op || l.uses_op(op) || r.uses_op(op),
        }
    }

    /// Arithmetic value. Every intermediate value must lie in `1..=MAX_VALUE`.
    pub fn evaluate(&self) -> Result<u64, ExprError> {
        match self {
            NumeralExpr::Atom(0) => Err(ExprError::ZeroAtom),
            NumeralExpr::Atom(v) => {
                let v = u64::from(*v);
                if v > MAX_VALUE {
                    return Err(ExprError::OutOfBounds(self.to_string()));
                }
                Ok(v)
            }
            NumeralExpr::Node(op, l, r) => {
                let (a, b) = (l.evaluate()?, r.evaluate()?);
                let value = match op {
                    Op::Plus => a + b,
                    Op::Times => a * b,
                    Op::Minus if a > b => a - b,
                    Op::Minus => return Err(ExprError::NonPositive(self.to_string())),
                };
                if value > MAX_VALUE {
                    return Err(ExprError::OutOfBounds(self.to_string()));
                }
                Ok(value)
            }
        }
    }

    /// Infix token sequence with the minimum parentheses that [`parse_tokens`]
    /// needs to rebuild the same tree.
    pub fn linearize(&self) -> Vec<Morpheme> {
        let mut out = Vec::with_capacity(2 * self.atom_count());
        self.write_tokens(&mut out);
        out
    }

    fn write_tokens(&self, out: &mut Vec<Morpheme>) {
        match self {
            NumeralExpr::Atom(v) => out.push(Morpheme::Atom(*v)),
            NumeralExpr::Node(op, l, r) => {
                let wrap_left = l.top_op().is_some_and(Op::is_additive);
                let wrap_right = *op == Op::Times && r.top_op().is_some();
                write_maybe_wrapped(l, wrap_left, out);
                out.push(Morpheme::Op(*op));
                write_maybe_wrapped(r, wrap_right, out);
            }
        }
    }

    fn top_op(&self) -> Option<Op> {
        match self {
            NumeralExpr::Atom(_) => None,
            NumeralExpr::Node(op, _, _) => Some(*op),
        }
    }
}

fn write_maybe_wrapped(e: &NumeralExpr, wrap: bool, out: &mut Vec<Morpheme>) {
    if wrap {
        out.push(Morpheme::Open);
        e.write_tokens(out);
        out.push(Morpheme::Close);
    } else {
        e.write_tokens(out);
    }
}

impl fmt::Display for NumeralExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_tokens(&self.linearize()))
    }
}

impl core::str::FromStr for NumeralExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_tokens(&tokenize(s)?)
    }
}

/// Space-separated token string.
pub fn format_tokens(tokens: &[Morpheme]) -> String {
    let mut s = String::new();
    for (i, t) in tokens.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        s.push_str(&t.to_string());
    }
    s
}

/// Splits a whitespace-separated token string. Accepts `−` for minus.
pub fn tokenize(s: &str) -> Result<Vec<Morpheme>, ParseError> {
    s.split_whitespace()
        .map(|t| match t {
            "+" => Ok(Morpheme::Op(Op::Plus)),
            "-" | "\u{2212}" => Ok(Morpheme::Op(Op::Minus)),
            "*" => Ok(Morpheme::Op(Op::Times)),
            "(" => Ok(Morpheme::Open),
            ")" => Ok(Morpheme::Close),
            _ => match t.parse::<u32>() {
                Ok(v) if v > 0 => Ok(Morpheme::Atom(v)),
                _ => Err(ParseError::BadToken(t.to_string())),
            },
        })
        .collect()
}

/// Inverse of [`NumeralExpr::linearize`].
pub fn parse_tokens(tokens: &[Morpheme]) -> Result<NumeralExpr, ParseError> {
    if tokens.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut p = Parser { tokens, pos: 0 };
    let expr = p.sum()?;
    match p.peek() {
        None => Ok(expr),
        Some(Morpheme::Close) => Err(ParseError::UnbalancedParens),
        Some(token) => Err(ParseError::Unexpected { token, position: p.pos }),
    }
}

struct Parser<'a> {
    tokens: &'a [Morpheme],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<Morpheme> {
        self.tokens.get(self.pos).copied()
    }

    // sum := product (('+' | '-') sum)?
    fn sum(&mut self) -> Result<NumeralExpr, ParseError> {
        let left = self.product()?;
        match self.peek() {
            Some(Morpheme::Op(op)) if op.is_additive() => {
                self.pos += 1;
                let right = self.sum()?;
                Ok(NumeralExpr::node(op, left, right))
            }
            _ => Ok(left),
        }
    }

    // product := primary ('*' primary)*
    fn product(&mut self) -> Result<NumeralExpr, ParseError> {
        let mut left = self.primary()?;
        while let Some(Morpheme::Op(Op::Times)) = self.peek() {
            self.pos += 1;
            let right = self.primary()?;
            left = NumeralExpr::times(left, right);
        }
        Ok(left)
    }

    fn primary(&mut self) -> Result<NumeralExpr, ParseError> {
        let position = self.pos;
        match self.peek() {
            Some(Morpheme::Atom(v)) => {
                self.pos += 1;
                Ok(NumeralExpr::Atom(v))
            }
            Some(Morpheme::Open) => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(Morpheme::Close) {
                    return Err(ParseError::UnbalancedParens);
                }
                self.pos += 1;
                Ok(inner)
            }
            None if position > 0 => match self.tokens[position - 1] {
                Morpheme::Op(_) => Err(ParseError::DanglingCombinator(position - 1)),
                _ => Err(ParseError::UnbalancedParens),
            },
            None => Err(ParseError::Empty),
            Some(Morpheme::Op(_)) if position > 0 && matches!(self.tokens[position - 1], Morpheme::Op(_)) => {
                Err(ParseError::DanglingCombinator(position - 1))
            }
            Some(token) => Err(ParseError::Unexpected { token, position }),
        }
    }
}
