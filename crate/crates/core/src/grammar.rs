//! Hurford grammar instances: digits `D`, multipliers `M`, combinators `C`
//! and the atom budget per numeral.

use alloc::collections::BTreeSet;

use crate::expr::{NumeralExpr, Op};

/// Default atom budget: at most five number morphemes per numeral.
pub const DEFAULT_MAX_DEPTH: u32 = 5;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GrammarError {
    #[error("digit set is empty")]
    NoDigits,
    #[error("multiplier set is empty")]
    NoMultipliers,
    #[error("atom values must be positive")]
    ZeroAtom,
    #[error("max depth must be at least 1")]
    ZeroDepth,
}

/// A `(D, M, C)` grammar with a depth limit counted in number atoms.
///
/// `+` and `*` are always available; `-` is optional. A value may be both a
/// digit and a multiplier, its role is positional.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GrammarParams {
    digits: BTreeSet<u32>,
    multipliers: BTreeSet<u32>,
    minus: bool,
    max_depth: u32,
}

impl GrammarParams {
    pub fn new(
        digits: impl IntoIterator<Item = u32>,
        multipliers: impl IntoIterator<Item = u32>,
        minus: bool,
        max_depth: u32,
    ) -> Result<Self, GrammarError> {
        let digits: BTreeSet<u32> = digits.into_iter().collect();
        let multipliers: BTreeSet<u32> = multipliers.into_iter().collect();
        if digits.is_empty() {
            return Err(GrammarError::NoDigits);
        }
        if multipliers.is_empty() {
            return Err(GrammarError::NoMultipliers);
        }
        if digits.contains(&0) || multipliers.contains(&0) {
            return Err(GrammarError::ZeroAtom);
        }
        if max_depth == 0 {
            return Err(GrammarError::ZeroDepth);
        }
        Ok(GrammarParams { digits, multipliers, minus, max_depth })
    }

    pub fn digits(&self) -> &BTreeSet<u32> {
        &self.digits
    }

    pub fn multipliers(&self) -> &BTreeSet<u32> {
        &self.multipliers
    }

    pub fn allows_minus(&self) -> bool {
        self.minus
    }

    pub fn allows(&self, op: Op) -> bool {
        op != Op::Minus || self.minus
    }

    pub fn max_depth(&self) -> u32 {
        self.max_depth
    }

    pub fn with_max_depth(mut self, max_depth: u32) -> Self {
        self.max_depth = max_depth.max(1);
        self
    }

    /// Combinator symbols in `C`, e.g. `+*` or `+-*`.
    pub fn combinator_label(&self) -> &'static str {
        if self.minus {
            "+-*"
        } else {
            "+*"
        }
    }

    pub fn is_atom(&self, v: u32) -> bool {
        self.digits.contains(&v) || self.multipliers.contains(&v)
    }

    /// Number of distinct single-morpheme meanings, `|D ∪ M|`.
    pub fn lexicon_size(&self) -> usize {
        self.digits.union(&self.multipliers).count()
    }

    /// True when `expr` is derivable from `Num` in this grammar, ignoring the
    /// depth limit.
    pub fn conforms(&self, expr: &NumeralExpr) -> bool {
        self.is_num(expr)
    }

    fn is_num(&self, e: &NumeralExpr) -> bool {
        match e {
            NumeralExpr::Atom(v) => self.is_atom(*v),
            NumeralExpr::Node(Op::Times, ..) => self.is_phrase(e),
            NumeralExpr::Node(op, l, r) => self.allows(*op) && self.is_phrase(l) && self.is_num(r),
        }
    }

    fn is_phrase(&self, e: &NumeralExpr) -> bool {
        match e {
            NumeralExpr::Atom(v) => self.multipliers.contains(v),
            NumeralExpr::Node(Op::Times, l, r) => matches!(**r, NumeralExpr::Atom(m) if self.multipliers.contains(&m)) && self.is_num(l),
            NumeralExpr::Node(..) => false,
        }
    }
}

/// Atom values of `expr` split by grammatical role.
///
/// Multiplier positions are the right operand of `*` and an atom standing as
/// the left operand of `+`/`-` (`Phrase -> M`). Every other atom sits in a
/// `Num` position.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AtomRoles {
    pub multiplier_positions: BTreeSet<u32>,
    pub num_positions: BTreeSet<u32>,
}

impl AtomRoles {
    pub fn add(&mut self, expr: &NumeralExpr) {
        match expr {
            NumeralExpr::Atom(v) => {
                self.num_positions.insert(*v);
            }
            NumeralExpr::Node(op, l, r) => {
                match (op, &**l, &**r) {
                    (Op::Times, _, NumeralExpr::Atom(m)) => {
                        self.multiplier_positions.insert(*m);
                        self.add(l);
                        return;
                    }
                    (Op::Plus | Op::Minus, NumeralExpr::Atom(m), _) => {
                        self.multiplier_positions.insert(*m);
                        self.add(r);
                        return;
                    }
                    _ => {}
                }
                self.add(l);
                self.add(r);
            }
        }
    }

    /// Digits are the `Num`-position atoms that never occur as multipliers;
    /// a bare multiplier is a valid `Num` through `Phrase -> M`.
    pub fn digits(&self) -> BTreeSet<u32> {
        self.num_positions.difference(&self.multiplier_positions).copied().collect()
    }
}
