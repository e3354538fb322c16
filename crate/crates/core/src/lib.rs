//! Recursive numeral systems as finite languages.
//!
//! Numerals are trees over number atoms and the arithmetic combinators
//! `+`, `-` and `*`, generated by Hurford's grammar
//!
//! ```text
//! Num    -> D | Phrase | Phrase (+|-) Num
//! Phrase -> M | Num * M
//! ```
//!
//! A numeral system maps every number of a range to one numeral. The crate
//! infers the minimal partial DFA accepting a system's token sequences and
//! scores the system by the description length of that automaton
//! (irregularity), the prior-weighted cost of parsing each numeral through it
//! (processing complexity), lexicon size and average morphosyntactic
//! complexity. The [`search`] module explores the space of systems.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod automaton;
pub mod expr;
pub mod grammar;
pub mod hurford;
pub mod measures;
pub mod prior;
pub mod search;
pub mod system;

pub use automaton::{Automaton, AutomatonError, ParseTrace, StateId};
pub use expr::{format_tokens, tokenize, ExprError, Morpheme, NumeralExpr, Op, ParseError, MAX_VALUE};
pub use grammar::{GrammarError, GrammarParams};
pub use hurford::{EnumerationResult, Enumerator, Incomplete};
pub use measures::MeasureReport;
pub use prior::{Prior, PriorKind};
pub use system::{NumberRange, NumeralSystem, RangeParseError, Source, SystemError};
