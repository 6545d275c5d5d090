//! Translations between the modal language and first-order languages:
//! the two-variable fragment over region structures, and first-order
//! sentences over the rational order describing boxes by their corners.

mod fl4;
mod fo2;

use thiserror::Error;

use crate::algebra::{BaseRelation, Kind};
use crate::logic::LogicError;

pub use fl4::{
    eval_fl4, eval_fl4_at, fl4_local, modal_to_fl4, phi_r, phi_r_holds, CVar, Fl4, Fl4Model,
    Fl4Sentence, Tuple,
};
pub use fo2::{
    eval_fo, fo2_to_modal, modal_to_fo, parse_fo2, succinctness_formula, Assignment, Fo2, Var2,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TranslateError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable {0} is unassigned")]
    Unassigned(&'static str),
    #[error("relation {0} is not in the {1} alphabet")]
    WrongAlphabet(BaseRelation, Kind),
    #[error("formula has free variable {0}")]
    FreeVariable(&'static str),
    #[error("dimension {0} is not supported, expected 1 or 2")]
    UnsupportedDimension(usize),
    #[error("region {0} is not a single box")]
    NotABox(usize),
    #[error("region {0} repeats the coordinates of an earlier region")]
    DuplicateRegion(usize),
    #[error("unknown region {0}")]
    UnknownRegion(usize),
    #[error("dimensions do not match")]
    DimensionMismatch,
    #[error(transparent)]
    Logic(#[from] LogicError),
}
