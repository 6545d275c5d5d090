//! Modal languages over RCC8 and RCC5: syntax, macro expansion, model
//! checking on finite region structures, bounded satisfiability, and
//! instances of the axiom schemata.

mod ast;
mod axioms;
mod eval;
mod expand;
mod parse;
mod search;

use thiserror::Error;

use crate::algebra::{BaseRelation, Kind};

pub use ast::{Formula, Modality};
pub use axioms::{apply_cov, axiom_instance, rule_cov_check, Axiom, SchemaId};
pub use eval::{check, check_named, extension, sat_in, valid_in, Checker, Compiled};
pub use expand::{expand, is_core};
pub use parse::parse;
pub use search::{bounded_sat, network_to_formula, Witness, MAX_SEARCH_REGIONS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogicError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown modality `{0}`")]
    UnknownModality(String),
    #[error("relation {0} is not in the {1} alphabet")]
    WrongAlphabet(BaseRelation, Kind),
    #[error("operator `{0}` is only defined over RCC8")]
    MacroNeedsRcc8(&'static str),
    #[error("unknown region `{0}`")]
    UnknownRegion(String),
    #[error("search bound {0} exceeds the maximum of {1} regions")]
    BoundExceeded(usize, usize),
    #[error("unknown axiom schema `{0}`")]
    UnknownSchema(String),
    #[error("invalid axiom instance: {0}")]
    InvalidInstance(String),
    #[error("formula compiled for {0} evaluated on a {1} structure")]
    KindMismatch(Kind, Kind),
    #[error("SAT backend failure: {0}")]
    Backend(String),
}
