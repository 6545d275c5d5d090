//! Reductions of tiling problems and of the three-dimensional product of S5
//! to satisfiability of region formulas, together with the model builders
//! that witness the easy direction of each reduction.

mod corpus;
mod domino;
mod formulas;
mod models;
mod s53;
mod turing;

use thiserror::Error;

use crate::logic::LogicError;
use crate::structures::StructureError;

pub use corpus::{common_superregion, grid_interval_realization, harbor_example, loeb, HarborExample};
pub use domino::{
    lambda, lambda_inv, on_floor, on_wall, right_of, tile_square, tile_triangle, triangle_size,
    up_of, DominoSystem, Shape, Tiling, TilingJson,
};
pub use formulas::{
    chi_fin_groups, chi_groups, phi_d, phi_d_fin, phi_d_fin_unguarded, phi_d_recurring, tile_var,
    ChiGroup, FinVariant,
};
pub use models::{domino_ready_violations, domready_witness, model_from_tiling, DominoReady, TilingModel};
pub use s53::{
    chi_groups_rcc5, chi_rcc5, model_from_s53, parse_s53, s53_check, s53_reduction,
    sharp_translate, S53Embedding, S53Model, World, RESERVED, S53,
};
pub use turing::{marker_machine, tm_to_domino, Move, Normalization, Transition, TuringMachine};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("a domino system needs at least one tile")]
    NoTiles,
    #[error("tile `{0}` is declared twice")]
    DuplicateTile(String),
    #[error("unknown tile `{0}`")]
    UnknownTile(String),
    #[error("the domino system has no distinguished tile {0}")]
    MissingTile(&'static str),
    #[error("positions are numbered from 1")]
    ZeroIndex,
    #[error("position {0} is outside the tiling")]
    OutsideTiling(usize),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown tape symbol `{0}`")]
    UnknownSymbol(String),
    #[error("machine is not in normal form: {}", .0.iter().map(|n| n.to_string()).collect::<Vec<_>>().join("; "))]
    Normalization(Vec<Normalization>),
    #[error("every coordinate needs at least one world")]
    EmptyCoordinate,
    #[error("world {0:?} is out of range")]
    WorldOutOfRange(World),
    #[error("variable `{0}` is reserved by the encoding")]
    ReservedVariable(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("malformed input: {0}")]
    Json(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Logic(#[from] LogicError),
}
