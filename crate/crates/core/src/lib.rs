pub mod algebra;
pub mod geometry;
pub mod logic;
pub mod solver;
pub mod structures;
pub mod translate;
pub mod reductions;
pub mod suite;

/// Exact rational coordinates.
pub type Rational = num_rational::Rational64;
