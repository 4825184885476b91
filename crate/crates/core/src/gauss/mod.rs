//! Gauss codes, Gauss diagrams of virtual links, short arcs and moves.

mod arcs;
mod code;
mod diagram;
mod moves;

pub use arcs::{short_arcs, ArcConvention, ShortArcStructure};
pub use code::{GaussCode, Passage, Sign, Token};
pub use diagram::{Chord, ComponentRole, Endpoint, GaussDiagram, SlotRef};
pub use moves::{r3_patterns, R1Kind, R2Orientation, R3Pattern};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaussError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid crossing {label}: {reason}")]
    Validation { label: u32, reason: String },
    #[error("diagram has no crossings")]
    NoCrossings,
    #[error("index {0} out of range")]
    BadIndex(usize),
    #[error("move not applicable: {0}")]
    NotApplicable(String),
}

/// Parses a Gauss code and builds its diagram.
pub fn parse_diagram(text: &str) -> Result<GaussDiagram, GaussError> {
    Ok(GaussDiagram::from_code(&text.parse()?))
}
