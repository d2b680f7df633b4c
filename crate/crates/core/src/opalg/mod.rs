//! Operator algebras: PBW-ordered words with Lie-type swap rules, and
//! differential operators over polynomial coefficient rings.

mod diffop;
mod words;

pub use diffop::{diffop_commutator, diffop_i_over_hbar, DiffOpPoly, DiffRing, Ring};
pub use words::{
    commutator, confluence_probe, i_over_hbar_commutator, op_algebra, ConfluenceReport, OpAlgebra,
    OpAlgebraKind, OpAlgebraSpec, OpPoly, Word,
};
