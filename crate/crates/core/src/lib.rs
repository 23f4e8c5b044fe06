//! Combinatorics of the lattice path operad.
//!
//! Operations are bar-strings (`1|12|21`): colour tokens for sources and
//! vertical bars for the target arity. On top of the string model this crate
//! provides the complexity filtration, the join of two operations along cut
//! bars, budgeted generation of the suboperads `Ĥ_m`, A/B/C labellings and
//! their underlying graphs, order-complex homology of labelling posets, and
//! the C-insertion lifting for `m ≤ 3`.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, sampling and
//! the command line live in the `latticepath` crate.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod enumerate;
pub mod graph;
pub mod hat;
pub mod homology;
pub mod join;
pub mod label;
pub mod lift;
pub mod nerve;
pub mod path;
pub mod tree;

pub use graph::Digraph;
pub use hat::{generate, GenTable, HatOracle, JoinClosure, Membership, Witness};
pub use homology::{reduced_homology, Complex, HomologyReport};
pub use join::{join, CutTuple, JoinResult, Side};
pub use label::{Label, LabelledOp};
pub use lift::{erase_colours, lift_identity, LiftResult, Lifter};
pub use nerve::{contractibility_verdict, decompose_at_vertex, lifting_graph, proper_labellings, LabelPoset, Verdict};
pub use path::{PathError, PathOp, Permutation, Token};
pub use tree::BWTree;
