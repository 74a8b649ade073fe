//! Decide when a twisted right-angled Artin group (TRAAG) embeds into a knot
//! group, and build and check the explicit sink-star embeddings into torus
//! knot and cable space groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`mixed_graph`]: mixed graphs, parsing, component classification.
//! - [`presentation`]: TRAAG presentations and abelianization via Smith normal form.
//! - [`knot_jsj`]: JSJ descriptors of knot exteriors and the case predicates.
//! - [`decision`]: the embeddability decision engine.
//! - [`amalgam`]: exact normal forms in torus knot and cable space groups.
//! - [`embedding`]: the sink-star embedding and its bounded verification.
//! - [`cli`]: the `traag` command-line front end.

pub mod amalgam;
pub mod cli;
pub mod decision;
pub mod embedding;
pub mod knot_jsj;
pub mod mixed_graph;
pub mod presentation;

pub use amalgam::{AmalgamNormalForm, GroupSpec, GroupWord};
pub use decision::{decide, Rule, Verdict};
pub use embedding::{Assignment, SinkStarElement};
pub use knot_jsj::{KnotCase, KnotJsj, Piece};
pub use mixed_graph::{ComponentClass, GraphShape, MixedGraph};
pub use presentation::{AbelianInvariants, Presentation, Word};
