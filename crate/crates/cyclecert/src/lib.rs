//! Exact verification of an explicit graph family in which no two cycles
//! share a length.
//!
//! The family is assembled from blocks glued at a single hub vertex `x`:
//! a path, plain cycles, and two families of "hub-and-spoke" gadgets (a
//! cycle through `x` plus chordal paths from `x` back to the cycle). Every
//! edge count in the construction is an affine expression `αt + βi + γ` in
//! a global parameter `t` and a per-block index `i`, so the whole graph —
//! hundreds of billions of vertices at the smallest admissible `t` — can be
//! verified by exact rational arithmetic without ever materializing it.
//!
//! The crate provides:
//!
//! * [`exactform`] — exact rationals and affine forms in `(t, i)`;
//! * [`gadget`] — hub-and-spoke templates, their symbolic cycle spectra,
//!   and concrete instantiation;
//! * [`graphcore`] — a small multigraph (loops and parallel edges allowed)
//!   with a line-oriented edge-list format;
//! * [`oracle`] — exhaustive simple-cycle enumeration, the independent
//!   brute-force cross-check for the symbolic spectrum rule;
//! * [`construction`] — the full block plan, counting identities, global
//!   cycle spectrum, and distinctness certificates;
//! * [`bounds`] — the numeric bound formulas associated with the family.
//!
//! The `cyclecert` binary exposes all of this as a CLI; see the README.

pub mod bounds;
pub mod construction;
pub mod exactform;
pub mod gadget;
pub mod graphcore;
pub mod oracle;

pub use exactform::{AffineForm, FormError, Rational};
pub use graphcore::Multigraph;
