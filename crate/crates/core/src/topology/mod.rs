//! Winding numbers, separation by components, and the shape of curves of fixed points.

mod classify;
mod obstruction;
mod winding;

pub use classify::{classify_component, default_tol, Classification, ClassifyReport};
pub use obstruction::{components_near, lemma5_obstruction, DiscRegion, ObstructionCase};
pub use winding::{separation_witness, winding_number, Polyline, SeparationWitness};
