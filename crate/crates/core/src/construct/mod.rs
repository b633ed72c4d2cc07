//! Explicit small-area movements: trivial movers, Pál joins, Perron trees,
//! needle reversal and the dimension-2 example.

mod cantor;
mod dim2;
mod needle;
mod pal;
mod perron;
mod schedule;
mod trivial;

pub use cantor::CantorSpec;
pub use dim2::{dimension2_cover, dimension2_example, dimension2_movement, dimension2_report};
pub use needle::{needle_report, needle_reversal_plan, needle_reversal_schedule, NeedleOptions, NeedlePlan};
pub use pal::{pal_join, pal_join_theta};
pub use perron::{perron_alpha, perron_pieces, perron_shifts, perron_tree, unit_triangle};
pub use schedule::{path_length, scene_gap, NeedleSchedule, Stage};
pub use trivial::{trivial_concentric_mover, trivial_parallel_mover};
