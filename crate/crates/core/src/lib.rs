//! Planar rigid motions, continuous movements and the sets they sweep.
//!
//! Points of the plane are complex numbers. A [`RigidMotion`] is a map
//! `x -> u*x + c` with `|u| = 1`; a [`Movement`] is a path of rigid motions
//! starting at the identity. The [`raster`] module measures what a moving
//! [`Scene`] touches, and [`construct`] builds the classical needle, Pál join
//! and Perron tree maneuvers on top of that.

pub mod construct;
pub mod error;
pub mod motion;
pub mod movement;
pub mod raster;
pub mod report;
pub mod topology;
pub mod venetian;
pub mod verify;

pub use error::{Error, Result};
pub use motion::{AffineMap, Point, RigidMotion};
pub use movement::Movement;
pub use raster::{GridSpec, Primitive, RasterMask, Scene};
pub use report::{BoundReport, ConstructionReport, InequalityCheck};
