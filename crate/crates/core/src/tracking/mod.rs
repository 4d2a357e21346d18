//! Eigenvalue branches along curves and their close approaches.

mod assignment;
mod events;
mod geometry;
mod path;

pub use assignment::min_cost_assignment;
pub use events::{detect_events, detect_events_with, Classification, EventOptions, EventTarget, GapEvent};
pub use geometry::Metric;
pub use path::{track, SpectralPath};
