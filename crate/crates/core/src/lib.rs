pub mod arcs;
pub mod bench;
pub mod cli;
pub mod disk_general;
pub mod disk_line;
pub mod error;
pub mod generate;
pub mod geometry;
pub mod graph;
pub mod interval;
pub mod io;
pub mod oracle;
pub mod ptas;
pub mod rational;
pub mod rect;
pub mod reduce;
pub mod solution;
pub mod solve;

pub use error::{Error, Result};
pub use geometry::{Arc, DiskScene, Interval, Kind, Point, Rect, Scene};
pub use graph::{Coloring, IntersectionGraph};
pub use rational::Rational;
pub use solution::Solution;
