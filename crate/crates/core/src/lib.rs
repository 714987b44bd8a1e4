//! Weak saturation numbers and F-bootstrap percolation.

pub mod constructions;
pub mod expander;
pub mod extremal;
pub mod graph;
pub mod percolation;
pub mod rational;

pub use graph::{Edge, Graph};
pub use rational::Rational;
