pub mod cli;
pub mod closeknit;
pub mod diffusion;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod mdl;
pub mod ramsey;
pub mod sierpinski;

pub use error::{Error, Result};
pub use graph::{ComponentPartition, EdgeBitString, LabeledGraph, TwoColoring, VertexSubset};
