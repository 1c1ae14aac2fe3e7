//! ZX-diagrams: representation, translation from circuits, graph-like
//! normalization and dense tensor evaluation.

mod convert;
mod diagram;
mod tensor;

use thiserror::Error;

pub use convert::{from_circuit, to_graph_like};
pub use diagram::{EdgeType, Edges, Spider, SpiderId, SpiderKind, ZxDiagram};
pub use tensor::{Tensor, DEFAULT_TENSOR_BOUND, ZERO_FLOOR};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZxError {
    #[error("gate {index} is a Toffoli; expand it to Clifford+T first")]
    Toffoli { index: usize },
    #[error("tensor contraction needs a {width}-index intermediate, bound is {bound}")]
    TensorTooLarge { width: usize, bound: usize },
}
