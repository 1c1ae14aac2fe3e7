//! Clifford+T arithmetic circuit generation and T-count optimization with
//! the ZX-calculus.
//!
//! The pipeline is [`arithgen`] → [`qasm`] → [`zx::ZxDiagram::from_circuit`]
//! → [`rewrite::full_simplify`] → [`extract::extract_circuit`], with
//! [`verify`] checking the result. [`pipeline::optimize`] runs it end to end.

pub mod arithgen;
pub mod circuit;
pub mod extract;
pub mod phase;
pub mod pipeline;
pub mod qasm;
pub mod rewrite;
pub mod verify;
pub mod zx;

pub use circuit::{Circuit, Gate, GateKind, ResourceReport};
pub use phase::Phase;
pub use zx::ZxDiagram;
