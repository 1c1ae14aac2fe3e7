//! End-to-end optimization: expand Toffolis, translate to a diagram,
//! simplify, extract, decompose phases and check the result.

use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::arithgen::expand_toffolis;
use crate::circuit::{Circuit, ResourceReport};
use crate::extract::{decompose_phases, extract_circuit, ExtractError};
use crate::rewrite::{full_simplify_traced, TraceRecord};
use crate::verify::{
    adjoint_reduce_check, equal_on_basis, equal_unitary, VerifyError, ZxVerdict,
    MAX_UNITARY_QUBITS,
};
use crate::zx::{ZxDiagram, ZxError};

/// Widest circuit checked by simulation when no mode is forced.
pub const AUTO_SIMULATION_QUBITS: usize = 14;
/// Number of basis inputs sampled by the basis check.
pub const BASIS_SAMPLE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verification {
    Skipped,
    /// Equal up to global phase, by full unitary or diagram reduction.
    Equivalent,
    /// The diagram check did not reduce to the identity.
    Unknown,
    /// Agreement on this many basis inputs.
    Checked(usize),
    NotEquivalent,
}

impl Verification {
    /// Whether no check found a difference and one actually ran.
    pub fn passed(self) -> bool {
        matches!(self, Verification::Equivalent | Verification::Checked(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    /// Unitary up to 12 qubits, sampled basis states up to 14, diagram
    /// reduction above.
    Auto,
    Unitary,
    Basis,
    Zx,
    Off,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub before: ResourceReport,
    pub after: ResourceReport,
    pub t_reduction_percent: f64,
    pub wall_time_ms: u64,
    pub verification: Verification,
}

#[derive(Clone, Debug)]
pub struct Optimized {
    pub circuit: Circuit,
    pub report: RunReport,
    /// Empty unless tracing was requested.
    pub trace: Vec<TraceRecord>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error(transparent)]
    Zx(#[from] ZxError),
    #[error(transparent)]
    Extract(#[from] ExtractError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

pub fn t_reduction_percent(before: usize, after: usize) -> f64 {
    if before == 0 {
        0.0
    } else {
        100.0 * (before as f64 - after as f64) / before as f64
    }
}

/// Deterministic spread of basis indices over an `n`-qubit register,
/// always including 0.
pub fn basis_sample(n: usize, count: usize) -> Vec<usize> {
    let size = 1u64 << n;
    if size as usize <= count {
        return (0..size as usize).collect();
    }
    let mut out: Vec<usize> = (0..count as u64)
        .map(|k| (k.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> (64 - n)) as usize)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Checks `a` against `b` in the requested mode.
pub fn verify_circuits(a: &Circuit, b: &Circuit, mode: VerifyMode) -> Result<Verification, VerifyError> {
    let n = a.qubit_count();
    let mode = match mode {
        VerifyMode::Auto if n <= MAX_UNITARY_QUBITS => VerifyMode::Unitary,
        VerifyMode::Auto if n <= AUTO_SIMULATION_QUBITS => VerifyMode::Basis,
        VerifyMode::Auto => VerifyMode::Zx,
        m => m,
    };
    let verdict = |ok: bool, yes: Verification| if ok { yes } else { Verification::NotEquivalent };
    Ok(match mode {
        VerifyMode::Off => Verification::Skipped,
        VerifyMode::Unitary => verdict(equal_unitary(a, b)?, Verification::Equivalent),
        VerifyMode::Basis => {
            let inputs = basis_sample(n, BASIS_SAMPLE);
            verdict(equal_on_basis(a, b, &inputs)?, Verification::Checked(inputs.len()))
        }
        VerifyMode::Zx => match adjoint_reduce_check(a, b)? {
            ZxVerdict::Equivalent => Verification::Equivalent,
            ZxVerdict::Unknown => Verification::Unknown,
        },
        VerifyMode::Auto => unreachable!(),
    })
}

pub fn optimize(circuit: &Circuit) -> Result<Optimized, PipelineError> {
    optimize_with(circuit, VerifyMode::Auto, false)
}

/// Runs the pipeline. Resource counts before optimization are taken after
/// Toffoli expansion so T-counts compare like with like.
pub fn optimize_with(circuit: &Circuit, verify: VerifyMode, trace: bool) -> Result<Optimized, PipelineError> {
    let start = Instant::now();
    let input = expand_toffolis(circuit);
    let mut d = ZxDiagram::from_circuit(&input)?;
    let mut records = Vec::new();
    full_simplify_traced(&mut d, &mut records);
    if !trace {
        records = Vec::new();
    }
    let out = decompose_phases(&extract_circuit(&d)?)?;
    let wall_time_ms = start.elapsed().as_millis() as u64;
    let verification = verify_circuits(&input, &out, verify)?;
    let (before, after) = (input.count_resources(), out.count_resources());
    Ok(Optimized {
        report: RunReport {
            before,
            after,
            t_reduction_percent: t_reduction_percent(before.t_count, after.t_count),
            wall_time_ms,
            verification,
        },
        circuit: out,
        trace: records,
    })
}
