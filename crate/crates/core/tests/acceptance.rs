//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Runs without the libtest harness so the report is always printed.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zxopt::arithgen::{
    conditional_adder, multiplier, multiplier_toffoli_count, toffoli_clifford_t, MultiplierLayout,
};
use zxopt::extract::extract_circuit;
use zxopt::pipeline::{optimize_with, Optimized, VerifyMode};
use zxopt::qasm::{emit_qasm, parse_qasm};
use zxopt::rewrite::{apply_rule, find_sites, full_simplify, RewriteRule};
use zxopt::verify::{adjoint_reduce_check, simulate, ZxVerdict};
use zxopt::{Circuit, Gate, ZxDiagram};

/// Reference values for the 6-bit multiplier.
const REF_T_BEFORE: usize = 742;
const REF_T_AFTER: usize = 488;
const REF_CLIFFORD_BEFORE: usize = 1044;
const REF_CLIFFORD_AFTER: usize = 2328;

const T_BOUND: usize = 560;
const TOL: f64 = 1e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, limit: Duration) -> bool {
    elapsed <= limit
}

fn resource_formulas() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in 2..=8 {
        let c = multiplier(n).unwrap();
        let layout = MultiplierLayout::new(n).unwrap();
        let t = c.count_resources().t_count;
        let toffolis = multiplier_toffoli_count(n);
        if t != 21 * n * n - 14 || 7 * toffolis != t {
            bad.push(format!("n={n} t={t}"));
        }
        if layout.ancilla_count() != 2 * n + 1 || c.qubit_count() != 4 * n + 1 {
            bad.push(format!("n={n} width"));
        }
    }
    let six = multiplier(6).unwrap();
    let detail = format!(
        "n=6: t={} ancilla={} qubits={} (21n²−14, 2n+1, 4n+1 for n=2..8){}",
        six.count_resources().t_count,
        MultiplierLayout::new(6).unwrap().ancilla_count(),
        six.qubit_count(),
        if bad.is_empty() { String::new() } else { format!("; mismatches {bad:?}") }
    );
    outcome(bad.is_empty() && within(start.elapsed(), Duration::from_secs(1)), detail)
}

fn component_counts() -> Outcome {
    let adder = conditional_adder(6).unwrap().count_resources().t_count;
    let six = multiplier(6).unwrap();
    // the Toffoli array is the first six 15-gate blocks
    let array = Circuit::from_gates(six.qubit_count(), six.gates()[..6 * 15].iter().copied()).unwrap();
    let array_t = array.count_resources().t_count;
    outcome(
        adder == 140 && array_t == 42,
        format!("adder(6) t={adder} (want 140), Toffoli array t={array_t} (want 42)"),
    )
}

fn t_optimization(run: &Optimized, again: &Optimized, elapsed: Duration) -> Outcome {
    let (before, after) = (run.report.before.t_count, run.report.after.t_count);
    let stable = run.circuit == again.circuit && after == again.report.after.t_count;
    outcome(
        before == REF_T_BEFORE && after <= T_BOUND && stable && within(elapsed, Duration::from_secs(300)),
        format!(
            "t {before} → {after} ({:.1}% reduction, bound ≤ {T_BOUND}); reference {REF_T_BEFORE} → {REF_T_AFTER}; \
             repeat run identical: {stable}; {:.2?}",
            run.report.t_reduction_percent, elapsed
        ),
    )
}

/// Amplitude of `|a·b⟩` for every `(a, b)` on `circuit`.
fn multiplies(circuit: &Circuit, n: usize) -> bool {
    let layout = MultiplierLayout::new(n).unwrap();
    (0..1u64 << n).all(|a| {
        (0..1u64 << n).all(|b| {
            let s = simulate(circuit, layout.input_index(a, b)).unwrap();
            (s.amplitudes()[layout.output_index(a, b)].norm() - 1.0).abs() < TOL
        })
    })
}

fn small_scale() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut pass = true;
    for n in [2, 3] {
        let c = multiplier(n).unwrap();
        let opt = optimize_with(&c, VerifyMode::Off, false).unwrap().circuit;
        let ok = multiplies(&c, n) && multiplies(&opt, n);
        pass &= ok;
        parts.push(format!("n={n}: {} pairs {}", 1 << (2 * n), if ok { "ok" } else { "wrong" }));
    }
    let elapsed = start.elapsed();
    outcome(
        pass && within(elapsed, Duration::from_secs(60)),
        format!("{}; {:.2?}", parts.join(", "), elapsed),
    )
}

fn full_scale(run: &Optimized) -> Outcome {
    let start = Instant::now();
    let verdict = adjoint_reduce_check(&multiplier(6).unwrap(), &run.circuit).unwrap();
    let elapsed = start.elapsed();
    outcome(
        verdict == ZxVerdict::Equivalent && within(elapsed, Duration::from_secs(600)),
        format!("diagram check on 25 qubits: {verdict:?}; {elapsed:.2?}"),
    )
}

fn toffoli_decomposition() -> Outcome {
    let c = toffoli_clifford_t();
    let ccx = Circuit::from_gates(3, [Gate::toffoli(0, 1, 2)]).unwrap();
    let dev = common::simulated_tensor(&c).deviation_up_to_scalar(&common::simulated_tensor(&ccx));
    let t = c.count_resources().t_count;
    outcome(dev < 1e-12 && t == 7, format!("deviation {dev:.1e} (< 1e-12), t={t}"))
}

fn rewrite_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut applied: BTreeMap<RewriteRule, usize> = BTreeMap::new();
    let (mut total, mut violations, mut worst) = (0usize, 0usize, 0.0f64);
    while total < 10_000 {
        let mut d = common::rewrite_start(&mut rng);
        for _ in 0..12 {
            if d.spider_count() > 14 || total == 10_000 {
                break;
            }
            let sites: Vec<_> = RewriteRule::ALL.iter().flat_map(|&r| find_sites(&d, r)).collect();
            if sites.is_empty() {
                break;
            }
            let site = sites[rng.gen_range(0..sites.len())];
            let before = d.tensor().unwrap();
            apply_rule(&mut d, &site).unwrap();
            let dev = before.deviation_up_to_scalar(&d.tensor().unwrap());
            worst = worst.max(dev);
            if dev >= TOL {
                violations += 1;
            }
            *applied.entry(site.rule()).or_default() += 1;
            total += 1;
        }
    }
    let mix: Vec<String> = applied.iter().map(|(r, k)| format!("{r}={k}")).collect();
    outcome(
        violations == 0 && applied.len() == RewriteRule::ALL.len(),
        format!("{total} applications, {violations} violations, worst {worst:.1e}; {}", mix.join(" ")),
    )
}

fn extraction_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut stuck, mut wrong, mut worst) = (0, 0, 0.0f64);
    for _ in 0..200 {
        let len = rng.gen_range(1..=40);
        let c = common::random_circuit(&mut rng, 5, len, false);
        let mut d = ZxDiagram::from_circuit(&c).unwrap();
        full_simplify(&mut d);
        match extract_circuit(&d) {
            Err(_) => stuck += 1,
            Ok(out) => {
                let dev = common::simulated_tensor(&c).deviation_up_to_scalar(&common::simulated_tensor(&out));
                worst = worst.max(dev);
                if dev >= TOL {
                    wrong += 1;
                }
            }
        }
    }
    outcome(
        stuck == 0 && wrong == 0,
        format!("200 circuits: {wrong} unequal, {stuck} stuck, worst deviation {worst:.1e}"),
    )
}

fn swap_example() -> Outcome {
    let c = Circuit::from_gates(2, [Gate::cnot(0, 1), Gate::cnot(1, 0), Gate::cnot(0, 1)]).unwrap();
    let mut d = ZxDiagram::from_circuit(&c).unwrap();
    full_simplify(&mut d);
    let left = d.non_boundary_count();
    let out = extract_circuit(&d).unwrap();
    let swap = Circuit::from_gates(2, [Gate::swap(0, 1)]).unwrap();
    let dev = common::simulated_tensor(&out).deviation_up_to_scalar(&common::simulated_tensor(&swap));
    outcome(
        left <= 2 && dev < TOL,
        format!("three CNOTs → {left} spiders (≤ 2), extracted circuit equals SWAP: {}", dev < TOL),
    )
}

fn qasm_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut bad = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=8);
        let len = rng.gen_range(0..=60);
        let c = common::random_circuit(&mut rng, n, len, true);
        let text = emit_qasm(&c);
        match parse_qasm(&text) {
            Ok(back) if back == c && emit_qasm(&back) == text => {}
            _ => bad += 1,
        }
    }
    outcome(bad == 0, format!("500 circuits, {bad} mismatches"))
}

fn clifford_report(run: &Optimized) -> Outcome {
    let (b, a) = (run.report.before.clifford_count, run.report.after.clifford_count);
    outcome(
        true,
        format!("clifford {b} → {a}; reference {REF_CLIFFORD_BEFORE} → {REF_CLIFFORD_AFTER} (report only)"),
    )
}

fn main() {
    let six = multiplier(6).unwrap();
    let start = Instant::now();
    let run = optimize_with(&six, VerifyMode::Off, false).unwrap();
    let elapsed = start.elapsed();
    let again = optimize_with(&six, VerifyMode::Off, false).unwrap();

    let criteria: [(&str, &dyn Fn() -> Outcome); 11] = [
        ("resource formulas", &resource_formulas),
        ("component counts", &component_counts),
        ("T-count optimization", &|| t_optimization(&run, &again, elapsed)),
        ("correctness, n = 2, 3", &small_scale),
        ("correctness, n = 6", &|| full_scale(&run)),
        ("Toffoli decomposition", &toffoli_decomposition),
        ("rewrite soundness", &rewrite_soundness),
        ("extraction round trip", &extraction_round_trip),
        ("three-CNOT example", &swap_example),
        ("QASM round trip", &qasm_round_trip),
        ("Clifford counts", &|| clifford_report(&run)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        println!(
            "criterion {:>2} {} {name}: {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
