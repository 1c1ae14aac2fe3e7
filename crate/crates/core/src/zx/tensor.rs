use std::collections::BTreeSet;

use num_complex::Complex64;

use super::{SpiderKind, ZxDiagram, ZxError};

/// Largest number of indices any intermediate factor may carry.
pub const DEFAULT_TENSOR_BOUND: usize = 24;

/// Tensors whose largest entry is below this are treated as zero, so that
/// rounding noise on a vanishing diagram does not count as a difference.
pub const ZERO_FLOOR: f64 = 1e-12;

/// A dense `2^outputs × 2^inputs` matrix. Row and column indices are
/// little-endian in the boundary order.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    outputs: usize,
    inputs: usize,
    data: Vec<Complex64>,
}

impl Tensor {
    pub fn from_fn(outputs: usize, inputs: usize, f: impl Fn(usize, usize) -> Complex64) -> Tensor {
        let mut data = Vec::with_capacity(1 << (outputs + inputs));
        for row in 0..1usize << outputs {
            for col in 0..1usize << inputs {
                data.push(f(row, col));
            }
        }
        Tensor {
            outputs,
            inputs,
            data,
        }
    }

    pub fn output_count(&self) -> usize {
        self.outputs
    }

    pub fn input_count(&self) -> usize {
        self.inputs
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[(row << self.inputs) | col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// `max |λ·self − other| / max |other|` for the `λ` fixed by the
    /// largest entry of `self`; infinite when the shapes differ or exactly
    /// one side vanishes (see [`ZERO_FLOOR`]).
    pub fn deviation_up_to_scalar(&self, other: &Tensor) -> f64 {
        if (self.outputs, self.inputs) != (other.outputs, other.inputs) {
            return f64::INFINITY;
        }
        let argmax = |t: &Tensor| {
            t.data
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
                .map(|(i, a)| (i, a.norm()))
                .unwrap()
        };
        let (i, a_max) = argmax(self);
        let (_, b_max) = argmax(other);
        match (a_max < ZERO_FLOOR, b_max < ZERO_FLOOR) {
            (true, true) => return 0.0,
            (true, false) | (false, true) => return f64::INFINITY,
            _ => {}
        }
        let lambda = other.data[i] / self.data[i];
        if lambda.norm() == 0.0 {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a * lambda - b).norm())
            .fold(0.0, f64::max)
            / b_max
    }

    /// Equality up to a nonzero scalar within relative tolerance `1e-9`.
    pub fn proportional(&self, other: &Tensor) -> bool {
        self.deviation_up_to_scalar(other) < crate::verify::TOLERANCE
    }
}

struct Factor {
    vars: Vec<usize>,
    table: Vec<Complex64>,
}

impl Factor {
    fn index(&self, assignment: &[u8]) -> usize {
        self.vars
            .iter()
            .enumerate()
            .map(|(k, &v)| (assignment[v] as usize) << k)
            .sum()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

impl ZxDiagram {
    pub fn tensor(&self) -> Result<Tensor, ZxError> {
        self.tensor_with_bound(DEFAULT_TENSOR_BOUND)
    }

    /// Contracts the diagram by variable elimination. Every X spider is
    /// read as a Z spider with toggled edges, spiders joined by plain edges
    /// share one index, and each Hadamard edge is a 2×2 factor.
    pub fn tensor_with_bound(&self, bound: usize) -> Result<Tensor, ZxError> {
        let n = self.id_bound();
        let is_x = |v: usize| self.kind(v) == SpiderKind::X;
        let mut uf = UnionFind((0..n).collect());
        let mut had_edges = Vec::new();
        for (u, v, e) in self.edge_list() {
            let flip = u != v && (is_x(u) != is_x(v));
            let (plain, had) = if flip {
                (e.hadamard, e.plain)
            } else {
                (e.plain, e.hadamard)
            };
            if plain > 0 && u != v {
                uf.union(u, v);
            }
            if had > 0 {
                had_edges.push((u, v, had));
            }
        }

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let one = Complex64::new(1.0, 0.0);
        let mut factors = Vec::new();
        for v in self.spider_ids() {
            let p = self.phase(v);
            if !p.is_zero() {
                factors.push(Factor {
                    vars: vec![uf.find(v)],
                    table: vec![one, Complex64::from_polar(1.0, p.to_radians())],
                });
            }
        }
        for (u, v, h) in had_edges {
            let (a, b) = (uf.find(u), uf.find(v));
            let scale = s.powi(h as i32);
            let sign = if h % 2 == 1 { -scale } else { scale };
            let c = |x: f64| Complex64::new(x, 0.0);
            if a == b {
                factors.push(Factor {
                    vars: vec![a],
                    table: vec![c(scale), c(sign)],
                });
            } else {
                factors.push(Factor {
                    vars: vec![a, b],
                    table: vec![c(scale), c(scale), c(scale), c(sign)],
                });
            }
        }

        let boundary_vars: BTreeSet<usize> = self
            .inputs()
            .iter()
            .chain(self.outputs())
            .map(|&b| uf.find(b))
            .collect();
        let mut free: BTreeSet<usize> = self
            .spider_ids()
            .map(|v| uf.find(v))
            .filter(|v| !boundary_vars.contains(v))
            .collect();
        // A free index with no factor contributes a factor 2, which is a
        // scalar; only indices touched by factors need eliminating.
        let mut scalar = one;
        while !free.is_empty() {
            let (var, width) = free
                .iter()
                .map(|&v| {
                    let mut vars = BTreeSet::new();
                    for f in factors.iter().filter(|f| f.vars.contains(&v)) {
                        vars.extend(f.vars.iter().copied());
                    }
                    (v, vars.len())
                })
                .min_by_key(|&(v, w)| (w, v))
                .unwrap();
            if width > bound {
                return Err(ZxError::TensorTooLarge { width, bound });
            }
            free.remove(&var);
            let (touching, rest): (Vec<Factor>, Vec<Factor>) =
                factors.into_iter().partition(|f| f.vars.contains(&var));
            factors = rest;
            if touching.is_empty() {
                scalar *= 2.0;
                continue;
            }
            let out_vars: Vec<usize> = touching
                .iter()
                .flat_map(|f| f.vars.iter().copied())
                .filter(|&v| v != var)
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            let mut assignment = vec![0u8; n];
            let mut table = Vec::with_capacity(1 << out_vars.len());
            for idx in 0..1usize << out_vars.len() {
                for (k, &v) in out_vars.iter().enumerate() {
                    assignment[v] = ((idx >> k) & 1) as u8;
                }
                let mut sum = Complex64::new(0.0, 0.0);
                for x in 0..2u8 {
                    assignment[var] = x;
                    let mut prod = one;
                    for f in &touching {
                        prod *= f.table[f.index(&assignment)];
                    }
                    sum += prod;
                }
                table.push(sum);
            }
            if out_vars.is_empty() {
                scalar *= table[0];
            } else {
                factors.push(Factor {
                    vars: out_vars,
                    table,
                });
            }
        }

        if boundary_vars.len() > bound {
            return Err(ZxError::TensorTooLarge {
                width: boundary_vars.len(),
                bound,
            });
        }
        let ins: Vec<usize> = self.inputs().iter().map(|&b| uf.find(b)).collect();
        let outs: Vec<usize> = self.outputs().iter().map(|&b| uf.find(b)).collect();
        Ok(Tensor::from_fn(outs.len(), ins.len(), |row, col| {
            let mut set = vec![None; n];
            let bits = outs
                .iter()
                .enumerate()
                .map(|(k, &v)| (v, (row >> k) & 1))
                .chain(ins.iter().enumerate().map(|(k, &v)| (v, (col >> k) & 1)));
            for (v, b) in bits {
                match set[v] {
                    Some(prev) if prev != b => return Complex64::new(0.0, 0.0),
                    _ => set[v] = Some(b),
                }
            }
            let mut local = vec![0u8; n];
            for (v, b) in set.iter().enumerate() {
                if let Some(b) = b {
                    local[v] = *b as u8;
                }
            }
            let mut prod = scalar;
            for f in &factors {
                prod *= f.table[f.index(&local)];
            }
            prod
        }))
    }
}
