//! OpenQASM 2.0 subset: parsing into a [`Circuit`] and deterministic emission.
//!
//! Quantum registers are flattened into one index space in declaration
//! order. Classical registers, `measure` and `barrier` are accepted and
//! dropped; the returned document records a warning for each.

use std::fmt::Write as _;

use num_integer::Integer;
use thiserror::Error;

use crate::circuit::{Circuit, CircuitError, Gate, GateKind};
use crate::phase::Phase;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QasmError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: unknown gate `{name}`")]
    UnknownGate { line: usize, col: usize, name: String },
    #[error("{line}:{col}: {msg}")]
    Register { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: angle is not a rational multiple of pi")]
    Angle { line: usize, col: usize },
    #[error("{line}:{col}: {source}")]
    Gate {
        line: usize,
        col: usize,
        source: CircuitError,
    },
    #[error("no quantum register declared")]
    NoQubits,
}

/// A parsed QASM program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QasmDocument {
    /// Quantum registers in declaration order, as (name, width).
    pub qregs: Vec<(String, usize)>,
    pub cregs: Vec<(String, usize)>,
    pub circuit: Circuit,
    /// Statements that were accepted but have no effect on the circuit.
    pub warnings: Vec<String>,
}

pub fn parse_qasm(text: &str) -> Result<Circuit, QasmError> {
    parse_qasm_document(text).map(|d| d.circuit)
}

pub fn parse_qasm_document(text: &str) -> Result<QasmDocument, QasmError> {
    let tokens = lex(text)?;
    Parser {
        tokens,
        pos: 0,
        qregs: Vec::new(),
        cregs: Vec::new(),
        gates: Vec::new(),
        warnings: Vec::new(),
    }
    .document()
}

/// Serializes `circuit` as OpenQASM 2.0 over a single register `q`.
pub fn emit_qasm(circuit: &Circuit) -> String {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    writeln!(out, "qreg q[{}];", circuit.qubit_count()).unwrap();
    for g in circuit.gates() {
        match g.kind() {
            GateKind::ZPhase(p) => write!(out, "rz(pi*{}/{})", p.numer(), p.denom()).unwrap(),
            k => out.push_str(k.name()),
        }
        out.push(' ');
        for (i, q) in g.operands().iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "q[{}]", q).unwrap();
        }
        out.push_str(";\n");
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Real(String),
    Str(String),
    Sym(char),
    Arrow,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, QasmError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let start = i;
        let tok = if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        } else if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        } else if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c.is_ascii_digit() || c == '.' {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let mut real = false;
            if i < chars.len() && chars[i] == '.' {
                real = true;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                real = true;
                i += 1;
                if i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let s: String = chars[start..i].iter().collect();
            if real {
                Tok::Real(s)
            } else {
                Tok::Int(s.parse().map_err(|_| QasmError::Syntax {
                    line: tl,
                    col: tc,
                    msg: format!("integer literal `{}` too large", s),
                })?)
            }
        } else if c == '"' {
            i += 1;
            while i < chars.len() && chars[i] != '"' && chars[i] != '\n' {
                i += 1;
            }
            if i >= chars.len() || chars[i] != '"' {
                return Err(QasmError::Syntax {
                    line: tl,
                    col: tc,
                    msg: "unterminated string".into(),
                });
            }
            i += 1;
            Tok::Str(chars[start + 1..i - 1].iter().collect())
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            i += 2;
            Tok::Arrow
        } else if "()[]{},;+-*/^=".contains(c) {
            i += 1;
            Tok::Sym(c)
        } else {
            return Err(QasmError::Syntax {
                line: tl,
                col: tc,
                msg: format!("unexpected character `{}`", c),
            });
        };
        col += i - start;
        out.push(Token {
            tok,
            line: tl,
            col: tc,
        });
    }
    Ok(out)
}

/// A value `coeff · π^power` with an exact rational coefficient.
#[derive(Clone, Copy, Debug, PartialEq)]
struct PiTerm {
    num: i128,
    den: i128,
    power: i32,
}

impl PiTerm {
    fn int(n: i64) -> PiTerm {
        PiTerm {
            num: n as i128,
            den: 1,
            power: 0,
        }
    }

    fn reduce(mut self) -> PiTerm {
        if self.den < 0 {
            self.num = -self.num;
            self.den = -self.den;
        }
        let g = self.num.gcd(&self.den).max(1);
        self.num /= g;
        self.den /= g;
        if self.num == 0 {
            self.power = 0;
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.num == 0
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    qregs: Vec<(String, usize)>,
    cregs: Vec<(String, usize)>,
    gates: Vec<Gate>,
    warnings: Vec<String>,
}

type PResult<T> = Result<T, QasmError>;

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        match self.tokens.get(self.pos).or(self.tokens.last()) {
            Some(t) => (t.line, t.col),
            None => (1, 1),
        }
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> PResult<T> {
        let (line, col) = self.here();
        Err(QasmError::Syntax {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if matches!(self.peek(), Some(Token { tok: Tok::Sym(s), .. }) if *s == c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> PResult<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.syntax(format!("expected `{}`", c))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek() {
            Some(Token {
                tok: Tok::Ident(s), ..
            }) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.syntax("expected identifier"),
        }
    }

    fn int(&mut self) -> PResult<i64> {
        match self.peek() {
            Some(Token { tok: Tok::Int(n), .. }) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => self.syntax("expected integer"),
        }
    }

    fn document(mut self) -> PResult<QasmDocument> {
        // optional header
        if matches!(self.peek(), Some(Token { tok: Tok::Ident(s), .. }) if s == "OPENQASM") {
            self.pos += 1;
            match self.next() {
                Some(Token {
                    tok: Tok::Real(v), ..
                }) if v == "2.0" => {}
                Some(Token {
                    tok: Tok::Int(2), ..
                }) => {}
                _ => {
                    self.pos -= 1;
                    return self.syntax("only OPENQASM 2.0 is supported");
                }
            }
            self.expect_sym(';')?;
        }
        while self.peek().is_some() {
            self.statement()?;
        }
        let width: usize = self.qregs.iter().map(|(_, w)| w).sum();
        if width == 0 {
            return Err(QasmError::NoQubits);
        }
        let mut circuit = Circuit::new(width).map_err(|_| QasmError::NoQubits)?;
        // operands were validated against register widths already
        circuit
            .extend(self.gates.drain(..))
            .expect("validated operands");
        Ok(QasmDocument {
            qregs: self.qregs,
            cregs: self.cregs,
            circuit,
            warnings: self.warnings,
        })
    }

    fn statement(&mut self) -> PResult<()> {
        let start = self.pos;
        let tok = self.peek().cloned().expect("statement called at end of input");
        let (line, col) = (tok.line, tok.col);
        let name = match tok.tok {
            Tok::Ident(s) => s,
            _ => return self.syntax("expected statement"),
        };
        self.pos += 1;
        match name.as_str() {
            "include" => {
                match self.next() {
                    Some(Token { tok: Tok::Str(_), .. }) => {}
                    _ => {
                        self.pos -= 1;
                        return self.syntax("expected file name string");
                    }
                }
                self.expect_sym(';')
            }
            "qreg" | "creg" => {
                let reg = self.ident()?;
                self.expect_sym('[')?;
                let w = self.int()?;
                self.expect_sym(']')?;
                self.expect_sym(';')?;
                if w <= 0 {
                    return Err(QasmError::Register {
                        line,
                        col,
                        msg: format!("register `{}` must have positive width", reg),
                    });
                }
                if self.qregs.iter().chain(&self.cregs).any(|(n, _)| *n == reg) {
                    return Err(QasmError::Register {
                        line,
                        col,
                        msg: format!("register `{}` declared twice", reg),
                    });
                }
                if name == "qreg" {
                    self.qregs.push((reg, w as usize));
                } else {
                    self.warnings
                        .push(format!("{}:{}: classical register `{}` ignored", line, col, reg));
                    self.cregs.push((reg, w as usize));
                }
                Ok(())
            }
            "measure" => {
                self.qubit_arg()?;
                match self.next() {
                    Some(Token { tok: Tok::Arrow, .. }) => {}
                    _ => {
                        self.pos -= 1;
                        return self.syntax("expected `->`");
                    }
                }
                self.classical_arg()?;
                self.expect_sym(';')?;
                self.warnings
                    .push(format!("{}:{}: measurement ignored", line, col));
                Ok(())
            }
            "barrier" => {
                loop {
                    let reg = self.ident()?;
                    if self.eat_sym('[') {
                        self.int()?;
                        self.expect_sym(']')?;
                    }
                    if !self.qregs.iter().any(|(n, _)| *n == reg) {
                        return Err(QasmError::Register {
                            line,
                            col,
                            msg: format!("undeclared register `{}`", reg),
                        });
                    }
                    if !self.eat_sym(',') {
                        break;
                    }
                }
                self.expect_sym(';')?;
                self.warnings
                    .push(format!("{}:{}: barrier ignored", line, col));
                Ok(())
            }
            "gate" | "opaque" | "if" | "reset" => Err(QasmError::Syntax {
                line,
                col,
                msg: format!("`{}` is not supported", name),
            }),
            _ => {
                let kind = match name.as_str() {
                    "h" => GateKind::H,
                    "x" => GateKind::X,
                    "z" => GateKind::Z,
                    "s" => GateKind::S,
                    "sdg" => GateKind::Sdg,
                    "t" => GateKind::T,
                    "tdg" => GateKind::Tdg,
                    "cx" | "CX" => GateKind::Cnot,
                    "cz" => GateKind::Cz,
                    "swap" => GateKind::Swap,
                    "ccx" => GateKind::Toffoli,
                    "rz" => {
                        self.expect_sym('(')?;
                        let (aline, acol) = self.here();
                        let angle = self.expr()?;
                        self.expect_sym(')')?;
                        GateKind::ZPhase(to_phase(angle).ok_or(QasmError::Angle {
                            line: aline,
                            col: acol,
                        })?)
                    }
                    _ => {
                        self.pos = start;
                        return Err(QasmError::UnknownGate { line, col, name });
                    }
                };
                let mut operands = vec![self.qubit_arg()?];
                while self.eat_sym(',') {
                    operands.push(self.qubit_arg()?);
                }
                self.expect_sym(';')?;
                let gate = Gate::new(kind, &operands)
                    .map_err(|source| QasmError::Gate { line, col, source })?;
                self.gates.push(gate);
                Ok(())
            }
        }
    }

    fn register_index(&mut self, quantum: bool) -> PResult<usize> {
        let (line, col) = self.here();
        let reg = self.ident()?;
        self.expect_sym('[')?;
        let idx = self.int()?;
        self.expect_sym(']')?;
        let regs = if quantum { &self.qregs } else { &self.cregs };
        let mut offset = 0;
        for (n, w) in regs {
            if *n == reg {
                if idx < 0 || idx as usize >= *w {
                    return Err(QasmError::Register {
                        line,
                        col,
                        msg: format!("index {} out of range for `{}[{}]`", idx, reg, w),
                    });
                }
                return Ok(offset + idx as usize);
            }
            offset += w;
        }
        Err(QasmError::Register {
            line,
            col,
            msg: format!("undeclared register `{}`", reg),
        })
    }

    fn qubit_arg(&mut self) -> PResult<usize> {
        self.register_index(true)
    }

    fn classical_arg(&mut self) -> PResult<usize> {
        self.register_index(false)
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> PResult<Option<PiTerm>> {
        let mut acc = self.term()?;
        loop {
            let sign = if self.eat_sym('+') {
                1
            } else if self.eat_sym('-') {
                -1
            } else {
                return Ok(acc);
            };
            let rhs = self.term()?;
            acc = match (acc, rhs) {
                (Some(a), Some(b)) => add_terms(a, b, sign),
                _ => None,
            };
        }
    }

    // term := unary (('*'|'/') unary)*
    fn term(&mut self) -> PResult<Option<PiTerm>> {
        let mut acc = self.unary()?;
        loop {
            let div = if self.eat_sym('*') {
                false
            } else if self.eat_sym('/') {
                true
            } else {
                return Ok(acc);
            };
            let rhs = self.unary()?;
            acc = match (acc, rhs) {
                (Some(a), Some(b)) if div && b.is_zero() => {
                    let _ = a;
                    return self.syntax("division by zero");
                }
                (Some(a), Some(b)) if div => Some(
                    PiTerm {
                        num: a.num * b.den,
                        den: a.den * b.num,
                        power: a.power - b.power,
                    }
                    .reduce(),
                ),
                (Some(a), Some(b)) => Some(
                    PiTerm {
                        num: a.num * b.num,
                        den: a.den * b.den,
                        power: a.power + b.power,
                    }
                    .reduce(),
                ),
                _ => None,
            };
        }
    }

    fn unary(&mut self) -> PResult<Option<PiTerm>> {
        if self.eat_sym('-') {
            return Ok(self.unary()?.map(|t| PiTerm { num: -t.num, ..t }));
        }
        if self.eat_sym('+') {
            return self.unary();
        }
        if self.eat_sym('(') {
            let e = self.expr()?;
            self.expect_sym(')')?;
            return Ok(e);
        }
        match self.next() {
            Some(Token { tok: Tok::Int(n), .. }) => Ok(Some(PiTerm::int(n))),
            Some(Token { tok: Tok::Real(_), .. }) => Ok(None),
            Some(Token {
                tok: Tok::Ident(s), ..
            }) if s == "pi" => Ok(Some(PiTerm {
                num: 1,
                den: 1,
                power: 1,
            })),
            _ => {
                self.pos -= 1;
                self.syntax("expected angle expression")
            }
        }
    }
}

fn add_terms(a: PiTerm, b: PiTerm, sign: i128) -> Option<PiTerm> {
    if b.is_zero() {
        return Some(a);
    }
    if a.is_zero() {
        return Some(PiTerm { num: sign * b.num, ..b });
    }
    if a.power != b.power {
        return None;
    }
    Some(
        PiTerm {
            num: a.num * b.den + sign * b.num * a.den,
            den: a.den * b.den,
            power: a.power,
        }
        .reduce(),
    )
}

fn to_phase(t: Option<PiTerm>) -> Option<Phase> {
    let t = t?;
    if t.is_zero() {
        return Some(Phase::zero());
    }
    if t.power != 1 {
        return None;
    }
    let den = i64::try_from(t.den).ok()?;
    let num = i64::try_from(t.num.rem_euclid(2 * t.den)).ok()?;
    Some(Phase::new(num, den))
}
