// Copyright 2026 The qbench Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! OpenQASM 2.0 emission and parsing.
//!
//! Files start with a block of `// key: value` comment lines carrying the
//! circuit metadata, followed by a program over the `qelib1.inc` names:
//!
//! ```text
//! // benchmark: ghz
//! // level: indep
//! // qubits: 2
//! // logical_qubits: 2
//! // opt_level: 0
//! // generator: qbench 0.1.0
//! OPENQASM 2.0;
//! include "qelib1.inc";
//! qreg q[2];
//! creg c[2];
//! h q[0];
//! cx q[0],q[1];
//! barrier q;
//! measure q[0] -> c[0];
//! measure q[1] -> c[1];
//! ```
//!
//! Gates missing from `qelib1.inc` are written as `gate` definitions ahead
//! of the register declarations: `ecr`, `rxx(theta)`, `mcx_k`, `mcz_k` and
//! `mcp_k(lambda)` for `k` controls, and one definition per named block.
//! Every definition body uses single-qubit gates and `cx` only. The parser
//! reads the reserved names back as the gate they stand for, so a file
//! re-parses to exactly the circuit it was written from.
//!
//! The trailing `barrier q;` plus measurements are added on emission and
//! stripped on parsing. Mapped circuits measure `q[final_layout[i]]` into
//! `c[i]` for every logical qubit `i`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::circuit::{Block, Circuit, CircuitBuilder, CircuitError, Gate, GateKind, Level, Param};
use crate::native::{mc, GateSetKind};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QasmError {
    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("unsupported gate or statement `{name}` at line {line}")]
    UnsupportedGate { name: String, line: usize },
    #[error("header line {line}: {message}")]
    Header { line: usize, message: String },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Metadata carried in the leading comment block.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Header {
    pub name: Option<String>,
    pub level: Option<Level>,
    pub num_qubits: Option<usize>,
    pub logical_qubits: Option<usize>,
    pub gateset: Option<GateSetKind>,
    pub device: Option<String>,
    pub opt_level: Option<u8>,
    pub seed: Option<u64>,
    pub generator: Option<String>,
    pub initial_layout: Option<Vec<usize>>,
    pub final_layout: Option<Vec<usize>>,
    pub info: Vec<(String, String)>,
}

pub const GENERATOR: &str = concat!("qbench ", env!("CARGO_PKG_VERSION"));

/// `<name>_<level>[_<gateset>][_<device>][_opt<k>]_<n>.qasm`
pub fn file_name(
    name: &str,
    level: Level,
    gateset: Option<GateSetKind>,
    device: Option<&str>,
    opt: Option<u8>,
    n: usize,
) -> String {
    let mut s = format!("{}_{}", name, level.as_str());
    if let Some(gs) = gateset {
        s.push('_');
        s.push_str(gs.as_str());
    }
    if let Some(d) = device {
        s.push('_');
        s.push_str(d);
    }
    if let Some(k) = opt {
        let _ = write!(s, "_opt{k}");
    }
    let _ = write!(s, "_{n}.qasm");
    s.to_ascii_lowercase()
}

/// File name of `circuit`. The optimization level appears for the two
/// target-dependent levels only.
pub fn filename_for(circuit: &Circuit) -> String {
    let opt = matches!(circuit.level(), Level::Native | Level::Mapped).then_some(circuit.opt_level());
    file_name(circuit.name(), circuit.level(), circuit.gateset(), circuit.device(), opt, circuit.logical_qubits())
}

/// Formats like C's `%.17g`, which round-trips every `f64`.
pub fn format_angle(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        trim_zeros(format!("{:.*}", (16 - exp) as usize, v))
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa.to_string()), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

// ---------------------------------------------------------------- emission

fn layout_line(layout: &[usize]) -> String {
    layout.iter().enumerate().map(|(l, p)| format!("q{l}->Q{p}")).collect::<Vec<_>>().join(" ")
}

fn write_header(out: &mut String, c: &Circuit) {
    let _ = writeln!(out, "// benchmark: {}", c.name());
    let _ = writeln!(out, "// level: {}", c.level());
    let _ = writeln!(out, "// qubits: {}", c.num_qubits());
    let _ = writeln!(out, "// logical_qubits: {}", c.logical_qubits());
    if let Some(gs) = c.gateset() {
        let _ = writeln!(out, "// gateset: {gs}");
    }
    if let Some(d) = c.device() {
        let _ = writeln!(out, "// device: {d}");
    }
    let _ = writeln!(out, "// opt_level: {}", c.opt_level());
    if let Some(s) = c.seed() {
        let _ = writeln!(out, "// seed: {s}");
    }
    let _ = writeln!(out, "// generator: {GENERATOR}");
    if let Some(l) = c.initial_layout() {
        let _ = writeln!(out, "// initial_layout: {}", layout_line(l));
    }
    if let Some(l) = c.final_layout() {
        let _ = writeln!(out, "// final_layout: {}", layout_line(l));
    }
    for (k, v) in c.info() {
        let _ = writeln!(out, "// info: {}={}", k, v.replace('\n', " "));
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_reserved(name: &str) -> bool {
    builtin(name).is_some() || KEYWORDS.contains(&name) || name == "pi" || name.starts_with("mc")
}

const KEYWORDS: [&str; 13] =
    ["OPENQASM", "include", "qreg", "creg", "gate", "opaque", "barrier", "measure", "reset", "if", "U", "CX", "sin"];

/// Writes one call; `arg` renders a qubit, `angle` a parameter.
fn write_call(out: &mut String, name: &str, params: &[String], args: &[String]) {
    out.push_str(name);
    if !params.is_empty() {
        let _ = write!(out, "({})", params.join(","));
    }
    let _ = writeln!(out, " {};", args.join(","));
}

#[derive(Default)]
struct Definitions {
    text: String,
    emitted: Vec<String>,
    blocks: HashMap<*const Block, String>,
    by_name: HashMap<String, Arc<Block>>,
}

impl Definitions {
    fn gate_name(&self, g: &Gate) -> String {
        match &g.kind {
            GateKind::Block(b) => self.blocks[&Arc::as_ptr(b)].clone(),
            k => k.name(),
        }
    }

    fn local(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("a{i}")).collect()
    }

    fn write_body(&mut self, gates: &[Gate], scaled: Option<&str>) -> String {
        let mut body = String::new();
        for g in gates {
            body.push_str("  ");
            let params: Vec<String> = g
                .params
                .iter()
                .map(|p| {
                    let v = p.value().expect("definition bodies are bound");
                    match scaled {
                        Some(sym) if g.kind == GateKind::P => match v {
                            v if v == 1.0 => sym.to_string(),
                            v if v == -1.0 => format!("-{sym}"),
                            v => format!("{}*{sym}", format_angle(v)),
                        },
                        _ => format_angle(v),
                    }
                })
                .collect();
            let args: Vec<String> = g.qubits.iter().map(|&q| format!("a{q}")).collect();
            let name = self.gate_name(g);
            write_call(&mut body, &name, &params, &args);
        }
        body
    }

    fn define(&mut self, head: String, body: String) {
        let _ = write!(self.text, "gate {head} {{\n{body}}}\n");
    }

    fn visit(&mut self, g: &Gate) {
        let name = g.kind.name();
        match &g.kind {
            GateKind::Block(b) => {
                if self.blocks.contains_key(&Arc::as_ptr(b)) {
                    return;
                }
                if let Some(existing) = self.by_name.get(&b.name) {
                    if **existing == **b {
                        let n = b.name.clone();
                        self.blocks.insert(Arc::as_ptr(b), n);
                        return;
                    }
                }
                for inner in &b.body {
                    self.visit(inner);
                }
                let mut chosen = if is_identifier(&b.name) && !is_reserved(&b.name) {
                    b.name.clone()
                } else {
                    format!("block_{}", b.name.to_ascii_lowercase().replace(|c: char| !c.is_ascii_alphanumeric(), "_"))
                };
                let base = chosen.clone();
                let mut i = 1;
                while self.by_name.contains_key(&chosen) {
                    chosen = format!("{base}_{i}");
                    i += 1;
                }
                self.blocks.insert(Arc::as_ptr(b), chosen.clone());
                self.by_name.insert(chosen.clone(), b.clone());
                let body = self.write_body(&b.body, None);
                self.define(format!("{chosen} {}", Self::local(b.num_qubits).join(",")), body);
            }
            _ if self.emitted.contains(&name) => {}
            GateKind::ECR => {
                self.emitted.push(name);
                self.define("ecr a0,a1".into(), "  x a0;\n  cx a0,a1;\n  rz(-pi/2) a0;\n  rx(-pi/2) a1;\n".into());
            }
            GateKind::RXX => {
                self.emitted.push(name);
                let body = "  h a0;\n  h a1;\n  cx a0,a1;\n  rz(theta) a1;\n  cx a0,a1;\n  h a0;\n  h a1;\n";
                self.define("rxx(theta) a0,a1".into(), body.into());
            }
            GateKind::Mcx(k) | GateKind::Mcz(k) | GateKind::Mcp(k) => {
                let k = *k;
                let controls: Vec<usize> = (0..k).collect();
                let (head, body) = match g.kind {
                    GateKind::Mcx(_) => (name.clone(), self.write_body(&mc::mcx(&controls, k, &[]), None)),
                    GateKind::Mcz(_) => (name.clone(), self.write_body(&mc::mcz(&controls, k), None)),
                    _ => (format!("{name}(lambda)"), self.write_body(&mc::mcp(1.0, &controls, k), Some("lambda"))),
                };
                self.emitted.push(name);
                self.define(format!("{head} {}", Self::local(k + 1).join(",")), body);
            }
            _ => {}
        }
    }
}

/// Serializes a bound circuit.
pub fn emit(circuit: &Circuit) -> Result<String, QasmError> {
    for g in circuit.gates() {
        g.values()?;
    }
    let n = circuit.num_qubits();
    let mut defs = Definitions::default();
    for g in circuit.gates() {
        defs.visit(g);
    }
    let mut out = String::with_capacity(64 + circuit.len() * 16);
    write_header(&mut out, circuit);
    out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    out.push_str(&defs.text);
    let _ = writeln!(out, "qreg q[{n}];\ncreg c[{n}];");
    for g in circuit.gates() {
        let args: Vec<String> = g.qubits.iter().map(|q| format!("q[{q}]")).collect();
        match g.kind {
            GateKind::Measure => {
                let _ = writeln!(out, "measure q[{0}] -> c[{0}];", g.qubits[0]);
            }
            _ => {
                let params: Vec<String> = g.values()?.into_iter().map(format_angle).collect();
                write_call(&mut out, &defs.gate_name(g), &params, &args);
            }
        }
    }
    out.push_str("barrier q;\n");
    match (circuit.level(), circuit.final_layout()) {
        (Level::Mapped, Some(fin)) => {
            for (l, p) in fin.iter().take(circuit.logical_qubits()).enumerate() {
                let _ = writeln!(out, "measure q[{p}] -> c[{l}];");
            }
        }
        _ => {
            for q in 0..n {
                let _ = writeln!(out, "measure q[{q}] -> c[{q}];");
            }
        }
    }
    Ok(out)
}

// ----------------------------------------------------------------- parsing

fn builtin(name: &str) -> Option<GateKind> {
    use GateKind::*;
    Some(match name {
        "id" => I,
        "h" => H,
        "x" => X,
        "y" => Y,
        "z" => Z,
        "s" => S,
        "sdg" => Sdg,
        "t" => T,
        "tdg" => Tdg,
        "sx" => SX,
        "rx" => RX,
        "ry" => RY,
        "rz" => RZ,
        "p" | "u1" => P,
        "u" | "u3" | "U" => U,
        "cx" | "CX" => CX,
        "cz" => CZ,
        "cp" | "cu1" => CP,
        "swap" => Swap,
        "rxx" => RXX,
        "ecr" => ECR,
        "ccx" => Mcx(2),
        _ => return multi_controlled(name),
    })
}

fn multi_controlled(name: &str) -> Option<GateKind> {
    let (head, k) = name.split_once('_')?;
    if k.is_empty() || !k.bytes().all(|b| b.is_ascii_digit()) || (k.len() > 1 && k.starts_with('0')) {
        return None;
    }
    let k: usize = k.parse().ok()?;
    match head {
        "mcx" => Some(GateKind::Mcx(k)),
        "mcz" => Some(GateKind::Mcz(k)),
        "mcp" => Some(GateKind::Mcp(k)),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(f64, String),
    Str(String),
    Sym(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, QasmError> {
    const SYMS: [&str; 13] = ["->", ";", ",", "(", ")", "[", "]", "{", "}", "+", "-", "*", "/"];
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let bytes = line.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            let col = i + 1;
            let at = |tok| Token { tok, line: li + 1, col };
            if c.is_ascii_whitespace() {
                i += 1;
            } else if line[i..].starts_with("//") {
                break;
            } else if c.is_ascii_alphabetic() || c == b'_' {
                let end =
                    line[i..].find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_')).map_or(line.len(), |e| i + e);
                out.push(at(Tok::Ident(line[i..end].to_string())));
                i = end;
            } else if c.is_ascii_digit() || (c == b'.' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)) {
                let mut end = i;
                while end < bytes.len() && (bytes[end].is_ascii_digit() || bytes[end] == b'.') {
                    end += 1;
                }
                if end < bytes.len() && (bytes[end] == b'e' || bytes[end] == b'E') {
                    let mut e = end + 1;
                    if e < bytes.len() && (bytes[e] == b'+' || bytes[e] == b'-') {
                        e += 1;
                    }
                    if e < bytes.len() && bytes[e].is_ascii_digit() {
                        while e < bytes.len() && bytes[e].is_ascii_digit() {
                            e += 1;
                        }
                        end = e;
                    }
                }
                let s = &line[i..end];
                let v: f64 = s.parse().map_err(|_| QasmError::Syntax {
                    line: li + 1,
                    col,
                    message: format!("malformed number `{s}`"),
                })?;
                out.push(at(Tok::Num(v, s.to_string())));
                i = end;
            } else if c == b'"' {
                let end = line[i + 1..].find('"').ok_or(QasmError::Syntax {
                    line: li + 1,
                    col,
                    message: "unterminated string".into(),
                })?;
                out.push(at(Tok::Str(line[i + 1..i + 1 + end].to_string())));
                i += end + 2;
            } else if let Some(s) = SYMS.iter().find(|s| line[i..].starts_with(**s)) {
                out.push(at(Tok::Sym(s)));
                i += s.len();
            } else {
                return Err(QasmError::Syntax {
                    line: li + 1,
                    col,
                    message: format!("unexpected character `{}`", line[i..].chars().next().unwrap_or('?')),
                });
            }
        }
    }
    let line = text.lines().count().max(1);
    out.push(Token { tok: Tok::Eof, line, col: 1 });
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(f64),
    Var(String),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
}

impl Expr {
    fn eval(&self, env: &HashMap<String, f64>) -> Option<f64> {
        Some(match self {
            Expr::Num(v) => *v,
            Expr::Var(s) => *env.get(s)?,
            Expr::Neg(e) => -e.eval(env)?,
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.eval(env)?, b.eval(env)?);
                match op {
                    '+' => a + b,
                    '-' => a - b,
                    '*' => a * b,
                    _ => a / b,
                }
            }
        })
    }
}

#[derive(Clone, Debug)]
struct Call {
    name: String,
    params: Vec<Expr>,
    args: Vec<usize>,
    line: usize,
    col: usize,
}

#[derive(Clone, Debug)]
struct Definition {
    params: Vec<String>,
    num_qubits: usize,
    body: Vec<Call>,
}

enum Stmt {
    Gates(Vec<Gate>),
    Barrier { qubits: Vec<usize>, whole: bool },
    Measure(usize),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    regs: Vec<(String, usize, usize)>,
    defs: HashMap<String, Definition>,
    blocks: HashMap<String, Arc<Block>>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, QasmError> {
        let t = self.peek();
        Err(QasmError::Syntax { line: t.line, col: t.col, message: message.into() })
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(_, s) => format!("`{s}`"),
            Tok::Str(s) => format!("\"{s}\""),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of file".into(),
        }
    }

    fn sym(&mut self, s: &str) -> Result<(), QasmError> {
        if self.peek().tok == Tok::Sym(match_sym(s)) {
            self.next();
            Ok(())
        } else {
            let found = Self::describe(&self.peek().tok);
            self.err(format!("expected `{s}`, found {found}"))
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.peek().tok == Tok::Sym(match_sym(s)) {
            self.next();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String, QasmError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.next();
                Ok(s)
            }
            t => {
                let found = Self::describe(t);
                self.err(format!("expected an identifier, found {found}"))
            }
        }
    }

    fn int(&mut self) -> Result<usize, QasmError> {
        match &self.peek().tok {
            Tok::Num(_, s) if s.bytes().all(|b| b.is_ascii_digit()) => {
                let v = s.parse().map_err(|_| ()).or_else(|_| self.err::<usize>("integer out of range"))?;
                self.next();
                Ok(v)
            }
            t => {
                let found = Self::describe(t);
                self.err(format!("expected an integer, found {found}"))
            }
        }
    }

    fn expr(&mut self) -> Result<Expr, QasmError> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat("+") {
                '+'
            } else if self.eat("-") {
                '-'
            } else {
                return Ok(lhs);
            };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> Result<Expr, QasmError> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat("*") {
                '*'
            } else if self.eat("/") {
                '/'
            } else {
                return Ok(lhs);
            };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Expr, QasmError> {
        if self.eat("-") {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat("+") {
            return self.unary();
        }
        match self.peek().tok.clone() {
            Tok::Num(v, _) => {
                self.next();
                Ok(Expr::Num(v))
            }
            Tok::Ident(s) if s == "pi" => {
                self.next();
                Ok(Expr::Num(PI))
            }
            Tok::Ident(s) => {
                self.next();
                Ok(Expr::Var(s))
            }
            Tok::Sym("(") => {
                self.next();
                let e = self.expr()?;
                self.sym(")")?;
                Ok(e)
            }
            t => {
                let found = Self::describe(&t);
                self.err(format!("expected an expression, found {found}"))
            }
        }
    }

    fn params(&mut self) -> Result<Vec<Expr>, QasmError> {
        let mut out = Vec::new();
        if self.eat("(") {
            if !self.eat(")") {
                loop {
                    out.push(self.expr()?);
                    if self.eat(")") {
                        break;
                    }
                    self.sym(",")?;
                }
            }
        }
        Ok(out)
    }

    /// `q[i]` or a whole register `q`; returns the global wires.
    fn arg(&mut self) -> Result<(Vec<usize>, bool), QasmError> {
        let name = self.ident()?;
        let Some(&(_, offset, size)) = self.regs.iter().find(|r| r.0 == name) else {
            self.pos -= 1;
            return self.err(format!("unknown quantum register `{name}`"));
        };
        if self.eat("[") {
            let i = self.int()?;
            if i >= size {
                self.pos -= 1;
                return self.err(format!("index {i} out of range for `{name}[{size}]`"));
            }
            self.sym("]")?;
            Ok((vec![offset + i], false))
        } else {
            Ok(((offset..offset + size).collect(), true))
        }
    }

    fn args(&mut self) -> Result<Vec<(Vec<usize>, bool)>, QasmError> {
        let mut out = vec![self.arg()?];
        while self.eat(",") {
            out.push(self.arg()?);
        }
        self.sym(";")?;
        Ok(out)
    }

    fn definition(&mut self) -> Result<(), QasmError> {
        let name = self.ident()?;
        let mut params = Vec::new();
        if self.eat("(") && !self.eat(")") {
            loop {
                params.push(self.ident()?);
                if self.eat(")") {
                    break;
                }
                self.sym(",")?;
            }
        }
        let mut qargs = vec![self.ident()?];
        while self.eat(",") {
            qargs.push(self.ident()?);
        }
        self.sym("{")?;
        let mut body = Vec::new();
        while !self.eat("}") {
            let (line, col) = (self.peek().line, self.peek().col);
            let callee = self.ident()?;
            let exprs = if callee == "barrier" { Vec::new() } else { self.params()? };
            let mut args = Vec::new();
            loop {
                let a = self.ident()?;
                match qargs.iter().position(|q| *q == a) {
                    Some(i) => args.push(i),
                    None => {
                        self.pos -= 1;
                        return self.err(format!("`{a}` is not an argument of `{name}`"));
                    }
                }
                if !self.eat(",") {
                    break;
                }
            }
            self.sym(";")?;
            body.push(Call { name: callee, params: exprs, args, line, col });
        }
        self.defs.insert(name, Definition { params, num_qubits: qargs.len(), body });
        Ok(())
    }

    fn resolve(
        &mut self,
        name: &str,
        params: Vec<f64>,
        qubits: Vec<usize>,
        line: usize,
        col: usize,
    ) -> Result<Vec<Gate>, QasmError> {
        let at = |e: CircuitError| QasmError::Syntax { line, col, message: e.to_string() };
        if name == "barrier" {
            return Ok(vec![
                Gate::new(GateKind::Barrier, qubits, params.into_iter().map(Param::Value).collect()).map_err(at)?
            ]);
        }
        if let Some(kind) = builtin(name) {
            return Ok(vec![Gate::new(kind, qubits, params.into_iter().map(Param::Value).collect()).map_err(at)?]);
        }
        let Some(def) = self.defs.get(name).cloned() else {
            return Err(QasmError::UnsupportedGate { name: name.to_string(), line });
        };
        if def.num_qubits != qubits.len() || def.params.len() != params.len() {
            return Err(QasmError::Syntax {
                line,
                col,
                message: format!(
                    "`{name}` takes {} parameters and {} qubits, got {} and {}",
                    def.params.len(),
                    def.num_qubits,
                    params.len(),
                    qubits.len()
                ),
            });
        }
        if def.params.is_empty() {
            let block = self.block(name, &def)?;
            return Ok(vec![Gate::new(GateKind::Block(block), qubits, Vec::new()).map_err(at)?]);
        }
        // Parameterized user gates are inlined.
        let env: HashMap<String, f64> = def.params.iter().cloned().zip(params).collect();
        let mut out = Vec::new();
        for call in &def.body {
            let vals = self.eval_all(&call.params, &env, call.line, call.col)?;
            let qs = call.args.iter().map(|&a| qubits[a]).collect();
            out.extend(self.resolve(&call.name, vals, qs, call.line, call.col)?);
        }
        Ok(out)
    }

    fn block(&mut self, name: &str, def: &Definition) -> Result<Arc<Block>, QasmError> {
        if let Some(b) = self.blocks.get(name) {
            return Ok(b.clone());
        }
        let mut body = Vec::new();
        for call in &def.body {
            let vals = self.eval_all(&call.params, &HashMap::new(), call.line, call.col)?;
            body.extend(self.resolve(&call.name, vals, call.args.clone(), call.line, call.col)?);
        }
        let b = Arc::new(Block { name: name.to_string(), num_qubits: def.num_qubits, body });
        self.blocks.insert(name.to_string(), b.clone());
        Ok(b)
    }

    fn eval_all(
        &self,
        exprs: &[Expr],
        env: &HashMap<String, f64>,
        line: usize,
        col: usize,
    ) -> Result<Vec<f64>, QasmError> {
        exprs
            .iter()
            .map(|e| {
                e.eval(env).ok_or(QasmError::Syntax { line, col, message: "unknown identifier in expression".into() })
            })
            .collect()
    }

    fn program(&mut self) -> Result<Vec<Stmt>, QasmError> {
        if self.ident().ok().as_deref() != Some("OPENQASM") {
            self.pos = 0;
            return self.err("expected `OPENQASM 2.0;`");
        }
        match self.next().tok {
            Tok::Num(v, _) if v == 2.0 => {}
            _ => {
                self.pos -= 1;
                return self.err("only OpenQASM 2.0 is supported");
            }
        }
        self.sym(";")?;
        let mut stmts = Vec::new();
        loop {
            let (line, col) = (self.peek().line, self.peek().col);
            let word = match &self.peek().tok {
                Tok::Eof => return Ok(stmts),
                Tok::Ident(s) => s.clone(),
                t => {
                    let found = Self::describe(t);
                    return self.err(format!("expected a statement, found {found}"));
                }
            };
            self.next();
            match word.as_str() {
                "include" => {
                    match self.next().tok {
                        Tok::Str(s) if s == "qelib1.inc" => {}
                        Tok::Str(s) => {
                            return Err(QasmError::UnsupportedGate { name: format!("include \"{s}\""), line })
                        }
                        _ => {
                            self.pos -= 1;
                            return self.err("expected a file name");
                        }
                    }
                    self.sym(";")?;
                }
                "qreg" | "creg" => {
                    let name = self.ident()?;
                    self.sym("[")?;
                    let size = self.int()?;
                    self.sym("]")?;
                    self.sym(";")?;
                    if word == "qreg" {
                        let offset = self.regs.iter().map(|r| r.2).sum();
                        self.regs.push((name, offset, size));
                    }
                }
                "gate" => self.definition()?,
                "barrier" => {
                    let args = self.args()?;
                    let whole = args.len() == 1 && args[0].1 && self.regs.len() == 1;
                    stmts.push(Stmt::Barrier { qubits: args.into_iter().flat_map(|a| a.0).collect(), whole });
                }
                "measure" => {
                    let (q, _) = self.arg()?;
                    self.sym("->")?;
                    self.ident()?;
                    if self.eat("[") {
                        self.int()?;
                        self.sym("]")?;
                    }
                    self.sym(";")?;
                    stmts.extend(q.into_iter().map(Stmt::Measure));
                }
                "opaque" | "reset" | "if" => return Err(QasmError::UnsupportedGate { name: word, line }),
                name => {
                    let exprs = self.params()?;
                    let vals = self.eval_all(&exprs, &HashMap::new(), line, col)?;
                    let args = self.args()?;
                    let width = args.iter().map(|a| a.0.len()).max().unwrap_or(0);
                    let broadcast = args.iter().any(|a| a.1);
                    let mut gates = Vec::new();
                    if broadcast {
                        if args.iter().any(|a| a.0.len() != width && a.0.len() != 1) {
                            return Err(QasmError::Syntax {
                                line,
                                col,
                                message: "registers of different sizes".into(),
                            });
                        }
                        for i in 0..width {
                            let qs = args.iter().map(|a| if a.0.len() == 1 { a.0[0] } else { a.0[i] }).collect();
                            gates.extend(self.resolve(name, vals.clone(), qs, line, col)?);
                        }
                    } else {
                        let qs = args.into_iter().map(|a| a.0[0]).collect();
                        gates.extend(self.resolve(name, vals, qs, line, col)?);
                    }
                    stmts.push(Stmt::Gates(gates));
                }
            }
        }
    }
}

fn match_sym(s: &str) -> &'static str {
    ["->", ";", ",", "(", ")", "[", "]", "{", "}", "+", "-", "*", "/"]
        .into_iter()
        .find(|x| *x == s)
        .expect("known symbol")
}

fn parse_layout(s: &str, line: usize) -> Result<Vec<usize>, QasmError> {
    let bad = || QasmError::Header { line, message: format!("malformed layout `{s}`") };
    let mut out: Vec<Option<usize>> = Vec::new();
    for item in s.split_whitespace() {
        let (l, p) = item.split_once("->").ok_or_else(bad)?;
        let l: usize = l.strip_prefix('q').and_then(|x| x.parse().ok()).ok_or_else(bad)?;
        let p: usize = p.strip_prefix('Q').and_then(|x| x.parse().ok()).ok_or_else(bad)?;
        if out.len() <= l {
            out.resize(l + 1, None);
        }
        out[l] = Some(p);
    }
    out.into_iter().map(|x| x.ok_or_else(bad)).collect()
}

/// Reads the leading comment block; unknown keys are ignored.
pub fn read_header(text: &str) -> Result<Header, QasmError> {
    let mut h = Header::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let Some(rest) = raw.trim_start().strip_prefix("//") else {
            if raw.trim().is_empty() {
                continue;
            }
            break;
        };
        let Some((key, value)) = rest.trim().split_once(':') else { continue };
        let value = value.trim();
        let bad = |what: &str| QasmError::Header { line, message: format!("bad {what} `{value}`") };
        match key.trim() {
            "benchmark" => h.name = Some(value.to_string()),
            "level" => h.level = Some(value.parse().map_err(|_| bad("level"))?),
            "qubits" => h.num_qubits = Some(value.parse().map_err(|_| bad("qubit count"))?),
            "logical_qubits" => h.logical_qubits = Some(value.parse().map_err(|_| bad("qubit count"))?),
            "gateset" => h.gateset = Some(value.parse().map_err(|_| bad("gate-set"))?),
            "device" => h.device = Some(value.to_string()),
            "opt_level" => h.opt_level = Some(value.parse().map_err(|_| bad("optimization level"))?),
            "seed" => h.seed = Some(value.parse().map_err(|_| bad("seed"))?),
            "generator" => h.generator = Some(value.to_string()),
            "initial_layout" => h.initial_layout = Some(parse_layout(value, line)?),
            "final_layout" => h.final_layout = Some(parse_layout(value, line)?),
            "info" => {
                let (k, v) = value.split_once('=').ok_or_else(|| bad("info entry"))?;
                h.info.push((k.to_string(), v.to_string()));
            }
            _ => {}
        }
    }
    Ok(h)
}

/// Parses a file in the emitted subset. Without a header the circuit is an
/// algorithmic-level circuit named `circuit`.
pub fn parse(text: &str) -> Result<Circuit, QasmError> {
    let header = read_header(text)?;
    let mut p = Parser { toks: lex(text)?, pos: 0, regs: Vec::new(), defs: HashMap::new(), blocks: HashMap::new() };
    let mut stmts = p.program()?;
    let n: usize = p.regs.iter().map(|r| r.2).sum();

    let mut end = stmts.len();
    while end > 0 && matches!(stmts[end - 1], Stmt::Measure(_)) {
        end -= 1;
    }
    if end < stmts.len() && end > 0 && matches!(stmts[end - 1], Stmt::Barrier { whole: true, .. }) {
        end -= 1;
    }
    stmts.truncate(end);

    if let Some(hn) = header.num_qubits {
        if hn != n {
            return Err(QasmError::Header {
                line: 1,
                message: format!("header declares {hn} qubits, registers hold {n}"),
            });
        }
    }
    let mut b = CircuitBuilder::new(header.name.clone().unwrap_or_else(|| "circuit".into()), n)
        .level(header.level.unwrap_or(Level::Alg))
        .logical_qubits(header.logical_qubits.unwrap_or(n))
        .opt_level(header.opt_level.unwrap_or(0));
    if let Some(gs) = header.gateset {
        b = b.gateset(gs);
    }
    if let Some(d) = &header.device {
        b = b.device(d.clone());
    }
    if let Some(s) = header.seed {
        b = b.seed(s);
    }
    if let (Some(i), Some(f)) = (header.initial_layout.clone(), header.final_layout.clone()) {
        b = b.layouts(i, f);
    }
    for (k, v) in &header.info {
        b = b.info(k.clone(), v.clone());
    }
    for s in stmts {
        match s {
            Stmt::Gates(gs) => {
                b.extend(gs)?;
            }
            Stmt::Barrier { qubits, .. } => {
                b.push(Gate::barrier(qubits))?;
            }
            Stmt::Measure(q) => {
                b.push(Gate::one(GateKind::Measure, q))?;
            }
        }
    }
    Ok(b.build())
}
