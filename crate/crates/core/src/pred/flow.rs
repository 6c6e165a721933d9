//! Flow-equation systems over integer predicates, and their least
//! solutions in the concrete and sign domains.
//!
//! File format:
//!
//! ```text
//! var x1
//! var x2
//! eq x1 = const({5})
//! eq x2 = union(x1, shift(inter(x2, [1,inf)), -1))
//! ```
//!
//! Expression grammar: `const(<pred>) | <name> | union(e, e) |
//! inter(e, <pred>) | shift(e, <k>)` with predicate literals as in
//! [`IntPred::parse`].

use std::fmt;

use thiserror::Error;

use super::sign::SignElem;
use super::{IntPred, PredError};

#[derive(Debug, Error)]
pub enum FlowError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Pred { line: usize, source: PredError },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("variable `{0}` has no equation")]
    MissingEquation(String),
    #[error("no convergence after {0} iterations")]
    NoConvergence(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Const(IntPred),
    Var(usize),
    Union(Box<Expr>, Box<Expr>),
    Inter(Box<Expr>, IntPred),
    Shift(Box<Expr>, i64),
}

/// A system of equations, one per declared variable (in declaration order).
#[derive(Debug, Clone)]
pub struct FlowSystem {
    variables: Vec<String>,
    equations: Vec<Expr>,
}

/// Which domain to solve in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Concrete,
    Sign,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Concrete => write!(f, "concrete"),
            Domain::Sign => write!(f, "sign"),
        }
    }
}

/// A least solution plus the per-sweep history of every variable
/// (`trace[k]` is the assignment after k sweeps; `trace[0]` is all-∅).
#[derive(Debug, Clone)]
pub struct FlowSolution {
    pub values: Vec<IntPred>,
    pub trace: Vec<Vec<IntPred>>,
}

impl FlowSystem {
    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn var_index(&self, name: &str) -> Result<usize, FlowError> {
        self.variables
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| FlowError::UnknownVariable(name.to_string()))
    }

    fn eval_concrete(&self, expr: &Expr, env: &[IntPred]) -> IntPred {
        match expr {
            Expr::Const(p) => p.clone(),
            Expr::Var(i) => env[*i].clone(),
            Expr::Union(a, b) => self
                .eval_concrete(a, env)
                .union(&self.eval_concrete(b, env)),
            Expr::Inter(a, p) => self.eval_concrete(a, env).intersect(p),
            Expr::Shift(a, k) => self.eval_concrete(a, env).shift(*k),
        }
    }

    /// Sign evaluation abstracts each syntactic operator separately
    /// (α∘op∘γ per operator); the composite is sound but need not be the
    /// best abstraction of the whole equation.
    fn eval_sign(&self, expr: &Expr, env: &[SignElem]) -> SignElem {
        match expr {
            Expr::Const(p) => SignElem::abstract_pred(p),
            Expr::Var(i) => env[*i],
            Expr::Union(a, b) => self.eval_sign(a, env).join(self.eval_sign(b, env)),
            Expr::Inter(a, p) => {
                SignElem::abstract_pred(&self.eval_sign(a, env).concretize().intersect(p))
            }
            Expr::Shift(a, k) => {
                SignElem::abstract_pred(&self.eval_sign(a, env).concretize().shift(*k))
            }
        }
    }

    /// Least solution by round-robin iteration from all-∅, updating in
    /// declaration order within each sweep; errors out past the cap.
    pub fn solve_concrete(&self, iteration_cap: usize) -> Result<FlowSolution, FlowError> {
        let mut env: Vec<IntPred> = vec![IntPred::empty(); self.variables.len()];
        let mut trace = vec![env.clone()];
        for _ in 0..iteration_cap {
            let mut changed = false;
            for i in 0..self.equations.len() {
                let next = self.eval_concrete(&self.equations[i], &env);
                if next != env[i] {
                    env[i] = next;
                    changed = true;
                }
            }
            trace.push(env.clone());
            if !changed {
                return Ok(FlowSolution { values: env, trace });
            }
        }
        Err(FlowError::NoConvergence(iteration_cap))
    }

    /// Least solution in the sign domain; the domain is finite and every
    /// operator monotone, so this always terminates.
    pub fn solve_sign(&self) -> FlowSolution {
        let mut env: Vec<SignElem> = vec![SignElem::Empty; self.variables.len()];
        let mut trace = vec![env.clone()];
        loop {
            let mut changed = false;
            for i in 0..self.equations.len() {
                let next = self.eval_sign(&self.equations[i], &env);
                if next != env[i] {
                    env[i] = next;
                    changed = true;
                }
            }
            trace.push(env.clone());
            if !changed {
                let concretize = |row: &Vec<SignElem>| row.iter().map(|s| s.concretize()).collect();
                return FlowSolution {
                    values: concretize(&env),
                    trace: trace.iter().map(concretize).collect(),
                };
            }
        }
    }

    pub fn solve(&self, domain: Domain, iteration_cap: usize) -> Result<FlowSolution, FlowError> {
        match domain {
            Domain::Concrete => self.solve_concrete(iteration_cap),
            Domain::Sign => Ok(self.solve_sign()),
        }
    }
}

pub fn parse_flow_file(text: &str) -> Result<FlowSystem, FlowError> {
    let mut variables: Vec<String> = Vec::new();
    let mut eq_lines: Vec<(usize, String, String)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let parse_err = |msg: String| FlowError::Parse { line, msg };
        if let Some(rest) = content.strip_prefix("var ") {
            let name = rest.trim().to_string();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(parse_err("expected `var <name>`".into()));
            }
            if variables.contains(&name) {
                return Err(FlowError::DuplicateVariable(name));
            }
            variables.push(name);
        } else if let Some(rest) = content.strip_prefix("eq ") {
            let (name, body) = rest
                .split_once('=')
                .ok_or_else(|| parse_err("expected `eq <name> = <expr>`".into()))?;
            eq_lines.push((line, name.trim().to_string(), body.trim().to_string()));
        } else {
            return Err(parse_err(format!("unknown keyword in `{content}`")));
        }
    }

    let mut equations: Vec<Option<Expr>> = vec![None; variables.len()];
    for (line, name, body) in eq_lines {
        let target = variables
            .iter()
            .position(|v| *v == name)
            .ok_or(FlowError::UnknownVariable(name))?;
        let mut parser = ExprParser {
            text: &body,
            pos: 0,
            line,
            variables: &variables,
        };
        let expr = parser.parse_expr()?;
        parser.skip_ws();
        if parser.pos != parser.text.len() {
            return Err(FlowError::Parse {
                line,
                msg: format!("trailing input `{}`", &parser.text[parser.pos..]),
            });
        }
        equations[target] = Some(expr);
    }
    let mut complete = Vec::with_capacity(variables.len());
    for (i, eq) in equations.into_iter().enumerate() {
        complete.push(eq.ok_or_else(|| FlowError::MissingEquation(variables[i].clone()))?);
    }
    Ok(FlowSystem {
        variables,
        equations: complete,
    })
}

struct ExprParser<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    variables: &'a [String],
}

impl<'a> ExprParser<'a> {
    fn err(&self, msg: String) -> FlowError {
        FlowError::Parse {
            line: self.line,
            msg,
        }
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, token: char) -> Result<(), FlowError> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len_utf8();
            Ok(())
        } else {
            Err(self.err(format!(
                "expected `{token}` at `{}`",
                &self.text[self.pos..]
            )))
        }
    }

    fn parse_ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len()
            && self.text[self.pos..].starts_with(|c: char| c.is_alphanumeric() || c == '_')
        {
            self.pos += 1;
        }
        self.text[start..self.pos].to_string()
    }

    /// Predicate literals are self-delimiting (`{…}` or a bracketed
    /// interval, optionally joined by `u`), so they can be cut out of the
    /// argument list without a separate tokenizer.
    fn parse_pred(&mut self) -> Result<IntPred, FlowError> {
        self.skip_ws();
        let start = self.pos;
        loop {
            self.skip_ws();
            let rest = &self.text[self.pos..];
            let end = match rest.chars().next() {
                Some('{') => rest.find('}').map(|i| i + 1),
                Some('[') | Some('(') => rest.find([']', ')']).map(|i| i + 1),
                _ => None,
            }
            .ok_or_else(|| self.err(format!("expected predicate at `{rest}`")))?;
            self.pos += end;
            // a following `u` continues the union
            let mut peek = self.pos;
            while self.text[peek..].starts_with(char::is_whitespace) {
                peek += 1;
            }
            if self.text[peek..].starts_with('u') {
                self.pos = peek + 1;
            } else {
                break;
            }
        }
        IntPred::parse(&self.text[start..self.pos]).map_err(|source| FlowError::Pred {
            line: self.line,
            source,
        })
    }

    fn parse_int(&mut self) -> Result<i64, FlowError> {
        self.skip_ws();
        let start = self.pos;
        if self.text[self.pos..].starts_with('-') {
            self.pos += 1;
        }
        while self.text[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| self.err(format!("expected integer at `{}`", &self.text[start..])))
    }

    fn parse_expr(&mut self) -> Result<Expr, FlowError> {
        let ident = self.parse_ident();
        match ident.as_str() {
            "const" => {
                self.expect('(')?;
                let p = self.parse_pred()?;
                self.expect(')')?;
                Ok(Expr::Const(p))
            }
            "union" => {
                self.expect('(')?;
                let a = self.parse_expr()?;
                self.expect(',')?;
                let b = self.parse_expr()?;
                self.expect(')')?;
                Ok(Expr::Union(Box::new(a), Box::new(b)))
            }
            "inter" => {
                self.expect('(')?;
                let a = self.parse_expr()?;
                self.expect(',')?;
                let p = self.parse_pred()?;
                self.expect(')')?;
                Ok(Expr::Inter(Box::new(a), p))
            }
            "shift" => {
                self.expect('(')?;
                let a = self.parse_expr()?;
                self.expect(',')?;
                let k = self.parse_int()?;
                self.expect(')')?;
                Ok(Expr::Shift(Box::new(a), k))
            }
            "" => Err(self.err(format!(
                "expected expression at `{}`",
                &self.text[self.pos..]
            ))),
            name => {
                let i = self
                    .variables
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| FlowError::UnknownVariable(name.to_string()))?;
                Ok(Expr::Var(i))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn toy_system_concrete_solution() {
        let sys = fixtures::toy_flow_system();
        let sol = sys.solve_concrete(10_000).unwrap();
        let x2 = sys.var_index("x2").unwrap();
        let x5 = sys.var_index("x5").unwrap();
        assert_eq!(sol.values[x2], IntPred::range(Some(0), Some(5)));
        assert_eq!(sol.values[x5], IntPred::singleton(0));
        // the x2 column of the sweep history is the six-step chain
        let column: Vec<String> = sol.trace.iter().map(|row| row[x2].to_string()).collect();
        assert_eq!(
            column,
            ["{}", "{5}", "[4,5]", "[3,5]", "[2,5]", "[1,5]", "[0,5]", "[0,5]"]
        );
    }

    #[test]
    fn toy_system_sign_solution() {
        let sys = fixtures::toy_flow_system();
        let sol = sys.solve_sign();
        let x2 = sys.var_index("x2").unwrap();
        let x5 = sys.var_index("x5").unwrap();
        assert_eq!(sol.values[x2], IntPred::range(Some(0), None));
        assert_eq!(sol.values[x5], IntPred::singleton(0));
        let column: Vec<String> = sol.trace.iter().map(|row| row[x2].to_string()).collect();
        assert_eq!(column, ["{}", "[1,inf)", "[0,inf)", "[0,inf)"]);
    }

    #[test]
    fn sign_solution_is_sound_for_the_concrete_one() {
        let sys = fixtures::toy_flow_system();
        let concrete = sys.solve_concrete(10_000).unwrap();
        let sign = sys.solve_sign();
        for (c, s) in concrete.values.iter().zip(&sign.values) {
            assert!(c.leq(s));
        }
    }

    #[test]
    fn identity_equation_solves_to_empty() {
        let sys = parse_flow_file("var x\neq x = x\n").unwrap();
        assert!(sys.solve_concrete(10).unwrap().values[0].is_empty());
        assert!(sys.solve_sign().values[0].is_empty());
    }

    #[test]
    fn divergent_system_hits_the_cap() {
        let sys = parse_flow_file("var x\neq x = union(const({0}), shift(x, 1))\n").unwrap();
        assert!(matches!(
            sys.solve_concrete(50),
            Err(FlowError::NoConvergence(50))
        ));
        // the sign solution still exists
        assert_eq!(sys.solve_sign().values[0], IntPred::range(Some(0), None));
    }

    #[test]
    fn parse_errors_name_their_line() {
        match parse_flow_file("var x\neq x = union(x)\n") {
            Err(FlowError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            parse_flow_file("var x\neq y = x\n"),
            Err(FlowError::UnknownVariable(_))
        ));
        assert!(matches!(
            parse_flow_file("var x\n"),
            Err(FlowError::MissingEquation(_))
        ));
        assert!(matches!(
            parse_flow_file("var x\nvar x\n"),
            Err(FlowError::DuplicateVariable(_))
        ));
    }

    #[test]
    fn nested_expressions_parse() {
        let sys = parse_flow_file(
            "var x\neq x = union(const((-inf,-1] u [1,inf)), shift(inter(x, [0,9]), -2))\n",
        )
        .unwrap();
        let sol = sys.solve_concrete(100).unwrap();
        assert!(sol.values[0].contains(-2));
    }
}
