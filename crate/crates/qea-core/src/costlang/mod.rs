//! A tiny expression language for asymptotic cost formulas.
//!
//! Costs like `n^1.5*k^0.5*d + n*k*d` are parsed into [`Expr`] trees and
//! evaluated either directly over `f64` ([`Expr::evaluate`]) or in signed
//! log10 space ([`logspace`]), which keeps magnitudes up to 10^400
//! representable for the crossover solver.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := ("-")? power
//! power  := atom ("^" factor)?
//! atom   := number | ident | ident "(" expr ")" | "(" expr ")"
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-n^2`
//! means `-(n^2)`. The only recognized functions are `log2`, `ln`, and
//! `sqrt`; any other identifier followed by `(` is rejected.

pub mod logspace;
mod parse;

pub use parse::{parse, ParseError};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// Variable bindings for evaluation. Values are expected to be finite and
/// positive; non-positive values surface as domain errors where they matter
/// (logarithms, fractional powers).
pub type Env = BTreeMap<String, f64>;

/// Binary operators, lowest precedence first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl fmt::Display for BinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        })
    }
}

/// The recognized unary functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Log2,
    Ln,
    Sqrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Log2 => "log2",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
        }
    }
}

impl fmt::Display for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Abstract syntax tree of a cost expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Number(f64),
    Var(String),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

/// Errors raised while evaluating an expression.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("domain error: {0}")]
    Domain(String),
}

impl Expr {
    /// Precedence level used by the printer; higher binds tighter.
    fn precedence(&self) -> u8 {
        match self {
            Expr::Number(_) | Expr::Var(_) | Expr::Call(..) => 5,
            Expr::Bin(BinOp::Pow, ..) => 4,
            Expr::Neg(_) => 3,
            Expr::Bin(BinOp::Mul | BinOp::Div, ..) => 2,
            Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
        }
    }

    /// The set of free variables in the expression.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut vars = BTreeSet::new();
        self.collect_variables(&mut vars);
        vars
    }

    fn collect_variables(&self, vars: &mut BTreeSet<String>) {
        match self {
            Expr::Number(_) => {}
            Expr::Var(name) => {
                vars.insert(name.clone());
            }
            Expr::Neg(inner) | Expr::Call(_, inner) => inner.collect_variables(vars),
            Expr::Bin(_, lhs, rhs) => {
                lhs.collect_variables(vars);
                rhs.collect_variables(vars);
            }
        }
    }

    /// Evaluates the expression over `f64`.
    ///
    /// Overflow is reported as `+inf` (the caller can check `is_finite`);
    /// operations with no real result (logarithm of a non-positive value,
    /// division by zero, fractional power of a negative base) are domain
    /// errors.
    pub fn evaluate(&self, env: &Env) -> Result<f64, EvalError> {
        match self {
            Expr::Number(x) => Ok(*x),
            Expr::Var(name) => env
                .get(name)
                .copied()
                .ok_or_else(|| EvalError::UnboundVariable(name.clone())),
            Expr::Neg(inner) => Ok(-inner.evaluate(env)?),
            Expr::Call(func, arg) => {
                let x = arg.evaluate(env)?;
                match func {
                    Func::Log2 if x > 0.0 => Ok(x.log2()),
                    Func::Ln if x > 0.0 => Ok(x.ln()),
                    Func::Sqrt if x >= 0.0 => Ok(x.sqrt()),
                    _ => Err(EvalError::Domain(format!(
                        "{func} of non-positive value {x}"
                    ))),
                }
            }
            Expr::Bin(op, lhs, rhs) => {
                let a = lhs.evaluate(env)?;
                let b = rhs.evaluate(env)?;
                match op {
                    BinOp::Add => Ok(a + b),
                    BinOp::Sub => Ok(a - b),
                    BinOp::Mul => Ok(a * b),
                    BinOp::Div => {
                        if b == 0.0 {
                            Err(EvalError::Domain("division by zero".into()))
                        } else {
                            Ok(a / b)
                        }
                    }
                    BinOp::Pow => {
                        if a == 0.0 && b < 0.0 {
                            return Err(EvalError::Domain(
                                "zero raised to a negative power".into(),
                            ));
                        }
                        let y = a.powf(b);
                        if y.is_nan() {
                            Err(EvalError::Domain(format!(
                                "negative base {a} with non-integer exponent {b}"
                            )))
                        } else {
                            Ok(y)
                        }
                    }
                }
            }
        }
    }

    /// Precedence-aware printer; `min` is the minimum precedence the parent
    /// position accepts without parentheses.
    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let parens = self.precedence() < min;
        if parens {
            f.write_str("(")?;
        }
        match self {
            Expr::Number(x) => write!(f, "{x}")?,
            Expr::Var(name) => f.write_str(name)?,
            Expr::Call(func, arg) => {
                write!(f, "{func}(")?;
                arg.fmt_with(f, 0)?;
                f.write_str(")")?;
            }
            Expr::Neg(inner) => {
                f.write_str("-")?;
                inner.fmt_with(f, 4)?;
            }
            Expr::Bin(op, lhs, rhs) => match op {
                // Left-associative chains keep equal precedence on the left;
                // the right operand needs one level more so that the printed
                // string reparses to the same tree shape.
                BinOp::Add | BinOp::Sub => {
                    lhs.fmt_with(f, 1)?;
                    write!(f, " {op} ")?;
                    rhs.fmt_with(f, 2)?;
                }
                BinOp::Mul | BinOp::Div => {
                    lhs.fmt_with(f, 2)?;
                    write!(f, "{op}")?;
                    rhs.fmt_with(f, 3)?;
                }
                // The grammar only allows an atom on the left of `^`; the
                // exponent is a factor, so unary minus survives unquoted.
                BinOp::Pow => {
                    lhs.fmt_with(f, 5)?;
                    write!(f, "{op}")?;
                    rhs.fmt_with(f, 3)?;
                }
            },
        }
        if parens {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, 0)
    }
}
