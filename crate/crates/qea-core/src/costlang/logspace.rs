//! Signed log10 arithmetic for evaluating cost expressions whose magnitudes
//! exceed anything `f64` can hold directly.
//!
//! The crossover solver works on problem sizes up to 10^400, and costs like
//! `n^3` reach 10^1200 there — far past `f64` overflow. A [`LogValue`]
//! carries a sign and the log10 of the magnitude, so such values stay exact
//! in the exponent; sums go through log-sum-exp. No clipping happens here:
//! solvers that cap their answers at a size-domain boundary do so themselves,
//! because clipping inside the arithmetic would distort cost ratios.

use std::collections::BTreeMap;
use std::f64::consts::{LN_10, LOG10_2};

use super::{BinOp, Env, EvalError, Expr, Func};

/// A real number represented as `sign * 10^log10_abs`.
///
/// `sign` is -1, 0, or +1; zero uses `log10_abs == -inf`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogValue {
    pub sign: i8,
    pub log10_abs: f64,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue {
        sign: 0,
        log10_abs: f64::NEG_INFINITY,
    };

    /// Builds a positive value from its log10 exponent.
    pub fn from_log10(log10: f64) -> LogValue {
        LogValue {
            sign: 1,
            log10_abs: log10,
        }
    }

    pub fn from_f64(x: f64) -> LogValue {
        if x == 0.0 {
            LogValue::ZERO
        } else {
            LogValue {
                sign: if x > 0.0 { 1 } else { -1 },
                log10_abs: x.abs().log10(),
            }
        }
    }

    /// Converts back to `f64`; magnitudes beyond ~10^308 come out infinite.
    pub fn to_f64(self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => f64::from(s) * 10f64.powf(self.log10_abs),
        }
    }

    pub fn is_positive(self) -> bool {
        self.sign > 0
    }
}

/// Converts plain `f64` bindings into log-space bindings.
pub fn env_from_f64(env: &Env) -> BTreeMap<String, LogValue> {
    env.iter()
        .map(|(k, v)| (k.clone(), LogValue::from_f64(*v)))
        .collect()
}

/// Evaluates `expr` in signed log10 arithmetic.
pub fn evaluate_log10(
    expr: &Expr,
    env: &BTreeMap<String, LogValue>,
) -> Result<LogValue, EvalError> {
    match expr {
        Expr::Number(x) => {
            if x.is_nan() {
                return Err(EvalError::Domain("literal is not a number".into()));
            }
            Ok(LogValue::from_f64(*x))
        }
        Expr::Var(name) => env
            .get(name)
            .copied()
            .ok_or_else(|| EvalError::UnboundVariable(name.clone())),
        Expr::Neg(inner) => {
            let v = evaluate_log10(inner, env)?;
            Ok(LogValue {
                sign: -v.sign,
                log10_abs: v.log10_abs,
            })
        }
        Expr::Call(func, arg) => apply_func(*func, evaluate_log10(arg, env)?),
        Expr::Bin(op, lhs, rhs) => {
            let a = evaluate_log10(lhs, env)?;
            let b = evaluate_log10(rhs, env)?;
            match op {
                BinOp::Add => Ok(add(a, b)),
                BinOp::Sub => Ok(add(
                    a,
                    LogValue {
                        sign: -b.sign,
                        log10_abs: b.log10_abs,
                    },
                )),
                BinOp::Mul => Ok(mul(a, b)),
                BinOp::Div => div(a, b),
                BinOp::Pow => pow(a, b),
            }
        }
    }
}

fn add(a: LogValue, b: LogValue) -> LogValue {
    if a.sign == 0 {
        return b;
    }
    if b.sign == 0 {
        return a;
    }
    let (hi, lo) = if a.log10_abs >= b.log10_abs {
        (a, b)
    } else {
        (b, a)
    };
    // t = |lo|/|hi| in (0, 1]; log-sum-exp keeps everything in range.
    let t = 10f64.powf(lo.log10_abs - hi.log10_abs);
    if a.sign == b.sign {
        LogValue {
            sign: a.sign,
            log10_abs: hi.log10_abs + t.ln_1p() / LN_10,
        }
    } else if a.log10_abs == b.log10_abs {
        LogValue::ZERO
    } else {
        LogValue {
            sign: hi.sign,
            log10_abs: hi.log10_abs + (-t).ln_1p() / LN_10,
        }
    }
}

fn mul(a: LogValue, b: LogValue) -> LogValue {
    if a.sign == 0 || b.sign == 0 {
        return LogValue::ZERO;
    }
    LogValue {
        sign: a.sign * b.sign,
        log10_abs: a.log10_abs + b.log10_abs,
    }
}

fn div(a: LogValue, b: LogValue) -> Result<LogValue, EvalError> {
    if b.sign == 0 {
        return Err(EvalError::Domain("division by zero".into()));
    }
    if a.sign == 0 {
        return Ok(LogValue::ZERO);
    }
    Ok(LogValue {
        sign: a.sign * b.sign,
        log10_abs: a.log10_abs - b.log10_abs,
    })
}

fn pow(base: LogValue, exponent: LogValue) -> Result<LogValue, EvalError> {
    let e = exponent.to_f64();
    if !e.is_finite() {
        return Err(EvalError::Domain(format!(
            "exponent 10^{} is too large to apply",
            exponent.log10_abs
        )));
    }
    match base.sign {
        0 => {
            if e > 0.0 {
                Ok(LogValue::ZERO)
            } else if e == 0.0 {
                Ok(LogValue::from_f64(1.0))
            } else {
                Err(EvalError::Domain("zero raised to a negative power".into()))
            }
        }
        1 => Ok(LogValue {
            sign: 1,
            log10_abs: base.log10_abs * e,
        }),
        _ => {
            // Negative base: only integer exponents have a real result.
            if e.fract() == 0.0 && e.abs() < 9.0e15 {
                let odd = (e as i64) % 2 != 0;
                Ok(LogValue {
                    sign: if odd { -1 } else { 1 },
                    log10_abs: base.log10_abs * e,
                })
            } else {
                Err(EvalError::Domain(format!(
                    "negative base with non-integer exponent {e}"
                )))
            }
        }
    }
}

fn apply_func(func: Func, v: LogValue) -> Result<LogValue, EvalError> {
    match func {
        Func::Sqrt => match v.sign {
            0 => Ok(LogValue::ZERO),
            1 => Ok(LogValue {
                sign: 1,
                log10_abs: v.log10_abs / 2.0,
            }),
            _ => Err(EvalError::Domain("sqrt of negative value".into())),
        },
        Func::Log2 | Func::Ln => {
            if v.sign <= 0 {
                return Err(EvalError::Domain(format!(
                    "{func} of non-positive value"
                )));
            }
            // v = 10^L, so ln v = L*ln10 and log2 v = L/log10(2); the result
            // itself is an ordinary-sized number.
            let result = match func {
                Func::Ln => v.log10_abs * LN_10,
                _ => v.log10_abs / LOG10_2,
            };
            Ok(LogValue::from_f64(result))
        }
    }
}
