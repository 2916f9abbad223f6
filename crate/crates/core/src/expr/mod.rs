//! Curve-definition expressions in one free variable.
//!
//! An [`Expr`] is built by [`parse`], evaluated with [`Expr::eval`], and
//! differentiated symbolically with [`Expr::derivative`]. The free variable is
//! spelled `t` or `theta`; `pi` is a constant; any other bare identifier is a
//! named parameter bound at evaluation time.

mod derive;
mod parser;

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use thiserror::Error;

pub use parser::parse;

/// Parameter bindings, ordered so that printing and hashing are stable.
pub type Params = BTreeMap<String, f64>;

/// `|cos x|` below this is treated as a pole of `tan`.
const TAN_POLE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),
    #[error("singular evaluation at {at}: {reason}")]
    Singular { at: f64, reason: &'static str },
    #[error("cannot differentiate {0}")]
    NotDifferentiable(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Neg,
    Sin,
    Cos,
    Tan,
    Sqrt,
    Abs,
}

impl UnaryOp {
    pub fn name(self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::Sin => "sin",
            UnaryOp::Cos => "cos",
            UnaryOp::Tan => "tan",
            UnaryOp::Sqrt => "sqrt",
            UnaryOp::Abs => "abs",
        }
    }

    pub(crate) fn from_function_name(name: &str) -> Option<Self> {
        Some(match name {
            "sin" => UnaryOp::Sin,
            "cos" => UnaryOp::Cos,
            "tan" => UnaryOp::Tan,
            "sqrt" => UnaryOp::Sqrt,
            "abs" => UnaryOp::Abs,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => " + ",
            BinaryOp::Sub => " - ",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Pow => "^",
        }
    }
}

/// Expression tree. Immutable once built; cheap to share across threads.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    /// The single free variable (`t` / `theta`).
    Var,
    Param(String),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn param(name: impl Into<String>) -> Self {
        Expr::Param(name.into())
    }

    pub fn unary(op: UnaryOp, arg: Expr) -> Self {
        Expr::Unary(op, Box::new(arg))
    }

    pub fn binary(op: BinaryOp, lhs: Expr, rhs: Expr) -> Self {
        Expr::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn neg(arg: Expr) -> Self {
        Self::unary(UnaryOp::Neg, arg)
    }
    pub fn sin(arg: Expr) -> Self {
        Self::unary(UnaryOp::Sin, arg)
    }
    pub fn cos(arg: Expr) -> Self {
        Self::unary(UnaryOp::Cos, arg)
    }
    pub fn tan(arg: Expr) -> Self {
        Self::unary(UnaryOp::Tan, arg)
    }
    pub fn sqrt(arg: Expr) -> Self {
        Self::unary(UnaryOp::Sqrt, arg)
    }
    pub fn abs(arg: Expr) -> Self {
        Self::unary(UnaryOp::Abs, arg)
    }
    pub fn add(lhs: Expr, rhs: Expr) -> Self {
        Self::binary(BinaryOp::Add, lhs, rhs)
    }
    pub fn sub(lhs: Expr, rhs: Expr) -> Self {
        Self::binary(BinaryOp::Sub, lhs, rhs)
    }
    pub fn mul(lhs: Expr, rhs: Expr) -> Self {
        Self::binary(BinaryOp::Mul, lhs, rhs)
    }
    pub fn div(lhs: Expr, rhs: Expr) -> Self {
        Self::binary(BinaryOp::Div, lhs, rhs)
    }
    pub fn pow(base: Expr, exponent: Expr) -> Self {
        Self::binary(BinaryOp::Pow, base, exponent)
    }

    /// True if the free variable occurs anywhere in the tree.
    pub fn depends_on_var(&self) -> bool {
        match self {
            Expr::Var => true,
            Expr::Const(_) | Expr::Param(_) => false,
            Expr::Unary(_, a) => a.depends_on_var(),
            Expr::Binary(_, a, b) => a.depends_on_var() || b.depends_on_var(),
        }
    }

    /// Names of all parameters referenced by the expression.
    pub fn param_names(&self) -> Vec<String> {
        fn walk(e: &Expr, out: &mut Vec<String>) {
            match e {
                Expr::Param(name) => {
                    if !out.contains(name) {
                        out.push(name.clone());
                    }
                }
                Expr::Const(_) | Expr::Var => {}
                Expr::Unary(_, a) => walk(a, out),
                Expr::Binary(_, a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// Replaces every parameter by its bound value.
    pub fn bind(&self, params: &Params) -> Result<Expr, ExprError> {
        Ok(match self {
            Expr::Param(name) => Expr::Const(
                *params
                    .get(name)
                    .ok_or_else(|| ExprError::UnboundParameter(name.clone()))?,
            ),
            Expr::Const(_) | Expr::Var => self.clone(),
            Expr::Unary(op, a) => Expr::unary(*op, a.bind(params)?),
            Expr::Binary(op, a, b) => Expr::binary(*op, a.bind(params)?, b.bind(params)?),
        })
    }

    /// Replaces the free variable by `with`.
    pub fn substitute_var(&self, with: &Expr) -> Expr {
        match self {
            Expr::Var => with.clone(),
            Expr::Const(_) | Expr::Param(_) => self.clone(),
            Expr::Unary(op, a) => Expr::unary(*op, a.substitute_var(with)),
            Expr::Binary(op, a, b) => Expr::binary(*op, a.substitute_var(with), b.substitute_var(with)),
        }
    }

    /// Evaluates at `x`. Singular points (division by zero, `tan` poles,
    /// even roots of negatives, non-finite intermediate values) are errors.
    pub fn eval(&self, x: f64, params: &Params) -> Result<f64, ExprError> {
        let value = match self {
            Expr::Const(c) => *c,
            Expr::Var => x,
            Expr::Param(name) => *params
                .get(name)
                .ok_or_else(|| ExprError::UnboundParameter(name.clone()))?,
            Expr::Unary(op, a) => {
                let v = a.eval(x, params)?;
                match op {
                    UnaryOp::Neg => -v,
                    UnaryOp::Sin => v.sin(),
                    UnaryOp::Cos => v.cos(),
                    UnaryOp::Tan => {
                        if v.cos().abs() < TAN_POLE_EPS {
                            return Err(singular(x, "tan pole"));
                        }
                        v.tan()
                    }
                    UnaryOp::Sqrt => {
                        if v < 0.0 {
                            return Err(singular(x, "square root of a negative number"));
                        }
                        v.sqrt()
                    }
                    UnaryOp::Abs => v.abs(),
                }
            }
            Expr::Binary(op, a, b) => {
                let l = a.eval(x, params)?;
                let r = b.eval(x, params)?;
                match op {
                    BinaryOp::Add => l + r,
                    BinaryOp::Sub => l - r,
                    BinaryOp::Mul => l * r,
                    BinaryOp::Div => {
                        if r == 0.0 {
                            return Err(singular(x, "division by zero"));
                        }
                        l / r
                    }
                    BinaryOp::Pow => power(l, r).ok_or_else(|| singular(x, "invalid power"))?,
                }
            }
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(singular(x, "non-finite value"))
        }
    }

    /// Symbolic derivative with respect to the free variable.
    pub fn derivative(&self) -> Result<Expr, ExprError> {
        derive::derivative(self)
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(BinaryOp::Add | BinaryOp::Sub, ..) => 1,
            Expr::Binary(BinaryOp::Mul | BinaryOp::Div, ..) => 2,
            Expr::Unary(UnaryOp::Neg, _) => 3,
            Expr::Binary(BinaryOp::Pow, ..) => 4,
            _ => 5,
        }
    }
}

fn singular(at: f64, reason: &'static str) -> ExprError {
    ExprError::Singular { at, reason }
}

/// Integer exponents accept any base (except 0 with a negative exponent);
/// other exponents require a non-negative base.
fn power(base: f64, exponent: f64) -> Option<f64> {
    if exponent.fract() == 0.0 && exponent.abs() <= i32::MAX as f64 {
        if base == 0.0 && exponent < 0.0 {
            return None;
        }
        Some(base.powi(exponent as i32))
    } else if base > 0.0 {
        Some(base.powf(exponent))
    } else if base == 0.0 && exponent > 0.0 {
        Some(0.0)
    } else {
        None
    }
}

/// Evaluates a parsed expression string; convenience for flags and tests.
pub fn eval_str(text: &str, x: f64, params: &Params) -> Result<f64, ExprError> {
    parse(text)?.eval(x, params)
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Expr, min_prec: u8) -> fmt::Result {
    if child.precedence() < min_prec {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

/// Prints with the minimum parentheses needed for the output to parse back
/// into the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) if *c == PI => write!(f, "pi"),
            Expr::Const(c) if *c < 0.0 => write!(f, "({c})"),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var => write!(f, "t"),
            Expr::Param(name) => write!(f, "{name}"),
            Expr::Unary(UnaryOp::Neg, a) => {
                write!(f, "-")?;
                write_child(f, a, 3)
            }
            Expr::Unary(op, a) => write!(f, "{}({a})", op.name()),
            Expr::Binary(op, a, b) => {
                let (left_min, right_min) = match op {
                    BinaryOp::Add | BinaryOp::Sub => (1, 2),
                    BinaryOp::Mul | BinaryOp::Div => (2, 3),
                    BinaryOp::Pow => (5, 3),
                };
                write_child(f, a, left_min)?;
                write!(f, "{}", op.symbol())?;
                write_child(f, b, right_min)
            }
        }
    }
}
