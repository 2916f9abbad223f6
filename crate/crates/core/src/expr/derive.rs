use super::{BinaryOp, Expr, ExprError, UnaryOp};

// Smart constructors: constant folding plus the 0/1 identities, nothing more.

fn as_const(e: &Expr) -> Option<f64> {
    match e {
        Expr::Const(c) => Some(*c),
        _ => None,
    }
}

fn is_const(e: &Expr, value: f64) -> bool {
    as_const(e) == Some(value)
}

fn neg(a: Expr) -> Expr {
    match a {
        Expr::Const(c) => Expr::Const(-c),
        Expr::Unary(UnaryOp::Neg, inner) => *inner,
        other => Expr::neg(other),
    }
}

fn add(a: Expr, b: Expr) -> Expr {
    match (as_const(&a), as_const(&b)) {
        (Some(x), Some(y)) => Expr::Const(x + y),
        (Some(0.0), _) => b,
        (_, Some(0.0)) => a,
        _ => match b {
            Expr::Unary(UnaryOp::Neg, inner) => sub(a, *inner),
            b => Expr::add(a, b),
        },
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    match (as_const(&a), as_const(&b)) {
        (Some(x), Some(y)) => Expr::Const(x - y),
        (_, Some(0.0)) => a,
        (Some(0.0), _) => neg(b),
        _ => match b {
            Expr::Unary(UnaryOp::Neg, inner) => add(a, *inner),
            b => Expr::sub(a, b),
        },
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    match (as_const(&a), as_const(&b)) {
        (Some(x), Some(y)) => return Expr::Const(x * y),
        (Some(x), _) | (_, Some(x)) if x == 0.0 => return Expr::Const(0.0),
        (Some(1.0), _) => return b,
        (_, Some(1.0)) => return a,
        _ => {}
    }
    match (a, b) {
        (Expr::Unary(UnaryOp::Neg, x), b) => neg(mul(*x, b)),
        (a, Expr::Unary(UnaryOp::Neg, y)) => neg(mul(a, *y)),
        (a, b) => Expr::mul(a, b),
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    match (as_const(&a), as_const(&b)) {
        (Some(x), Some(y)) if y != 0.0 => Expr::Const(x / y),
        (Some(0.0), _) => Expr::Const(0.0),
        (_, Some(1.0)) => a,
        _ => Expr::div(a, b),
    }
}

fn pow(base: Expr, exponent: Expr) -> Expr {
    if is_const(&exponent, 1.0) {
        base
    } else if is_const(&exponent, 0.0) {
        Expr::Const(1.0)
    } else {
        Expr::pow(base, exponent)
    }
}

pub(super) fn derivative(e: &Expr) -> Result<Expr, ExprError> {
    Ok(match e {
        Expr::Const(_) | Expr::Param(_) => Expr::Const(0.0),
        Expr::Var => Expr::Const(1.0),
        Expr::Unary(op, u) => {
            let du = derivative(u)?;
            let u = (**u).clone();
            match op {
                UnaryOp::Neg => neg(du),
                UnaryOp::Sin => mul(Expr::cos(u), du),
                UnaryOp::Cos => neg(mul(Expr::sin(u), du)),
                // u' / cos(u)^2
                UnaryOp::Tan => div(du, Expr::pow(Expr::cos(u), Expr::Const(2.0))),
                // u' / (2 sqrt(u))
                UnaryOp::Sqrt => div(du, mul(Expr::Const(2.0), Expr::sqrt(u))),
                UnaryOp::Abs => return Err(ExprError::NotDifferentiable("abs")),
            }
        }
        Expr::Binary(op, a, b) => {
            let (u, v) = ((**a).clone(), (**b).clone());
            match op {
                BinaryOp::Add => add(derivative(a)?, derivative(b)?),
                BinaryOp::Sub => sub(derivative(a)?, derivative(b)?),
                BinaryOp::Mul => add(mul(derivative(a)?, v), mul(u, derivative(b)?)),
                BinaryOp::Div => {
                    let numerator = sub(mul(derivative(a)?, v.clone()), mul(u, derivative(b)?));
                    div(numerator, pow(v, Expr::Const(2.0)))
                }
                BinaryOp::Pow => {
                    if v.depends_on_var() {
                        return Err(ExprError::NotDifferentiable("a variable exponent"));
                    }
                    let reduced = sub(v.clone(), Expr::Const(1.0));
                    mul(mul(v, pow(u, reduced)), derivative(a)?)
                }
            }
        }
    })
}
