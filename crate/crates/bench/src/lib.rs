//! Fixtures shared by the benchmarks.

use curvekit::roulette::ParamCurve;
use curvekit::{Params, PolarCurve};

/// The roses `r = sin Nθ` and `r = cos Nθ`.
pub fn rose_pair(n: u32) -> (PolarCurve, PolarCurve) {
    let p = Params::from([("N".to_string(), n as f64)]);
    (
        PolarCurve::parse_with("sin(N*theta)", &p).expect("valid rose"),
        PolarCurve::parse_with("cos(N*theta)", &p).expect("valid rose"),
    )
}

pub fn ellipse() -> ParamCurve {
    ParamCurve::ellipse(3.0, 2.0, (0.0, std::f64::consts::TAU)).expect("regular ellipse")
}

pub const EXPRESSIONS: [&str; 4] = [
    "1 - lambda*sin(theta)",
    "cos(3*theta/5)",
    "(1 + cos(t))^2/(2 + sin(t))",
    "sqrt(2 + t^2)*sin(t)*cos(2*t)",
];
