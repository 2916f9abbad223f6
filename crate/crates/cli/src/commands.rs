use std::f64::consts::{FRAC_PI_2, PI, TAU};

use curvekit::area::{
    curve_intersection, curve_region_area, limacon_analysis, limacon_common_area, loop_area, rose_intersection_area,
    SectorRegion,
};
use curvekit::intersect::intersections;
use curvekit::montecarlo::{estimate_area, inside_polar_region, AreaEstimate};
use curvekit::polar::{
    is_reflection_symmetric, is_rotation_symmetric, polar_period, positive_pieces, DEFAULT_MAX_PERIOD,
};
use curvekit::roulette::{trace_states, ParamCurve, RollConfig, Side};
use curvekit::{parse, ComplexPoint, Error, Params, PolarCurve};
use serde_json::{json, Map, Value};

use crate::args::*;
use crate::output::{csv, document, num, svg};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Math(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Math(e)
    }
}

impl From<curvekit::ExprError> for CliError {
    fn from(e: curvekit::ExprError) -> Self {
        CliError::Math(e.into())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Math(e) if e.is_input_error() => 1,
            CliError::Math(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Math(e) => write!(f, "{e}"),
        }
    }
}

type Out = Result<String, CliError>;

/// A constant expression such as `2`, `-pi/3` or `sqrt(2)`.
fn constant(text: &str) -> Result<f64, CliError> {
    let e = parse(text)?;
    if e.depends_on_var() {
        return Err(CliError::Usage(format!("`{text}` must not depend on the variable")));
    }
    Ok(e.eval(0.0, &Params::new())?)
}

fn params(bindings: &[String]) -> Result<Params, CliError> {
    let mut out = Params::new();
    for b in bindings {
        let (name, value) = b
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected NAME=VALUE, got `{b}`")))?;
        out.insert(name.trim().to_string(), constant(value)?);
    }
    Ok(out)
}

fn domain(text: &str) -> Result<(f64, f64), CliError> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("expected a domain `a:b`, got `{text}`")))?;
    let (a, b) = (constant(a)?, constant(b)?);
    if a >= b || a.is_nan() || b.is_nan() {
        return Err(CliError::Usage(format!("empty domain {a}:{b}")));
    }
    Ok((a, b))
}

/// The curve on `dom`, or over a whole number of turns covering its period.
fn curve(text: &str, p: &Params, dom: Option<&str>) -> Result<PolarCurve, CliError> {
    let c = PolarCurve::parse_with(text, p)?;
    let (a, b) = match dom {
        Some(d) => domain(d)?,
        None => match polar_period(&c, DEFAULT_MAX_PERIOD)? {
            Some(n) => (0.0, if n % 2 == 0 { n } else { 2 * n } as f64 * PI),
            None => (0.0, TAU),
        },
    };
    Ok(c.with_domain(a, b)?)
}

fn period_of(c: &PolarCurve) -> Result<u32, CliError> {
    Ok(polar_period(c, DEFAULT_MAX_PERIOD)?.ok_or(Error::UnknownPeriod {
        max_n: DEFAULT_MAX_PERIOD,
    })?)
}

pub fn intersect(a: &IntersectArgs) -> Out {
    let p = params(&a.curve.params)?;
    let c1 = curve(&a.c1, &p, None)?;
    let c2 = curve(&a.c2, &p, None)?;
    let found = intersections(&c1, &c2)?;
    let points: Vec<Value> = found
        .points
        .iter()
        .map(|q| {
            json!({
                "x": num(q.point.re),
                "y": num(q.point.im),
                "theta1": num(q.theta1),
                "theta2": num(q.theta2),
                "residual": num(q.residual),
            })
        })
        .collect();
    let witnesses = found
        .origin_witnesses
        .map_or(Value::Null, |(f, g)| json!([num(f), num(g)]));
    Ok(document(vec![
        ("origin", Value::Bool(found.origin)),
        ("origin_witnesses", witnesses),
        ("points", Value::Array(points)),
    ]))
}

fn estimate_json(e: &AreaEstimate, seed: u64) -> Value {
    json!({
        "area": num(e.area),
        "sigma": num(e.sigma),
        "samples": e.samples,
        "hits": e.hits,
        "seed": seed,
    })
}

fn max_radius(c: &PolarCurve) -> f64 {
    let (a, b) = c.domain();
    (0..=4096)
        .map(|j| c.radius_or_nan(a + (b - a) * j as f64 / 4096.0).abs())
        .filter(|r| r.is_finite())
        .fold(0.0, f64::max)
}

fn bounding(r: f64) -> f64 {
    r * (1.0 + 1e-3) + 1e-12
}

pub fn area(a: &AreaArgs) -> Out {
    let p = params(&a.curve.params)?;
    if let Some(n) = a.rose_n {
        let area = rose_intersection_area(n)?;
        let mut fields = vec![("kind", json!("rose")), ("N", json!(n)), ("area", num(area))];
        if let Some(samples) = a.monte_carlo {
            let rp = Params::from([("N".to_string(), n as f64)]);
            let s = PolarCurve::parse_with("sin(N*theta)", &rp)?;
            let c = PolarCurve::parse_with("cos(N*theta)", &rp)?;
            let period = if n % 2 == 1 { 1 } else { 2 };
            let inside = |z| inside_polar_region(&s, period, z) && inside_polar_region(&c, period, z);
            fields.push((
                "monte_carlo",
                estimate_json(&estimate_area(inside, 1.0, samples, a.seed), a.seed),
            ));
        }
        return Ok(document(fields));
    }
    if let Some(lambda) = a.limacon_lambda {
        let an = limacon_analysis(lambda)?;
        let area = limacon_common_area(lambda)?;
        let mut fields = vec![
            ("kind", json!("limacon")),
            ("lambda", num(lambda)),
            ("theta0", num(an.theta0)),
            ("phi0", num(an.phi0)),
            ("contained", json!(an.contained)),
            ("theta1", an.theta1.map_or(Value::Null, num)),
            ("small_loop_area", num(loop_area(&an.small_loop)?)),
            ("area", num(area)),
        ];
        if let Some(samples) = a.monte_carlo {
            let inside = |z: ComplexPoint| {
                let (rho, psi) = (z.norm(), z.im.atan2(z.re));
                rho <= 1.0 - lambda * psi.sin() && rho <= lambda * psi.cos() - 1.0
            };
            let est = estimate_area(inside, bounding(lambda + 1.0), samples, a.seed);
            fields.push(("monte_carlo", estimate_json(&est, a.seed)));
        }
        return Ok(document(fields));
    }
    let Some(text) = a.c1.as_deref() else {
        return Err(CliError::Usage("area needs --c1, --rose-N or --limacon-lambda".into()));
    };
    if a.monte_carlo.is_some() && a.domain.is_some() && !a.loop_area {
        return Err(CliError::Usage(
            "--monte-carlo covers whole curves; drop --domain".into(),
        ));
    }
    let c1 = curve(text, &p, a.domain.as_deref())?;
    if a.loop_area {
        let (lo, hi) = c1.domain();
        let region = SectorRegion::new(c1.clone(), lo, hi)?;
        let mut fields = vec![("kind", json!("loop")), ("area", num(loop_area(&region)?))];
        if let Some(samples) = a.monte_carlo {
            let inside = |z: ComplexPoint| {
                let psi = z.im.atan2(z.re);
                let mut theta = lo + (psi - lo).rem_euclid(TAU);
                let mut hit = false;
                while theta <= hi {
                    hit |= z.norm() <= c1.radius_or_nan(theta);
                    theta += TAU;
                }
                hit
            };
            let est = estimate_area(inside, bounding(max_radius(&c1)), samples, a.seed);
            fields.push(("monte_carlo", estimate_json(&est, a.seed)));
        }
        return Ok(document(fields));
    }
    match a.c2.as_deref() {
        None => {
            let mut fields = vec![("kind", json!("region")), ("area", num(curve_region_area(&c1)?))];
            if let Some(samples) = a.monte_carlo {
                let n = period_of(&c1)?;
                let inside = |z| inside_polar_region(&c1, n, z);
                let est = estimate_area(inside, bounding(max_radius(&c1)), samples, a.seed);
                fields.push(("monte_carlo", estimate_json(&est, a.seed)));
            }
            Ok(document(fields))
        }
        Some(text2) => {
            let c2 = curve(text2, &p, a.domain.as_deref())?;
            let overlap = curve_intersection(&c1, &c2)?;
            let mut fields = vec![
                ("kind", json!("intersection")),
                ("area", num(overlap.area)),
                (
                    "crossings",
                    Value::Array(overlap.crossings.iter().map(|&x| num(x)).collect()),
                ),
                (
                    "touches",
                    Value::Array(overlap.touches.iter().map(|&x| num(x)).collect()),
                ),
            ];
            if let Some(samples) = a.monte_carlo {
                let (n1, n2) = (period_of(&c1)?, period_of(&c2)?);
                let inside = |z| inside_polar_region(&c1, n1, z) && inside_polar_region(&c2, n2, z);
                let r = max_radius(&c1).min(max_radius(&c2));
                let est = estimate_area(inside, bounding(r), samples, a.seed);
                fields.push(("monte_carlo", estimate_json(&est, a.seed)));
            }
            Ok(document(fields))
        }
    }
}

pub fn period(a: &PeriodArgs) -> Out {
    let p = params(&a.curve.params)?;
    let c = PolarCurve::parse_with(&a.c1, &p)?;
    let n = polar_period(&c, a.max_n)?;
    Ok(document(vec![
        ("curve", json!(c.expr().to_string())),
        ("period_multiple_of_pi", n.map_or(Value::Null, |n| json!(n))),
    ]))
}

pub fn symmetry(a: &SymmetryArgs) -> Out {
    let p = params(&a.curve.params)?;
    let c = PolarCurve::parse_with(&a.c1, &p)?;
    let (kind, angle) = match (a.axis, &a.rotate, &a.reflect) {
        (Some(Axis::X), _, _) => ("reflection", 0.0),
        (Some(Axis::Y), _, _) => ("reflection", FRAC_PI_2),
        (Some(Axis::Origin), _, _) => ("rotation", PI),
        (None, Some(t), _) => ("rotation", constant(t)?),
        (None, None, Some(t)) => ("reflection", constant(t)?),
        (None, None, None) => return Err(CliError::Usage("symmetry needs --axis, --rotate or --reflect".into())),
    };
    let symmetric = if kind == "rotation" {
        is_rotation_symmetric(&c, angle, a.max_n)?
    } else {
        is_reflection_symmetric(&c, angle, a.max_n)?
    };
    Ok(document(vec![
        ("curve", json!(c.expr().to_string())),
        ("kind", json!(kind)),
        ("angle", num(angle)),
        ("symmetric", json!(symmetric)),
    ]))
}

pub fn roulette(a: &RouletteArgs) -> Out {
    let from = a.from.unwrap_or(a.t0);
    let to = a.to.unwrap_or(match a.base {
        Base::Line => from + 2.0 * TAU * a.radius,
        _ => from + TAU,
    });
    let lo = from.min(to).min(a.t0);
    let mut hi = from.max(to).max(a.t0);
    if hi <= lo {
        hi = lo + 1.0;
    }
    let dom = (lo, hi);
    let base = match a.base {
        Base::Line => ParamCurve::line(dom)?,
        Base::Circle => ParamCurve::circle(a.big_r, dom)?,
        Base::Ellipse => ParamCurve::ellipse(a.a, a.b, dom)?,
        Base::Limacon => ParamCurve::limacon(a.lambda, dom)?,
    };
    let side = match a.side {
        SideArg::Normal => Side::Normal,
        SideArg::Antinormal => Side::Antinormal,
    };
    let cfg = RollConfig::new(a.radius).side(side).reverse(a.reverse).k(a.k).t0(a.t0);
    let states = trace_states(&base, &cfg, from, to, a.samples)?;
    Ok(match a.format {
        TraceFormat::Csv => csv(
            &["t", "x", "y"],
            states.iter().map(|s| vec![s.t, s.trochoid.re, s.trochoid.im]),
        ),
        TraceFormat::Svg => {
            let base_points = states
                .iter()
                .map(|s| base.position(s.t))
                .collect::<curvekit::Result<Vec<_>>>()?;
            let trace: Vec<ComplexPoint> = states.iter().map(|s| s.trochoid).collect();
            svg(&[base_points, trace])
        }
    })
}

pub fn decompose(a: &DecomposeArgs) -> Out {
    let p = params(&a.curve.params)?;
    let c = curve(&a.c1, &p, a.domain.as_deref())?;
    let dec = positive_pieces(&c)?;
    let pieces: Vec<Value> = dec
        .pieces
        .iter()
        .map(|piece| {
            json!({
                "curve": piece.curve.expr().to_string(),
                "start": num(piece.start),
                "end": num(piece.end),
                "sign": num(piece.sign),
                "offset": num(piece.offset),
                "traced_twice": piece.traced_twice,
            })
        })
        .collect();
    let bound: Map<String, Value> = p.iter().map(|(k, v)| (k.clone(), num(*v))).collect();
    let (lo, hi) = c.domain();
    Ok(document(vec![
        ("curve", json!(c.expr().to_string())),
        ("params", Value::Object(bound)),
        ("domain", json!([num(lo), num(hi)])),
        ("distinct", json!(dec.distinct().count())),
        ("pieces", Value::Array(pieces)),
    ]))
}

pub fn plot(a: &PlotArgs) -> Out {
    if a.samples < 2 {
        return Err(CliError::Usage("--samples must be at least 2".into()));
    }
    if a.format == TraceFormat::Csv && a.curves.len() != 1 {
        return Err(CliError::Usage("CSV output takes exactly one curve".into()));
    }
    let p = params(&a.curve.params)?;
    let mut sampled = Vec::new();
    for text in &a.curves {
        let c = curve(text, &p, a.domain.as_deref())?;
        let (lo, hi) = c.domain();
        let rows: Vec<(f64, f64)> = (0..a.samples)
            .map(|j| {
                let theta = lo + (hi - lo) * j as f64 / (a.samples - 1) as f64;
                (theta, c.radius_or_nan(theta))
            })
            .collect();
        sampled.push(rows);
    }
    Ok(match a.format {
        TraceFormat::Csv => csv(
            &["theta", "r", "x", "y"],
            sampled[0]
                .iter()
                .filter(|(_, r)| r.is_finite())
                .map(|&(t, r)| vec![t, r, r * t.cos(), r * t.sin()]),
        ),
        TraceFormat::Svg => {
            let curves: Vec<Vec<ComplexPoint>> = sampled
                .iter()
                .map(|rows| rows.iter().map(|&(t, r)| ComplexPoint::from_polar(r, t)).collect())
                .collect();
            svg(&curves)
        }
    })
}
