//! Intersection points of two polar curves.
//!
//! A nonzero common point `f(θ)e^{iθ} = g(φ)e^{iφ}` forces either
//! `φ = θ + 2nπ` with `f(θ) = g(φ)`, or `φ = θ + π + 2nπ` with
//! `f(θ) = −g(φ)`. Both families are solved on a window covering the two
//! periods. The origin has no angle and is tested on its own.

use std::f64::consts::{PI, TAU};

use crate::geometry::{hausdorff, CurveSampler};
use crate::numerics::{default_grid, find_roots, DEFAULT_TOL};
use crate::polar::{polar_period, ComplexPoint, PolarCurve, DEFAULT_MAX_PERIOD, DUPLICATE_TOL};
use crate::{Error, Result};

/// Solutions with `|f(θ)|` below this are the origin.
pub const ZERO_RADIUS: f64 = 1e-9;
/// Plane distance under which two intersection points are the same point.
pub const DEDUPE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntersectionPoint {
    pub point: ComplexPoint,
    /// Angle on the first curve.
    pub theta1: f64,
    /// Angle on the second curve.
    pub theta2: f64,
    /// `|f(θ₁)e^{iθ₁} − g(θ₂)e^{iθ₂}|`.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionResult {
    pub origin: bool,
    /// Angles at which each curve passes through the origin.
    pub origin_witnesses: Option<(f64, f64)>,
    /// Nonzero common points, sorted by argument then modulus.
    pub points: Vec<IntersectionPoint>,
}

fn zero_in(c: &PolarCurve, start: f64, end: f64) -> Result<Option<f64>> {
    let roots = find_roots(
        |x| c.radius_or_nan(x),
        start,
        end,
        default_grid(start, end),
        DEFAULT_TOL,
    )?;
    Ok(roots
        .into_iter()
        .find(|root| root.residual < ZERO_RADIUS)
        .map(|root| root.x))
}

/// First angle in the curve's domain where it passes through the origin.
pub fn origin_on_curve(c: &PolarCurve) -> Result<Option<f64>> {
    let (start, end) = c.domain();
    zero_in(c, start, end)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}

fn period_of(c: &PolarCurve) -> Result<u32> {
    polar_period(c, DEFAULT_MAX_PERIOD)?.ok_or(Error::UnknownPeriod {
        max_n: DEFAULT_MAX_PERIOD,
    })
}

fn same_graph(c1: &PolarCurve, n1: u32, c2: &PolarCurve, n2: u32) -> bool {
    let f = |t: f64| c1.point(t).ok();
    let g = |t: f64| c2.point(t).ok();
    let s1 = CurveSampler::new(&f, 0.0, n1 as f64 * PI, 256);
    let s2 = CurveSampler::new(&g, 0.0, n2 as f64 * PI, 256);
    hausdorff(&s1, &s2) < DUPLICATE_TOL
}

fn canonical_angle(z: ComplexPoint) -> f64 {
    if z.im.abs() < 1e-12 && z.re > 0.0 {
        return 0.0;
    }
    let arg = z.arg();
    if arg < 0.0 {
        arg + TAU
    } else {
        arg
    }
}

/// All common points of two periodic polar curves.
///
/// Fails with [`Error::IdenticalCurves`] when both graphs are the same point
/// set, and with [`Error::UnknownPeriod`] when either curve has no period.
pub fn intersections(c1: &PolarCurve, c2: &PolarCurve) -> Result<IntersectionResult> {
    let n1 = period_of(c1)?;
    let n2 = period_of(c2)?;
    if same_graph(c1, n1, c2, n2) {
        return Err(Error::IdenticalCurves);
    }

    let window = lcm(lcm(n1, n2), 2) as f64 * PI;
    let grid = default_grid(0.0, window);
    let shifts = n2.div_ceil(2);

    let mut candidates: Vec<IntersectionPoint> = Vec::new();
    for n in 0..shifts {
        let turn = n as f64 * TAU;
        // f(θ) = g(θ + 2nπ)  and  f(θ) = −g(θ + π + 2nπ)
        for (offset, sign) in [(turn, 1.0), (turn + PI, -1.0)] {
            let h = |x: f64| c1.radius_or_nan(x) - sign * c2.radius_or_nan(x + offset);
            for root in find_roots(h, 0.0, window, grid, DEFAULT_TOL)? {
                let theta1 = root.x;
                let r1 = c1.radius(theta1)?;
                if r1.abs() < ZERO_RADIUS {
                    continue;
                }
                let theta2 = theta1 + offset;
                let point = c1.point(theta1)?;
                let residual = (point - c2.point(theta2)?).norm();
                candidates.push(IntersectionPoint {
                    point,
                    theta1,
                    theta2,
                    residual,
                });
            }
        }
    }

    let mut points: Vec<IntersectionPoint> = Vec::new();
    for cand in candidates {
        match points.iter_mut().find(|p| (p.point - cand.point).norm() < DEDUPE_TOL) {
            Some(existing) if cand.residual < existing.residual => *existing = cand,
            Some(_) => {}
            None => points.push(cand),
        }
    }
    points.sort_by(|p, q| {
        canonical_angle(p.point)
            .total_cmp(&canonical_angle(q.point))
            .then(p.point.norm().total_cmp(&q.point.norm()))
    });

    let w1 = zero_in(c1, 0.0, n1 as f64 * PI)?;
    let w2 = zero_in(c2, 0.0, n2 as f64 * PI)?;
    let origin_witnesses = w1.zip(w2);
    Ok(IntersectionResult {
        origin: origin_witnesses.is_some(),
        origin_witnesses,
        points,
    })
}

/// Number of common points other than the origin.
pub fn count_nonzero_intersections(c1: &PolarCurve, c2: &PolarCurve) -> Result<usize> {
    Ok(intersections(c1, c2)?.points.len())
}
