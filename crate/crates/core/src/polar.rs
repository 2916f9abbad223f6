//! Polar points and curves `r = f(θ)`, viewed as the complex points
//! `f(θ)e^{iθ}`.
//!
//! Two nonzero polar points `(r, θ)` and `(s, φ)` coincide exactly when
//! `r = s, θ ≡ φ (mod 2π)` or `r = −s, θ ≡ φ + π (mod 2π)`. Everything in this
//! module (periods, symmetry tests, the non-negative decomposition) is built
//! on that rule.

use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::expr::{parse, Expr, Params};
use crate::geometry::{hausdorff, CurveSampler};
use crate::numerics::{default_grid, find_roots, DEFAULT_TOL};
use crate::{Error, Result};

/// A point of the plane as `x + iy`.
pub type ComplexPoint = Complex64;

/// Samples used by the period and symmetry tests.
pub const SYMMETRY_SAMPLES: usize = 512;
/// Agreement tolerance for the period and symmetry relations.
pub const SYMMETRY_TOL: f64 = 1e-9;
/// Default search bound for polar periods, in multiples of π.
pub const DEFAULT_MAX_PERIOD: u32 = 64;
/// Sampled Hausdorff distance below which two traced sets count as the same.
pub const DUPLICATE_TOL: f64 = 1e-6;
const DUPLICATE_SAMPLES: usize = 256;
// Irrational offset keeps the sample grid off rational multiples of π.
const SAMPLE_OFFSET: f64 = std::f64::consts::FRAC_1_PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    pub r: f64,
    pub theta: f64,
}

impl PolarPoint {
    pub fn new(r: f64, theta: f64) -> Self {
        PolarPoint { r, theta }
    }

    /// Representative with `r ≥ 0` and `θ ∈ [0, 2π)`; the origin maps to `(0, 0)`.
    pub fn canonicalize(self) -> Self {
        if self.r == 0.0 {
            return PolarPoint::new(0.0, 0.0);
        }
        let (r, theta) = if self.r < 0.0 {
            (-self.r, self.theta + PI)
        } else {
            (self.r, self.theta)
        };
        let mut theta = theta.rem_euclid(TAU);
        if theta >= TAU {
            theta = 0.0;
        }
        PolarPoint::new(r, theta)
    }

    pub fn to_complex(self) -> ComplexPoint {
        Complex64::new(self.r * self.theta.cos(), self.r * self.theta.sin())
    }
}

/// Geometric equality: the two points are within `tol` in the plane.
pub fn points_equal(p: PolarPoint, q: PolarPoint, tol: f64) -> bool {
    (p.to_complex() - q.to_complex()).norm() < tol
}

/// A polar curve `r = f(θ)` with bound parameters and a working domain.
#[derive(Debug, Clone)]
pub struct PolarCurve {
    expr: Expr,
    params: Params,
    bound: Expr,
    domain: (f64, f64),
    period: OnceLock<u32>,
}

impl PolarCurve {
    /// Curve on the default domain `[0, 2π]`. Fails if a parameter is unbound.
    pub fn new(expr: Expr, params: Params) -> Result<Self> {
        let bound = expr.bind(&params)?;
        Ok(PolarCurve {
            expr,
            params,
            bound,
            domain: (0.0, TAU),
            period: OnceLock::new(),
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse(text)?, Params::new())
    }

    pub fn parse_with(text: &str, params: &Params) -> Result<Self> {
        Self::new(parse(text)?, params.clone())
    }

    pub fn with_domain(mut self, start: f64, end: f64) -> Result<Self> {
        if !(start < end) || !start.is_finite() || !end.is_finite() {
            return Err(Error::InvalidArgument(format!("empty domain [{start}, {end}]")));
        }
        self.domain = (start, end);
        Ok(self)
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn radius(&self, theta: f64) -> Result<f64> {
        Ok(self.bound.eval(theta, &Params::new())?)
    }

    /// Radius, with NaN where the expression is singular.
    pub fn radius_or_nan(&self, theta: f64) -> f64 {
        self.bound.eval(theta, &Params::new()).unwrap_or(f64::NAN)
    }

    pub fn point(&self, theta: f64) -> Result<ComplexPoint> {
        Ok(PolarPoint::new(self.radius(theta)?, theta).to_complex())
    }

    /// The curve `φ ↦ sign · f(φ − offset)`, which traces the points
    /// `f(θ)e^{iθ}` moved to the parameter `φ = θ + offset`.
    pub fn reparameterized(&self, offset: f64, sign: f64) -> PolarCurve {
        let shifted = if offset == 0.0 {
            self.expr.clone()
        } else if offset > 0.0 {
            self.expr.substitute_var(&Expr::sub(Expr::Var, Expr::Const(offset)))
        } else {
            self.expr.substitute_var(&Expr::add(Expr::Var, Expr::Const(-offset)))
        };
        let expr = if sign < 0.0 { Expr::neg(shifted) } else { shifted };
        let bound = expr.bind(&self.params).expect("parameters already bound");
        PolarCurve {
            expr,
            params: self.params.clone(),
            bound,
            domain: self.domain,
            period: OnceLock::new(),
        }
    }

    /// Period in multiples of π, cached after the first successful search.
    pub fn period(&self, max_n: u32) -> Result<Option<u32>> {
        polar_period(self, max_n)
    }
}

fn sample_angles(window: f64, count: usize) -> impl Iterator<Item = f64> {
    (0..count).map(move |j| window * (j as f64 + SAMPLE_OFFSET) / count as f64)
}

fn relation_holds(lhs: f64, rhs: f64) -> bool {
    (lhs - rhs).abs() < SYMMETRY_TOL * (1.0 + lhs.abs())
}

/// Smallest `N ≤ max_n` with `f(θ) = (−1)^N f(θ + Nπ)` on the sample grid;
/// the polar graph then has period `Nπ`.
pub fn polar_period(c: &PolarCurve, max_n: u32) -> Result<Option<u32>> {
    if let Some(&n) = c.period.get() {
        return Ok((n <= max_n).then_some(n));
    }
    for n in 1..=max_n {
        let shift = n as f64 * PI;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let mut holds = true;
        for theta in sample_angles(shift, SYMMETRY_SAMPLES) {
            let lhs = c.radius(theta)?;
            let rhs = sign * c.radius(theta + shift)?;
            if !relation_holds(lhs, rhs) {
                holds = false;
                break;
            }
        }
        if holds {
            // racing writers store the same value
            let _ = c.period.set(n);
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Checks a per-sample relation `f(θ) = (−1)^n f(image(θ) + nπ)` for some
/// integer `n ∈ [0, 2N]`, over one period `Nπ` (or `max_n·π` when no period
/// is found). Samples at the origin are skipped: the origin is fixed by every
/// rotation and reflection through it.
fn symmetric_under<M: Fn(f64) -> f64>(c: &PolarCurve, max_n: u32, image: M) -> Result<bool> {
    let window_n = polar_period(c, max_n)?.unwrap_or(max_n);
    let window = window_n as f64 * PI;
    let samples = SYMMETRY_SAMPLES * window_n as usize;
    for theta in sample_angles(window, samples) {
        let r = c.radius(theta)?;
        if r.abs() < SYMMETRY_TOL {
            continue;
        }
        let base = image(theta);
        let mut matched = false;
        for n in 0..=2 * window_n {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            if relation_holds(r, sign * c.radius(base + n as f64 * PI)?) {
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether rotating the graph through `theta0` maps it onto itself.
pub fn is_rotation_symmetric(c: &PolarCurve, theta0: f64, max_n: u32) -> Result<bool> {
    symmetric_under(c, max_n, |theta| theta + theta0)
}

/// Whether reflecting the graph in the line `θ = theta0` maps it onto itself.
pub fn is_reflection_symmetric(c: &PolarCurve, theta0: f64, max_n: u32) -> Result<bool> {
    symmetric_under(c, max_n, |theta| 2.0 * theta0 - theta)
}

/// One non-negative piece `0 ≤ r = g(φ)`, `φ ∈ [start, end]`, where
/// `g(φ) = sign · f(φ − offset)` for the original curve `f`.
#[derive(Debug, Clone)]
pub struct Piece {
    pub curve: PolarCurve,
    pub start: f64,
    pub end: f64,
    pub sign: f64,
    pub offset: f64,
    /// The piece retraces points already covered by an earlier piece.
    pub traced_twice: bool,
}

impl Piece {
    pub fn radius(&self, phi: f64) -> Result<f64> {
        self.curve.radius(phi)
    }
}

#[derive(Debug, Clone)]
pub struct PiecewiseDecomposition {
    pub pieces: Vec<Piece>,
}

impl PiecewiseDecomposition {
    /// Pieces that add new points to the graph.
    pub fn distinct(&self) -> impl Iterator<Item = &Piece> {
        self.pieces.iter().filter(|p| !p.traced_twice)
    }
}

#[derive(Debug, Clone, Copy)]
struct SignRun {
    start: f64,
    end: f64,
    negative: bool,
}

/// Rewrites the curve on its domain as pieces with non-negative radius.
///
/// Where `f ≤ 0` on `[a, b]`, the same points are `−f(φ − π)e^{iφ}` for
/// `φ ∈ [a + π, b + π]`. Runs that meet across the ends of a domain that is a
/// whole number of turns, with `f` periodic across the seam, are joined into
/// one piece. Every piece is shifted by whole turns so it starts in `[0, 2π)`.
pub fn positive_pieces(c: &PolarCurve) -> Result<PiecewiseDecomposition> {
    let (a, b) = c.domain();
    let probe: Vec<f64> = (0..=1024)
        .map(|j| c.radius(a + (b - a) * j as f64 / 1024.0))
        .collect::<Result<_>>()?;
    if probe.iter().all(|r| r.abs() < 1e-12) {
        let curve = PolarCurve::new(Expr::Const(0.0), Params::new())?.with_domain(a, b)?;
        return Ok(PiecewiseDecomposition {
            pieces: vec![Piece {
                curve,
                start: a,
                end: b,
                sign: 1.0,
                offset: 0.0,
                traced_twice: false,
            }],
        });
    }

    let roots = find_roots(|x| c.radius_or_nan(x), a, b, default_grid(a, b), DEFAULT_TOL)?;
    let mut cuts = vec![a];
    cuts.extend(roots.xs().into_iter().filter(|&x| x > a + 1e-9 && x < b - 1e-9));
    cuts.push(b);

    let mut runs: Vec<SignRun> = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi - lo < 1e-9 {
            continue;
        }
        let negative = run_is_negative(c, lo, hi)?;
        match runs.last_mut() {
            Some(last) if last.negative == negative => last.end = hi,
            _ => runs.push(SignRun {
                start: lo,
                end: hi,
                negative,
            }),
        }
    }

    let length = b - a;
    let turns = (length / TAU).round();
    if runs.len() >= 2
        && turns >= 1.0
        && (length - turns * TAU).abs() < 1e-9
        && runs[0].negative == runs[runs.len() - 1].negative
        && periodic_over(c, runs[0].start, runs[0].end, length)?
    {
        let first = runs.remove(0);
        let last = runs.last_mut().expect("at least one run remains");
        last.end = first.end + length;
    }

    let mut pieces: Vec<Piece> = Vec::with_capacity(runs.len());
    for run in runs {
        let (sign, flip) = if run.negative { (-1.0, PI) } else { (1.0, 0.0) };
        let turns = ((run.start + flip) / TAU).floor();
        let offset = flip - turns * TAU;
        let curve = c.reparameterized(offset, sign);
        let (start, end) = (run.start + offset, run.end + offset);
        let curve = curve.with_domain(start, end)?;
        let traced_twice = pieces.iter().any(|earlier| same_point_set(earlier, &curve, start, end));
        pieces.push(Piece {
            curve,
            start,
            end,
            sign,
            offset,
            traced_twice,
        });
    }
    Ok(PiecewiseDecomposition { pieces })
}

fn run_is_negative(c: &PolarCurve, lo: f64, hi: f64) -> Result<bool> {
    // largest-magnitude interior sample decides
    let mut best = 0.0f64;
    for k in 1..8 {
        let r = c.radius(lo + (hi - lo) * k as f64 / 8.0)?;
        if r.abs() > best.abs() {
            best = r;
        }
    }
    Ok(best < 0.0)
}

fn periodic_over(c: &PolarCurve, lo: f64, hi: f64, shift: f64) -> Result<bool> {
    for k in 0..=64 {
        let x = lo + (hi - lo) * k as f64 / 64.0;
        if !relation_holds(c.radius(x)?, c.radius(x + shift)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn same_point_set(earlier: &Piece, curve: &PolarCurve, start: f64, end: f64) -> bool {
    let f = |t: f64| earlier.curve.point(t).ok();
    let g = |t: f64| curve.point(t).ok();
    let sa = CurveSampler::new(&f, earlier.start, earlier.end, DUPLICATE_SAMPLES);
    let sb = CurveSampler::new(&g, start, end, DUPLICATE_SAMPLES);
    hausdorff(&sa, &sb) < DUPLICATE_TOL
}
