//! A circle rolling without slipping along a regular plane curve.
//!
//! The base curve is `α(t) = x(t) + i y(t)` with unit tangent `u = α′/|α′|`.
//! After rolling from `t₀` to `t` the circle has turned by
//! `θ(t) = s(t₀, t)/r`, `s` being arc length. On the normal side (centre at
//! `α + iur`) the point that started at `α(t₀)` sits at
//! `c − iur·e^{−iθ}`; on the antinormal side (centre at `α − iur`) at
//! `c + iur·e^{iθ}`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::expr::{parse, Expr, Params};
use crate::numerics::{integrate, DEFAULT_TOL};
use crate::polar::ComplexPoint;
use crate::{Error, Result};

/// Minimum `|α′|` accepted on the regularity samples.
pub const MIN_SPEED: f64 = 1e-9;
const REGULARITY_SAMPLES: usize = 1024;
const DOMAIN_SLACK: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct ParamCurve {
    x: Expr,
    y: Expr,
    dx: Expr,
    dy: Expr,
    params: Params,
    domain: (f64, f64),
}

impl ParamCurve {
    /// Curve from coordinate expressions; the derivative is taken symbolically.
    pub fn new(x: Expr, y: Expr, params: Params, domain: (f64, f64)) -> Result<Self> {
        let dx = x.derivative()?;
        let dy = y.derivative()?;
        Self::with_derivative(x, y, dx, dy, params, domain)
    }

    pub fn parse(x: &str, y: &str, params: Params, domain: (f64, f64)) -> Result<Self> {
        Self::new(parse(x)?, parse(y)?, params, domain)
    }

    /// Curve with an explicitly supplied derivative `(dx, dy)`.
    pub fn with_derivative(x: Expr, y: Expr, dx: Expr, dy: Expr, params: Params, domain: (f64, f64)) -> Result<Self> {
        let (start, end) = domain;
        if !(start < end) || !start.is_finite() || !end.is_finite() {
            return Err(Error::InvalidArgument(format!("bad curve domain [{start}, {end}]")));
        }
        let curve = ParamCurve {
            x: x.bind(&params)?,
            y: y.bind(&params)?,
            dx: dx.bind(&params)?,
            dy: dy.bind(&params)?,
            params,
            domain,
        };
        for j in 0..=REGULARITY_SAMPLES {
            let t = start + (end - start) * j as f64 / REGULARITY_SAMPLES as f64;
            let speed = curve.velocity(t)?.norm();
            if !(speed > MIN_SPEED) {
                return Err(Error::NotRegular { t, speed });
            }
        }
        Ok(curve)
    }

    /// The line `α(t) = t`.
    pub fn line(domain: (f64, f64)) -> Result<Self> {
        Self::parse("t", "0", Params::new(), domain)
    }

    /// The circle `α(t) = R e^{it}`.
    pub fn circle(radius: f64, domain: (f64, f64)) -> Result<Self> {
        Self::parse("R*cos(t)", "R*sin(t)", Params::from([("R".into(), radius)]), domain)
    }

    /// The ellipse `(a cos t, b sin t)`.
    pub fn ellipse(a: f64, b: f64, domain: (f64, f64)) -> Result<Self> {
        Self::parse(
            "a*cos(t)",
            "b*sin(t)",
            Params::from([("a".into(), a), ("b".into(), b)]),
            domain,
        )
    }

    /// The limaçon `α(t) = (1 + λ cos t) e^{it}`.
    pub fn limacon(lambda: f64, domain: (f64, f64)) -> Result<Self> {
        Self::parse(
            "(1 + lambda*cos(t))*cos(t)",
            "(1 + lambda*cos(t))*sin(t)",
            Params::from([("lambda".into(), lambda)]),
            domain,
        )
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    fn check_domain(&self, t: f64) -> Result<()> {
        let (start, end) = self.domain;
        if t < start - DOMAIN_SLACK || t > end + DOMAIN_SLACK || t.is_nan() {
            return Err(Error::OutOfDomain { t, start, end });
        }
        Ok(())
    }

    pub fn position(&self, t: f64) -> Result<ComplexPoint> {
        let empty = Params::new();
        Ok(Complex64::new(self.x.eval(t, &empty)?, self.y.eval(t, &empty)?))
    }

    pub fn velocity(&self, t: f64) -> Result<ComplexPoint> {
        let empty = Params::new();
        Ok(Complex64::new(self.dx.eval(t, &empty)?, self.dy.eval(t, &empty)?))
    }

    fn speed_or_nan(&self, t: f64) -> f64 {
        self.velocity(t).map_or(f64::NAN, |v| v.norm())
    }

    fn unit_tangent(&self, t: f64) -> Result<ComplexPoint> {
        let v = self.velocity(t)?;
        let speed = v.norm();
        if !(speed > MIN_SPEED) {
            return Err(Error::NotRegular { t, speed });
        }
        Ok(v / speed)
    }
}

/// Signed arc length of `c` from `t0` to `t`.
pub fn arc_length(c: &ParamCurve, t0: f64, t: f64) -> Result<f64> {
    c.check_domain(t0)?;
    c.check_domain(t)?;
    Ok(integrate(|u| c.speed_or_nan(u), t0, t, DEFAULT_TOL)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Side {
    /// Circle centre on the side of `iα′`.
    #[default]
    Normal,
    /// Circle centre on the side of `−iα′`.
    Antinormal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RollConfig {
    pub radius: f64,
    pub side: Side,
    /// Turn the circle the other way, `θ → −θ`.
    pub reverse: bool,
    /// Trochoid factor: `Q = P + k(P − c)`.
    pub k: f64,
    /// Parameter of the initial contact.
    pub t0: f64,
}

impl RollConfig {
    pub fn new(radius: f64) -> Self {
        RollConfig {
            radius,
            side: Side::Normal,
            reverse: false,
            k: 0.0,
            t0: 0.0,
        }
    }

    pub fn side(mut self, side: Side) -> Self {
        self.side = side;
        self
    }

    pub fn reverse(mut self, reverse: bool) -> Self {
        self.reverse = reverse;
        self
    }

    pub fn k(mut self, k: f64) -> Self {
        self.k = k;
        self
    }

    pub fn t0(mut self, t0: f64) -> Self {
        self.t0 = t0;
        self
    }

    fn validate(&self, c: &ParamCurve) -> Result<()> {
        if !(self.radius > 0.0) || !self.radius.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "rolling radius must be positive, got {}",
                self.radius
            )));
        }
        if !self.k.is_finite() {
            return Err(Error::InvalidArgument("trochoid factor must be finite".into()));
        }
        c.check_domain(self.t0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RollState {
    pub t: f64,
    pub center: ComplexPoint,
    /// Rotation angle of the circle.
    pub angle: f64,
    /// The traced point that started at the initial contact.
    pub contact: ComplexPoint,
    /// `contact + k(contact − center)`.
    pub trochoid: ComplexPoint,
}

fn state_from_arc(c: &ParamCurve, cfg: &RollConfig, t: f64, arc: f64) -> Result<RollState> {
    let r = cfg.radius;
    let mut angle = arc / r;
    if cfg.reverse {
        angle = -angle;
    }
    let alpha = c.position(t)?;
    let iu = Complex64::i() * c.unit_tangent(t)?;
    let (center, contact) = match cfg.side {
        Side::Normal => {
            let center = alpha + iu * r;
            (center, center - iu * r * Complex64::cis(-angle))
        }
        Side::Antinormal => {
            let center = alpha - iu * r;
            (center, center + iu * r * Complex64::cis(angle))
        }
    };
    Ok(RollState {
        t,
        center,
        angle,
        contact,
        trochoid: contact + cfg.k * (contact - center),
    })
}

/// Position of the rolling circle at parameter `t`.
pub fn roll_state(c: &ParamCurve, cfg: &RollConfig, t: f64) -> Result<RollState> {
    cfg.validate(c)?;
    let arc = arc_length(c, cfg.t0, t)?;
    state_from_arc(c, cfg, t, arc)
}

/// States at `samples` evenly spaced parameters in `[from, to]`. Arc length
/// is accumulated gap by gap.
pub fn trace_states(c: &ParamCurve, cfg: &RollConfig, from: f64, to: f64, samples: usize) -> Result<Vec<RollState>> {
    if samples < 2 {
        return Err(Error::InvalidArgument("a trace needs at least two samples".into()));
    }
    cfg.validate(c)?;
    c.check_domain(from)?;
    c.check_domain(to)?;
    let ts: Vec<f64> = (0..samples)
        .map(|j| {
            if j + 1 == samples {
                to
            } else {
                from + (to - from) * j as f64 / (samples - 1) as f64
            }
        })
        .collect();
    let gap_tol = DEFAULT_TOL / samples as f64;
    let mut arc = arc_length(c, cfg.t0, from)?;
    let mut out = Vec::with_capacity(samples);
    for (j, &t) in ts.iter().enumerate() {
        if j > 0 {
            arc += integrate(|u| c.speed_or_nan(u), ts[j - 1], t, gap_tol)?;
        }
        out.push(state_from_arc(c, cfg, t, arc)?);
    }
    Ok(out)
}

/// Trochoid points `Q` (the contact point itself when `k = 0`).
pub fn trace(c: &ParamCurve, cfg: &RollConfig, from: f64, to: f64, samples: usize) -> Result<Vec<ComplexPoint>> {
    Ok(trace_states(c, cfg, from, to, samples)?
        .into_iter()
        .map(|s| s.trochoid)
        .collect())
}

/// Parameters in `[from, to]` where the circle has turned a whole number of
/// times, so the traced point is back on the base curve.
pub fn contact_parameters(c: &ParamCurve, cfg: &RollConfig, from: f64, to: f64) -> Result<Vec<f64>> {
    cfg.validate(c)?;
    let (lo, hi) = (from.min(to), from.max(to));
    let s_lo = arc_length(c, cfg.t0, lo)?;
    let s_hi = arc_length(c, cfg.t0, hi)?;
    let turn = TAU * cfg.radius;
    let first = (s_lo / turn).ceil() as i64;
    let last = (s_hi / turn).floor() as i64;
    let mut out = Vec::new();
    for m in first..=last {
        let target = m as f64 * turn;
        // arc length is increasing in t, so bisect on it
        let (mut a, mut b) = (lo, hi);
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if arc_length(c, cfg.t0, mid)? < target {
                a = mid;
            } else {
                b = mid;
            }
        }
        out.push(0.5 * (a + b));
    }
    Ok(out)
}

/// `t + ir − ir e^{−it/r}`: a circle of radius `r` rolling on the real axis.
pub fn cycloid_point(r: f64, t: f64) -> ComplexPoint {
    let i = Complex64::i();
    t + i * r - i * r * Complex64::cis(-t / r)
}

fn check_radii(big: f64, small: f64) -> Result<()> {
    if !(small > 0.0) || !(big > small) {
        return Err(Error::InvalidArgument(format!(
            "need R > r > 0, got R = {big}, r = {small}"
        )));
    }
    Ok(())
}

/// `(R + r)e^{it} − r e^{it(1 + R/r)}`.
pub fn epicycloid_point(big: f64, small: f64, t: f64) -> Result<ComplexPoint> {
    check_radii(big, small)?;
    Ok((big + small) * Complex64::cis(t) - small * Complex64::cis(t * (1.0 + big / small)))
}

/// `(R − r)e^{it} + r e^{it(1 − R/r)}`.
pub fn hypocycloid_point(big: f64, small: f64, t: f64) -> Result<ComplexPoint> {
    check_radii(big, small)?;
    Ok((big - small) * Complex64::cis(t) + small * Complex64::cis(t * (1.0 - big / small)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn arc_lengths() {
        let line = ParamCurve::line((-10.0, 10.0)).unwrap();
        assert!((arc_length(&line, 0.0, 5.0).unwrap() - 5.0).abs() < 1e-12);
        assert!((arc_length(&line, 0.0, -2.0).unwrap() + 2.0).abs() < 1e-12);
        let circle = ParamCurve::circle(2.0, (0.0, TAU)).unwrap();
        assert!((arc_length(&circle, 0.0, PI).unwrap() - TAU).abs() < 1e-10);
        assert!(arc_length(&circle, 0.0, 7.0).is_err());
    }

    #[test]
    fn ellipse_perimeter() {
        // independent oracle: Gauss–Kummer series for the perimeter
        let (a, b) = (3.0f64, 2.0f64);
        let h = ((a - b) / (a + b)).powi(2);
        let mut sum = 1.0;
        let mut coeff = 1.0f64;
        for n in 1..60 {
            // binomial(1/2, n)
            coeff *= (0.5 - (n as f64 - 1.0)) / n as f64;
            sum += coeff * coeff * h.powi(n);
        }
        let oracle = PI * (a + b) * sum;
        assert!((oracle - 15.86543959).abs() < 1e-8);
        let e = ParamCurve::ellipse(a, b, (0.0, TAU)).unwrap();
        assert!((arc_length(&e, 0.0, TAU).unwrap() - oracle).abs() < 1e-9);
    }

    #[test]
    fn irregular_curve_is_rejected() {
        let err = ParamCurve::parse("t^2", "t^3", Params::new(), (-1.0, 1.0)).unwrap_err();
        assert!(matches!(err, Error::NotRegular { .. }));
    }

    #[test]
    fn line_examples() {
        let line = ParamCurve::line((-20.0, 20.0)).unwrap();
        let cfg = RollConfig::new(1.0);
        assert!(roll_state(&line, &cfg, 0.0).unwrap().contact.norm() < 1e-15);
        let s = roll_state(&line, &cfg, PI).unwrap();
        assert!(close(s.contact, Complex64::new(PI, 2.0), 1e-12));
        assert!(roll_state(&line, &cfg, 30.0).is_err());
    }

    #[test]
    fn circle_examples() {
        let circle = ParamCurve::circle(2.0, (0.0, TAU)).unwrap();
        let outside = RollConfig::new(1.0).side(Side::Antinormal);
        let s = roll_state(&circle, &outside, FRAC_PI_2).unwrap();
        assert!(close(s.contact, Complex64::new(0.0, 4.0), 1e-10));
        let inside = RollConfig::new(1.0);
        for t in [0.3, 1.0, 2.5, 4.0] {
            let p = roll_state(&circle, &inside, t).unwrap().contact;
            assert!(close(p, Complex64::new(2.0 * t.cos(), 0.0), 1e-10));
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(cycloid_point(1.0, 0.0), Complex64::new(0.0, 0.0));
        assert!(close(cycloid_point(1.0, PI), Complex64::new(PI, 2.0), 1e-15));
        assert!(close(
            cycloid_point(2.0, 4.0 * PI),
            Complex64::new(4.0 * PI, 0.0),
            1e-14
        ));
        assert!(close(
            epicycloid_point(3.0, 1.0, 0.0).unwrap(),
            Complex64::new(3.0, 0.0),
            1e-15
        ));
        assert!(close(
            hypocycloid_point(2.0, 1.0, FRAC_PI_2).unwrap(),
            Complex64::new(0.0, 0.0),
            1e-15
        ));
        assert!(close(
            epicycloid_point(2.0, 1.0, FRAC_PI_2).unwrap(),
            Complex64::new(0.0, 4.0),
            1e-15
        ));
        assert!(epicycloid_point(1.0, 1.0, 0.0).is_err());
        assert!(hypocycloid_point(1.0, 2.0, 0.0).is_err());
    }

    #[test]
    fn rolling_matches_closed_forms() {
        let ts: Vec<f64> = (0..1000).map(|j| TAU * j as f64 / 999.0).collect();
        let line = ParamCurve::line((0.0, TAU)).unwrap();
        let cfg = RollConfig::new(0.7);
        for (t, s) in ts.iter().zip(trace_states(&line, &cfg, 0.0, TAU, 1000).unwrap()) {
            assert!(close(s.contact, cycloid_point(0.7, *t), 1e-8));
        }
        let circle = ParamCurve::circle(3.0, (0.0, TAU)).unwrap();
        let epi = RollConfig::new(1.0).side(Side::Antinormal);
        for (t, s) in ts.iter().zip(trace_states(&circle, &epi, 0.0, TAU, 1000).unwrap()) {
            assert!(close(s.contact, epicycloid_point(3.0, 1.0, *t).unwrap(), 1e-8));
        }
        let hypo = RollConfig::new(1.0);
        for (t, s) in ts.iter().zip(trace_states(&circle, &hypo, 0.0, TAU, 1000).unwrap()) {
            assert!(close(s.contact, hypocycloid_point(3.0, 1.0, *t).unwrap(), 1e-8));
        }
    }

    #[test]
    fn trace_endpoints_and_closure() {
        let r = 0.5;
        let line = ParamCurve::line((0.0, TAU * r)).unwrap();
        let pts = trace(&line, &RollConfig::new(r), 0.0, TAU * r, 64).unwrap();
        assert!(pts[0].im.abs() < 1e-8 && pts[63].im.abs() < 1e-8);

        let circle = ParamCurve::circle(2.0, (0.0, TAU)).unwrap();
        let pts = trace(&circle, &RollConfig::new(1.0).side(Side::Antinormal), 0.0, TAU, 200).unwrap();
        assert!(close(pts[0], pts[199], 1e-8));
    }

    #[test]
    fn astroid() {
        let circle = ParamCurve::circle(4.0, (0.0, TAU)).unwrap();
        for p in trace(&circle, &RollConfig::new(1.0), 0.0, TAU, 500).unwrap() {
            let lhs = p.re.abs().powf(2.0 / 3.0) + p.im.abs().powf(2.0 / 3.0);
            assert!((lhs - 4f64.powf(2.0 / 3.0)).abs() < 1e-6, "{p}");
        }
    }

    #[test]
    fn incremental_trace_matches_one_shot() {
        let e = ParamCurve::ellipse(3.0, 2.0, (0.0, TAU)).unwrap();
        let cfg = RollConfig::new(0.4).side(Side::Antinormal).t0(0.5);
        let states = trace_states(&e, &cfg, 0.2, 6.0, 300).unwrap();
        for s in states.iter().step_by(37) {
            let direct = roll_state(&e, &cfg, s.t).unwrap();
            assert!((direct.angle - s.angle).abs() * cfg.radius < 1e-9);
        }
    }

    #[test]
    fn trochoid_factor() {
        let e = ParamCurve::ellipse(3.0, 2.0, (0.0, TAU)).unwrap();
        for k in [0.0, -1.0, 0.5, 2.0] {
            let s = roll_state(&e, &RollConfig::new(0.5).k(k), 1.3).unwrap();
            assert!(close(s.trochoid - s.center, (1.0 + k) * (s.contact - s.center), 1e-12));
        }
        let s = roll_state(&e, &RollConfig::new(0.5).k(-1.0), 1.3).unwrap();
        assert!(close(s.trochoid, s.center, 1e-12));
    }

    #[test]
    fn rolling_constraint_and_contacts() {
        let lim = ParamCurve::limacon(0.5, (0.0, TAU)).unwrap();
        for side in [Side::Normal, Side::Antinormal] {
            for reverse in [false, true] {
                let cfg = RollConfig::new(0.3).side(side).reverse(reverse);
                for s in trace_states(&lim, &cfg, 0.0, TAU, 400).unwrap() {
                    assert!(((s.contact - s.center).norm() - 0.3).abs() < 1e-8);
                    let alpha = lim.position(s.t).unwrap();
                    assert!(((s.center - alpha).norm() - 0.3).abs() < 1e-8);
                }
                let contacts = contact_parameters(&lim, &cfg, 0.0, TAU).unwrap();
                assert!(contacts.len() >= 3);
                for t in contacts {
                    let s = roll_state(&lim, &cfg, t).unwrap();
                    assert!((s.contact - lim.position(t).unwrap()).norm() < 1e-5);
                }
            }
        }
    }

    #[test]
    fn cusps_are_at_rest() {
        let e = ParamCurve::ellipse(3.0, 2.0, (0.0, TAU)).unwrap();
        let cfg = RollConfig::new(0.25).side(Side::Antinormal);
        let h = 1e-4;
        for t in contact_parameters(&e, &cfg, 0.01, TAU - 0.01).unwrap() {
            let p = |u: f64| roll_state(&e, &cfg, u).unwrap().contact;
            let speed = (p(t + h) - p(t - h)).norm() / (2.0 * h);
            assert!(speed < 1e-2 * e.velocity(t).unwrap().norm(), "t = {t}: {speed}");
        }
    }

    #[test]
    fn reparameterized_circle_traces_same_set() {
        let slow = ParamCurve::circle(2.0, (0.0, TAU)).unwrap();
        let fast = ParamCurve::parse("R*cos(2*t)", "R*sin(2*t)", Params::from([("R".into(), 2.0)]), (0.0, PI)).unwrap();
        let cfg = RollConfig::new(0.5).side(Side::Antinormal);
        let a = trace(&slow, &cfg, 0.0, TAU, 401).unwrap();
        let b = trace(&fast, &cfg, 0.0, PI, 401).unwrap();
        for (p, q) in a.iter().zip(&b) {
            assert!(close(*p, *q, 1e-7));
        }
    }

    #[test]
    fn bad_configs() {
        let line = ParamCurve::line((0.0, 1.0)).unwrap();
        assert!(roll_state(&line, &RollConfig::new(0.0), 0.5).is_err());
        assert!(roll_state(&line, &RollConfig::new(1.0).t0(3.0), 0.5).is_err());
        assert!(trace(&line, &RollConfig::new(1.0), 0.0, 1.0, 1).is_err());
    }
}
